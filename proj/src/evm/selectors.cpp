// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/evm/selectors.hpp>

namespace upscan {
namespace {

bool is_shuffle(const Instruction& ins) {
    return is_dup(ins.byte) || is_swap(ins.byte);
}

// Matches the tail of a dispatch comparison starting right after PUSH4:
// optional shuffles, a comparison, then a JUMPI fed by an optional push.
bool comparison_follows(const std::vector<Instruction>& ins, size_t i) {
    size_t j = i + 1;
    for (int shuffles = 0; j < ins.size() && is_shuffle(ins[j]) && shuffles < 2; ++j, ++shuffles) {
    }
    if (j >= ins.size())
        return false;

    const Opcode cmp = ins[j].op();
    if (cmp == Opcode::EQ) {
        ++j;
    } else if (cmp == Opcode::SUB || cmp == Opcode::XOR) {
        ++j;
        if (j < ins.size() && is_shuffle(ins[j]))
            ++j;
        if (j >= ins.size() || ins[j].op() != Opcode::ISZERO)
            return false;
        ++j;
    } else {
        return false;
    }

    // jump target push (tag) is optional: the target may already be on stack
    if (j < ins.size() && is_push(ins[j].byte) && push_size(ins[j].byte) <= 3)
        ++j;
    return j < ins.size() && ins[j].op() == Opcode::JUMPI;
}

}  // namespace

std::set<Selector> extract_selectors(const Disassembly& d) {
    std::set<Selector> out;
    const auto& ins = d.instructions;
    for (size_t i = 0; i < ins.size(); ++i) {
        if (ins[i].op() != Opcode::PUSH4 || ins[i].truncated())
            continue;
        if (!comparison_follows(ins, i))
            continue;
        Selector s;
        std::copy(ins[i].immediate.begin(), ins[i].immediate.end(), s.bytes.begin());
        out.insert(s);
    }
    return out;
}

std::set<Selector> extract_selectors(BytesView code) {
    return extract_selectors(disassemble(code));
}

size_t metadata_boundary(BytesView code) {
    // CBOR map keys emitted by solc: a2 64 'i' 'p' 'f' 's' or a1 65 'b' 'z' 'z' 'r'.
    static constexpr uint8_t ipfs[] = {0xa2, 0x64, 'i', 'p', 'f', 's'};
    static constexpr uint8_t bzzr[] = {0xa1, 0x65, 'b', 'z', 'z', 'r'};
    size_t boundary = code.size();
    if (code.size() < 6)
        return boundary;
    for (size_t i = code.size() - 6 + 1; i-- > 0;) {
        if (std::equal(ipfs, ipfs + 6, code.begin() + i) ||
            std::equal(bzzr, bzzr + 6, code.begin() + i)) {
            return i;  // last occurrence wins: scan runs from the end
        }
    }
    return boundary;
}

LiteralHit find_address_literal(BytesView code, const Address& target) {
    const auto d = disassemble(code);
    for (const auto& ins : d.instructions) {
        if (ins.truncated())
            continue;
        if (ins.op() == Opcode::PUSH20) {
            if (std::equal(target.bytes.begin(), target.bytes.end(), ins.immediate.begin()))
                return {LiteralSite::push20, ins.offset};
        } else if (ins.op() == Opcode::PUSH32) {
            for (size_t w = 0; w + 20 <= 32; ++w) {
                if (std::equal(target.bytes.begin(), target.bytes.end(),
                               ins.immediate.begin() + w))
                    return {LiteralSite::push32, ins.offset};
            }
        }
    }
    const size_t limit = metadata_boundary(code);
    if (limit >= 20) {
        for (size_t i = 0; i + 20 <= limit; ++i) {
            if (std::equal(target.bytes.begin(), target.bytes.end(), code.begin() + i))
                return {LiteralSite::raw_window, static_cast<uint32_t>(i)};
        }
    }
    return {};
}

}  // namespace upscan
