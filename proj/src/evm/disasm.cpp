// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/evm/disasm.hpp>

#include <algorithm>

namespace upscan {
namespace {

struct TableEntry {
    uint8_t byte;
    OpcodeInfo info;
};

// London fork table. in/out counts follow the yellow paper.
constexpr TableEntry table_entries[] = {
    {0x00, {"STOP", 0, 0, 0, true}},
    {0x01, {"ADD", 2, 1, 0, true}},
    {0x02, {"MUL", 2, 1, 0, true}},
    {0x03, {"SUB", 2, 1, 0, true}},
    {0x04, {"DIV", 2, 1, 0, true}},
    {0x05, {"SDIV", 2, 1, 0, true}},
    {0x06, {"MOD", 2, 1, 0, true}},
    {0x07, {"SMOD", 2, 1, 0, true}},
    {0x08, {"ADDMOD", 3, 1, 0, true}},
    {0x09, {"MULMOD", 3, 1, 0, true}},
    {0x0a, {"EXP", 2, 1, 0, true}},
    {0x0b, {"SIGNEXTEND", 2, 1, 0, true}},
    {0x10, {"LT", 2, 1, 0, true}},
    {0x11, {"GT", 2, 1, 0, true}},
    {0x12, {"SLT", 2, 1, 0, true}},
    {0x13, {"SGT", 2, 1, 0, true}},
    {0x14, {"EQ", 2, 1, 0, true}},
    {0x15, {"ISZERO", 1, 1, 0, true}},
    {0x16, {"AND", 2, 1, 0, true}},
    {0x17, {"OR", 2, 1, 0, true}},
    {0x18, {"XOR", 2, 1, 0, true}},
    {0x19, {"NOT", 1, 1, 0, true}},
    {0x1a, {"BYTE", 2, 1, 0, true}},
    {0x1b, {"SHL", 2, 1, 0, true}},
    {0x1c, {"SHR", 2, 1, 0, true}},
    {0x1d, {"SAR", 2, 1, 0, true}},
    {0x20, {"SHA3", 2, 1, 0, true}},
    {0x30, {"ADDRESS", 0, 1, 0, true}},
    {0x31, {"BALANCE", 1, 1, 0, true}},
    {0x32, {"ORIGIN", 0, 1, 0, true}},
    {0x33, {"CALLER", 0, 1, 0, true}},
    {0x34, {"CALLVALUE", 0, 1, 0, true}},
    {0x35, {"CALLDATALOAD", 1, 1, 0, true}},
    {0x36, {"CALLDATASIZE", 0, 1, 0, true}},
    {0x37, {"CALLDATACOPY", 3, 0, 0, true}},
    {0x38, {"CODESIZE", 0, 1, 0, true}},
    {0x39, {"CODECOPY", 3, 0, 0, true}},
    {0x3a, {"GASPRICE", 0, 1, 0, true}},
    {0x3b, {"EXTCODESIZE", 1, 1, 0, true}},
    {0x3c, {"EXTCODECOPY", 4, 0, 0, true}},
    {0x3d, {"RETURNDATASIZE", 0, 1, 0, true}},
    {0x3e, {"RETURNDATACOPY", 3, 0, 0, true}},
    {0x3f, {"EXTCODEHASH", 1, 1, 0, true}},
    {0x40, {"BLOCKHASH", 1, 1, 0, true}},
    {0x41, {"COINBASE", 0, 1, 0, true}},
    {0x42, {"TIMESTAMP", 0, 1, 0, true}},
    {0x43, {"NUMBER", 0, 1, 0, true}},
    {0x44, {"DIFFICULTY", 0, 1, 0, true}},
    {0x45, {"GASLIMIT", 0, 1, 0, true}},
    {0x46, {"CHAINID", 0, 1, 0, true}},
    {0x47, {"SELFBALANCE", 0, 1, 0, true}},
    {0x48, {"BASEFEE", 0, 1, 0, true}},
    {0x50, {"POP", 1, 0, 0, true}},
    {0x51, {"MLOAD", 1, 1, 0, true}},
    {0x52, {"MSTORE", 2, 0, 0, true}},
    {0x53, {"MSTORE8", 2, 0, 0, true}},
    {0x54, {"SLOAD", 1, 1, 0, true}},
    {0x55, {"SSTORE", 2, 0, 0, true}},
    {0x56, {"JUMP", 1, 0, 0, true}},
    {0x57, {"JUMPI", 2, 0, 0, true}},
    {0x58, {"PC", 0, 1, 0, true}},
    {0x59, {"MSIZE", 0, 1, 0, true}},
    {0x5a, {"GAS", 0, 1, 0, true}},
    {0x5b, {"JUMPDEST", 0, 0, 0, true}},
    {0xf0, {"CREATE", 3, 1, 0, true}},
    {0xf1, {"CALL", 7, 1, 0, true}},
    {0xf2, {"CALLCODE", 7, 1, 0, true}},
    {0xf3, {"RETURN", 2, 0, 0, true}},
    {0xf4, {"DELEGATECALL", 6, 1, 0, true}},
    {0xf5, {"CREATE2", 4, 1, 0, true}},
    {0xfa, {"STATICCALL", 6, 1, 0, true}},
    {0xfd, {"REVERT", 2, 0, 0, true}},
    {0xfe, {"INVALID", 0, 0, 0, true}},
    {0xff, {"SELFDESTRUCT", 1, 0, 0, true}},
};

constexpr std::string_view push_names[] = {
    "PUSH1", "PUSH2", "PUSH3", "PUSH4", "PUSH5", "PUSH6", "PUSH7", "PUSH8",
    "PUSH9", "PUSH10", "PUSH11", "PUSH12", "PUSH13", "PUSH14", "PUSH15", "PUSH16",
    "PUSH17", "PUSH18", "PUSH19", "PUSH20", "PUSH21", "PUSH22", "PUSH23", "PUSH24",
    "PUSH25", "PUSH26", "PUSH27", "PUSH28", "PUSH29", "PUSH30", "PUSH31", "PUSH32"};
constexpr std::string_view dup_names[] = {
    "DUP1", "DUP2", "DUP3", "DUP4", "DUP5", "DUP6", "DUP7", "DUP8",
    "DUP9", "DUP10", "DUP11", "DUP12", "DUP13", "DUP14", "DUP15", "DUP16"};
constexpr std::string_view swap_names[] = {
    "SWAP1", "SWAP2", "SWAP3", "SWAP4", "SWAP5", "SWAP6", "SWAP7", "SWAP8",
    "SWAP9", "SWAP10", "SWAP11", "SWAP12", "SWAP13", "SWAP14", "SWAP15", "SWAP16"};
constexpr std::string_view log_names[] = {"LOG0", "LOG1", "LOG2", "LOG3", "LOG4"};

constexpr std::array<OpcodeInfo, 256> build_table() {
    std::array<OpcodeInfo, 256> t{};
    for (int i = 0; i < 256; ++i)
        t[i] = {"UNASSIGNED", 0, 0, 0, false};
    for (const auto& e : table_entries)
        t[e.byte] = e.info;

    for (int i = 0; i < 32; ++i)
        t[0x60 + i] = {push_names[i], 0, 1, static_cast<uint8_t>(i + 1), true};
    for (int i = 0; i < 16; ++i)
        t[0x80 + i] = {dup_names[i], static_cast<uint8_t>(i + 1), static_cast<uint8_t>(i + 2), 0, true};
    for (int i = 0; i < 16; ++i)
        t[0x90 + i] = {swap_names[i], static_cast<uint8_t>(i + 2), static_cast<uint8_t>(i + 2), 0, true};
    for (int i = 0; i < 5; ++i)
        t[0xa0 + i] = {log_names[i], static_cast<uint8_t>(i + 2), 0, 0, true};
    return t;
}

const std::array<OpcodeInfo, 256> opcode_table = build_table();

}  // namespace

const OpcodeInfo& opcode_info(uint8_t byte) {
    return opcode_table[byte];
}

const Instruction* Disassembly::at_offset(uint32_t offset) const {
    auto it = std::lower_bound(instructions.begin(), instructions.end(), offset,
                               [](const Instruction& i, uint32_t o) { return i.offset < o; });
    if (it == instructions.end() || it->offset != offset)
        return nullptr;
    return &*it;
}

Disassembly disassemble(BytesView code) {
    Disassembly d;
    d.instructions.reserve(code.size());
    size_t pc = 0;
    while (pc < code.size()) {
        Instruction ins;
        ins.offset = static_cast<uint32_t>(pc);
        ins.byte = code[pc];
        const size_t width = push_size(ins.byte);
        ++pc;
        if (width > 0) {
            const size_t avail = std::min(width, code.size() - pc);
            ins.immediate.assign(width, 0);
            std::copy(code.begin() + pc, code.begin() + pc + avail, ins.immediate.begin());
            ins.present = static_cast<uint8_t>(avail);
            pc += avail;
            if (avail < width)
                d.truncated_tail = true;
        }
        if (ins.op() == Opcode::JUMPDEST)
            d.jumpdests.insert(ins.offset);
        d.instructions.push_back(std::move(ins));
    }
    return d;
}

Bytes reserialize(const Disassembly& d) {
    Bytes out;
    for (const auto& ins : d.instructions) {
        out.push_back(ins.byte);
        out.insert(out.end(), ins.immediate.begin(), ins.immediate.begin() + ins.present);
    }
    return out;
}

}  // namespace upscan
