// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/evm/bytes.hpp>
#include <upscan/evm/opcodes.hpp>

#include <set>

namespace upscan {

struct Instruction {
    uint32_t offset = 0;
    uint8_t byte = 0;      // raw opcode byte as it appeared
    Bytes immediate;       // PUSH payload, zero-padded to the declared width
    uint8_t present = 0;   // payload bytes actually present in the code

    Opcode op() const { return static_cast<Opcode>(byte); }
    bool truncated() const { return present < immediate.size(); }
};

// Total decode: every byte string disassembles. A PUSH running past the end
// keeps its declared width with zero padding and is flagged truncated.
struct Disassembly {
    std::vector<Instruction> instructions;
    bool truncated_tail = false;

    // Offsets that are JUMPDEST at an instruction boundary (PUSH payloads
    // never qualify by construction of the decode loop).
    std::set<uint32_t> jumpdests;

    const Instruction* at_offset(uint32_t offset) const;
};

Disassembly disassemble(BytesView code);

// Exact inverse of disassemble: reproduces the input byte string, including
// a short trailing PUSH payload.
Bytes reserialize(const Disassembly& d);

}  // namespace upscan
