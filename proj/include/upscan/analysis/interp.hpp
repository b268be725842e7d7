// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/analysis/values.hpp>
#include <upscan/evm/disasm.hpp>

#include <optional>
#include <vector>

namespace upscan {

// Guard fact accumulated along a path: "subject compared equal to cand is
// asserted true/false here".
struct GuardFact {
    enum class Subject : uint8_t { caller, self_address };

    Subject subject = Subject::caller;
    GuardCandidate cand;
    bool asserted = true;

    bool operator==(const GuardFact& o) const {
        return subject == o.subject && asserted == o.asserted && cand == o.cand;
    }
};

struct CallSite {
    uint32_t id = 0;
    Opcode op = Opcode::CALL;
    AbstractValue target;
    std::optional<Selector> arg_selector;  // first 4 bytes of call args if constant
};

struct InterpEvent {
    enum class Kind : uint8_t {
        sload,
        sstore,
        delegatecall,
        call,
        staticcall,
        callcode,
        selfdestruct,
        ret,
    };

    Kind kind = Kind::sload;
    uint32_t offset = 0;
    std::optional<Selector> selector_ctx;  // absent on the fallback path
    SlotExpr slot;                         // sload / sstore
    AbstractValue value;                   // sstore stored value; ret returned value
    AbstractValue target;                  // call family target operand
    uint32_t call_site = 0;
    std::optional<Selector> arg_selector;
    std::vector<GuardFact> facts;          // guards asserted on this path
};

struct InterpResult {
    std::vector<InterpEvent> events;
    std::vector<CallSite> call_sites;
    bool truncated = false;       // step/state budget ran out
    bool malformed_jump = false;  // some jump target was not statically resolvable
    uint64_t steps = 0;
};

enum class EntryMode : uint8_t {
    dispatch,  // explore every selector branch
    fallback,  // model an unmatched selector: selector comparisons fail
};

struct InterpOptions {
    uint64_t step_budget = 1 << 16;
    int jumpdest_revisit_limit = 4;
    size_t max_states = 4096;
};

// Path-insensitive abstract execution from offset zero. Total: decodes and
// walks any byte string without throwing.
InterpResult interpret(BytesView code, EntryMode entry, const InterpOptions& opts = {});

}  // namespace upscan
