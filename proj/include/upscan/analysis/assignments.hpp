// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/analysis/interp.hpp>

namespace upscan {

// One way some function (or the fallback) writes a storage slot.
struct AssignmentFinding {
    SlotExpr slot;
    std::optional<Selector> writer_selector;  // absent: write on the fallback path
    bool value_taint = false;                 // stored value derives from calldata
    // Caller comparison present on every path that performs this write.
    std::optional<GuardCandidate> guard;
    // Executing-account comparison present on every such path (any polarity).
    bool address_guard = false;
    std::vector<uint32_t> offsets;  // SSTORE sites involved
};

struct AssignmentScan {
    std::vector<AssignmentFinding> findings;
    bool truncated = false;
    bool malformed_jump = false;
};

// All discovered writes, or only those aliasing `slot` when given. Slot
// aliases (concrete word vs keccak expression resolving to the same word)
// unify through SlotExpr::resolved().
AssignmentScan find_slot_assignments(BytesView code, std::optional<Word> slot,
                                     const InterpOptions& opts = {});

// The caller comparison guarding a previously discovered write, re-derived
// from the code. Empty when some path writes without the comparison.
std::optional<GuardCandidate> extract_caller_guard(BytesView code, const AssignmentFinding& writer,
                                                   const InterpOptions& opts = {});

}  // namespace upscan
