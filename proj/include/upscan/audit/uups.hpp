// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/classify/verdict.hpp>

namespace upscan {

enum class UupsVerdict : uint8_t { exploitable, takeover_only, not_vulnerable, inconclusive };

struct MutableDelegatecall {
    std::optional<Selector> selector;  // entry the delegatecall is reachable through
    TargetResolution resolution;       // from_slot site with a tainted writer
};

// Everything the verdict rests on, with offsets and slot words so a reader
// can re-derive it from the bytecode.
struct UupsFindings {
    Address implementation;
    Word initializer_slot;  // the slot the initialized flag was read from
    bool initialized = false;
    std::vector<Word> owner_slots;  // guard slots of the upgrade writers
    std::optional<Selector> init_selector;
    std::optional<AssignmentFinding> owner_entry;  // owner-setting entry point
    bool direct_call_guard = false;    // executing-account gate on that entry
    bool selfdestruct_present = false;
    std::optional<uint32_t> selfdestruct_offset;
    std::optional<MutableDelegatecall> mutable_delegatecall;
    bool analysis_truncated = false;
    UupsVerdict verdict = UupsVerdict::inconclusive;
};

struct AuditOptions {
    // Initialized flag location in the implementation's own storage. Slot
    // zero is the dominant layout; scans of codebases with a different
    // layout override it.
    Word initializer_slot{};
    InterpOptions interp;
};

// Grades the implementation behind a uups-classified proxy for the
// uninitialized-takeover attack: can anyone become owner by calling the
// initializer directly on the implementation, and once owner, is there a
// destruct channel (selfdestruct, or delegatecall through a rewritable
// slot). Throws MissingCode; analysis gaps yield an inconclusive verdict,
// never a safety claim.
UupsFindings audit_uups(const Address& proxy, const Address& implementation,
                        const StorageLookup& storage_read, const CodeLookup& code_lookup,
                        const AuditOptions& opts = {});

const char* to_string(UupsVerdict v);

}  // namespace upscan
