// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/analysis/interp.hpp>

#include <string>

namespace upscan {

// How the callee of the feeding external call was itself identified
// (one level deep: a beacon read through another beacon stays unresolved).
struct ExternalSource {
    enum class Kind : uint8_t { hardcoded, from_slot, unresolved };

    Kind kind = Kind::unresolved;
    Address address;
    uint8_t push_width = 0;
    SlotExpr slot;
};

struct TargetResolution {
    enum class Kind : uint8_t { hardcoded, from_slot, from_external_call, unresolved };

    Kind kind = Kind::unresolved;
    uint32_t offset = 0;  // delegatecall instruction offset
    Address address;      // hardcoded
    uint8_t push_width = 0;
    SlotExpr slot;        // from_slot
    ExternalSource callee;
    std::optional<Selector> getter;  // selector the callee was asked
    std::string reason;              // unresolved detail
};

// All DELEGATECALL sites reachable on the fallback path, in exploration
// order. The first site is the forwarding delegate of a proxy.
struct DelegateAnalysis {
    std::vector<TargetResolution> sites;
    bool truncated = false;
    bool malformed_jump = false;

    const TargetResolution* primary() const { return sites.empty() ? nullptr : &sites.front(); }
};

DelegateAnalysis resolve_delegate_target(BytesView code, const InterpOptions& opts = {});

// Storage slot a read-only getter returns, when its body is RETURN(SLOAD(s)).
std::optional<SlotExpr> resolve_getter_slot(BytesView code, const Selector& getter,
                                            const InterpOptions& opts = {});

TargetResolution resolution_of_value(const AbstractValue& v,
                                     const std::vector<CallSite>& sites);

}  // namespace upscan
