// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/accessors.hpp>
#include <upscan/analysis/assignments.hpp>
#include <upscan/analysis/targets.hpp>
#include <upscan/trace/trace.hpp>

namespace upscan {

enum class ProxyClass : uint8_t { forwarder, regular, uups, beacon };

enum class ForwarderReason : uint8_t {
    none,
    hardcoded,               // target pushed as a 20-byte literal
    immutable_in_code,       // target spliced into a 32-byte push
    code_embedded_constant,  // target sits in the code section outside a push
    slot_never_assigned,     // delegate slot has no writer anywhere
    beacon_immutable,        // beacon exists but its answer cannot change
    unresolved,              // analysis could not explain the delegation
};

enum class MetamorphicRisk : uint8_t { ruled_out, at_risk, unknown };

struct VerdictFlags {
    bool transparent = false;         // admin/user dispatch split detected
    bool metamorphic_risk = false;    // CREATE2 + a destruct channel
    bool truncated_analysis = false;  // some analysis ran out of budget or evidence
};

struct Verdict {
    ProxyClass cls = ProxyClass::forwarder;
    ForwarderReason reason = ForwarderReason::none;
    TargetResolution resolution;
    // Tainted assignment findings backing the class: on the proxy for
    // regular, on the logic for uups, on the beacon for beacon.
    std::vector<AssignmentFinding> assignments;
    std::optional<Address> logic;   // delegate target from the evidence
    std::optional<Address> beacon;  // resolved beacon account
    MetamorphicRisk metamorphic = MetamorphicRisk::unknown;
    VerdictFlags flags;
};

struct MissingCode : std::runtime_error {
    explicit MissingCode(const Address& account)
        : std::runtime_error("code unavailable for " + hex::encode(account)), account(account) {}
    Address account;
};

struct ClassifyOptions {
    InterpOptions interp;
    std::optional<bool> created_via_create2;  // deployment provenance when known
};

// Ordered decision procedure over the delegation shape. storage_lookup is
// only needed to resolve a beacon address read from a slot; pass nullptr
// when unavailable and such proxies come back unresolved.
Verdict classify(const ProxyEvidence& evidence, BytesView proxy_code, const CodeLookup& code_lookup,
                 const StorageLookup& storage_lookup = nullptr, const ClassifyOptions& opts = {});

// Caller-gated split between an upgrade path and a delegating fallback.
bool detect_transparent(BytesView proxy_code, const InterpOptions& opts = {});

// CREATE2 plus a way to remove the code opens code replacement at the same
// address; absence of both rules it out regardless of provenance.
MetamorphicRisk metamorphic_risk(BytesView code, std::optional<bool> created_via_create2);

// Digest of the runtime bytecode with every PUSH20 immediate masked, so
// instances differing only in embedded partner addresses cluster together.
Word cluster_digest(BytesView runtime_code);

const char* to_string(ProxyClass c);
const char* to_string(ForwarderReason r);
const char* to_string(MetamorphicRisk m);

}  // namespace upscan
