// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/classify/verdict.hpp>
#include <upscan/evm/keccak.hpp>
#include <upscan/evm/selectors.hpp>

#include <algorithm>

namespace upscan {
namespace {

std::vector<AssignmentFinding> tainted_findings(const AssignmentScan& scan) {
    std::vector<AssignmentFinding> out;
    for (const auto& f : scan.findings)
        if (f.value_taint)
            out.push_back(f);
    return out;
}

Verdict forwarder(ForwarderReason reason, TargetResolution res, const ProxyEvidence& ev) {
    Verdict v;
    v.cls = ProxyClass::forwarder;
    v.reason = reason;
    v.resolution = std::move(res);
    v.logic = ev.target;
    return v;
}

}  // namespace

Verdict classify(const ProxyEvidence& evidence, BytesView proxy_code, const CodeLookup& code_lookup,
                 const StorageLookup& storage_lookup, const ClassifyOptions& opts) {
    const DelegateAnalysis delegation = resolve_delegate_target(proxy_code, opts.interp);
    const bool shaky = delegation.truncated || delegation.malformed_jump;

    Verdict v;
    v.logic = evidence.target;

    // Fixed targets first: a proxy whose target lives in its code can never
    // redirect, whatever else the code does.
    if (const LiteralHit hit = find_address_literal(proxy_code, evidence.target)) {
        ForwarderReason reason = ForwarderReason::code_embedded_constant;
        if (hit.site == LiteralSite::push20)
            reason = ForwarderReason::hardcoded;
        else if (hit.site == LiteralSite::push32)
            reason = ForwarderReason::immutable_in_code;
        TargetResolution res;
        if (const auto* primary = delegation.primary())
            res = *primary;
        v = forwarder(reason, std::move(res), evidence);
    } else if (const auto* primary = delegation.primary(); primary == nullptr) {
        v = forwarder(ForwarderReason::unresolved, TargetResolution{}, evidence);
        v.flags.truncated_analysis = true;
    } else {
        switch (primary->kind) {
            case TargetResolution::Kind::hardcoded:
                // Literal search missed it (address assembled at runtime);
                // still a fixed target.
                v = forwarder(ForwarderReason::hardcoded, *primary, evidence);
                break;

            case TargetResolution::Kind::from_slot: {
                const auto slot_word = primary->slot.resolved();
                if (!slot_word) {
                    v = forwarder(ForwarderReason::unresolved, *primary, evidence);
                    v.flags.truncated_analysis = true;
                    break;
                }
                AssignmentScan on_proxy =
                    find_slot_assignments(proxy_code, *slot_word, opts.interp);
                auto tainted = tainted_findings(on_proxy);
                if (!tainted.empty()) {
                    v.cls = ProxyClass::regular;
                    v.resolution = *primary;
                    v.assignments = std::move(tainted);
                    v.flags.truncated_analysis = on_proxy.truncated;
                    break;
                }
                // No writer on the proxy itself: the writer may live in the
                // logic contract and run here through delegatecall.
                auto logic_code = code_lookup(evidence.target);
                if (!logic_code)
                    throw MissingCode(evidence.target);
                AssignmentScan on_logic =
                    find_slot_assignments(*logic_code, *slot_word, opts.interp);
                auto logic_tainted = tainted_findings(on_logic);
                if (!logic_tainted.empty()) {
                    v.cls = ProxyClass::uups;
                    v.resolution = *primary;
                    v.assignments = std::move(logic_tainted);
                    v.flags.truncated_analysis = on_logic.truncated;
                } else {
                    v = forwarder(ForwarderReason::slot_never_assigned, *primary, evidence);
                    v.flags.truncated_analysis = on_proxy.truncated || on_logic.truncated;
                }
                break;
            }

            case TargetResolution::Kind::from_external_call: {
                std::optional<Address> beacon;
                if (primary->callee.kind == ExternalSource::Kind::hardcoded) {
                    beacon = primary->callee.address;
                } else if (primary->callee.kind == ExternalSource::Kind::from_slot &&
                           storage_lookup) {
                    if (auto resolved = primary->callee.slot.resolved()) {
                        if (auto w = storage_lookup(evidence.proxy, *resolved))
                            if (!w->is_zero())
                                beacon = address_from_word(*w);
                    }
                }
                if (!beacon || !primary->getter) {
                    v = forwarder(ForwarderReason::unresolved, *primary, evidence);
                    v.flags.truncated_analysis = true;
                    break;
                }
                auto beacon_code = code_lookup(*beacon);
                if (!beacon_code)
                    throw MissingCode(*beacon);
                const auto getter_slot =
                    resolve_getter_slot(*beacon_code, *primary->getter, opts.interp);
                if (!getter_slot || !getter_slot->resolved()) {
                    // The beacon answers with something other than a stored
                    // word; its answer cannot be reassigned.
                    v = forwarder(ForwarderReason::beacon_immutable, *primary, evidence);
                    v.beacon = beacon;
                    break;
                }
                AssignmentScan on_beacon =
                    find_slot_assignments(*beacon_code, getter_slot->resolved(), opts.interp);
                auto beacon_tainted = tainted_findings(on_beacon);
                if (!beacon_tainted.empty()) {
                    v.cls = ProxyClass::beacon;
                    v.resolution = *primary;
                    v.assignments = std::move(beacon_tainted);
                    v.beacon = beacon;
                    v.flags.truncated_analysis = on_beacon.truncated;
                } else {
                    v = forwarder(ForwarderReason::beacon_immutable, *primary, evidence);
                    v.beacon = beacon;
                }
                break;
            }

            case TargetResolution::Kind::unresolved:
            default:
                v = forwarder(ForwarderReason::unresolved, *primary, evidence);
                v.flags.truncated_analysis = true;
                break;
        }
    }

    v.flags.truncated_analysis |= shaky;
    v.flags.transparent = detect_transparent(proxy_code, opts.interp);
    v.metamorphic = metamorphic_risk(proxy_code, opts.created_via_create2);
    v.flags.metamorphic_risk = v.metamorphic == MetamorphicRisk::at_risk;
    return v;
}

bool detect_transparent(BytesView proxy_code, const InterpOptions& opts) {
    const InterpResult res = interpret(proxy_code, EntryMode::dispatch, opts);

    // The split shape: one caller identity gates a write path while its
    // complement reaches the forwarding delegatecall.
    std::vector<GuardCandidate> write_gates;
    std::vector<GuardCandidate> delegate_complements;
    for (const auto& ev : res.events) {
        if (ev.kind == InterpEvent::Kind::sstore) {
            for (const auto& f : ev.facts)
                if (f.subject == GuardFact::Subject::caller && f.asserted)
                    write_gates.push_back(f.cand);
        } else if (ev.kind == InterpEvent::Kind::delegatecall) {
            for (const auto& f : ev.facts)
                if (f.subject == GuardFact::Subject::caller && !f.asserted)
                    delegate_complements.push_back(f.cand);
        }
    }
    for (const auto& g : write_gates)
        for (const auto& d : delegate_complements)
            if (g == d)
                return true;
    return false;
}

MetamorphicRisk metamorphic_risk(BytesView code, std::optional<bool> created_via_create2) {
    if (created_via_create2 && !*created_via_create2)
        return MetamorphicRisk::ruled_out;

    bool destruct_channel = false;
    for (const auto& ins : disassemble(code).instructions) {
        if (ins.op() == Opcode::SELFDESTRUCT || ins.op() == Opcode::DELEGATECALL ||
            ins.op() == Opcode::CALLCODE) {
            destruct_channel = true;
            break;
        }
    }
    if (!destruct_channel)
        return MetamorphicRisk::ruled_out;
    if (created_via_create2 && *created_via_create2)
        return MetamorphicRisk::at_risk;
    return MetamorphicRisk::unknown;
}

Word cluster_digest(BytesView runtime_code) {
    Bytes masked(runtime_code.begin(), runtime_code.end());
    for (const auto& ins : disassemble(runtime_code).instructions) {
        if (ins.op() != Opcode::PUSH20 || ins.truncated())
            continue;
        std::fill(masked.begin() + ins.offset + 1, masked.begin() + ins.offset + 1 + 20, 0);
    }
    return keccak256(masked);
}

const char* to_string(ProxyClass c) {
    switch (c) {
        case ProxyClass::forwarder: return "forwarder";
        case ProxyClass::regular: return "regular";
        case ProxyClass::uups: return "uups";
        case ProxyClass::beacon: return "beacon";
    }
    return "forwarder";
}

const char* to_string(ForwarderReason r) {
    switch (r) {
        case ForwarderReason::none: return "none";
        case ForwarderReason::hardcoded: return "hardcoded";
        case ForwarderReason::immutable_in_code: return "immutable-in-code";
        case ForwarderReason::code_embedded_constant: return "code-embedded-constant";
        case ForwarderReason::slot_never_assigned: return "slot-never-assigned";
        case ForwarderReason::beacon_immutable: return "beacon-immutable";
        case ForwarderReason::unresolved: return "unresolved";
    }
    return "none";
}

const char* to_string(MetamorphicRisk m) {
    switch (m) {
        case MetamorphicRisk::ruled_out: return "ruled-out";
        case MetamorphicRisk::at_risk: return "at-risk";
        case MetamorphicRisk::unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace upscan
