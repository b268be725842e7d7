// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/analysis/targets.hpp>

#include <map>

namespace upscan {

TargetResolution resolution_of_value(const AbstractValue& v, const std::vector<CallSite>& sites) {
    TargetResolution r;
    switch (v.tag) {
        case AbstractValue::Tag::constant:
            r.kind = TargetResolution::Kind::hardcoded;
            r.address = address_from_word(v.word);
            r.push_width = v.push_width;
            return r;
        case AbstractValue::Tag::storage_load:
            r.kind = TargetResolution::Kind::from_slot;
            r.slot = v.slot;
            return r;
        case AbstractValue::Tag::external_return: {
            r.kind = TargetResolution::Kind::from_external_call;
            if (v.call_site < sites.size()) {
                const CallSite& cs = sites[v.call_site];
                r.getter = cs.arg_selector;
                switch (cs.target.tag) {
                    case AbstractValue::Tag::constant:
                        r.callee.kind = ExternalSource::Kind::hardcoded;
                        r.callee.address = address_from_word(cs.target.word);
                        r.callee.push_width = cs.target.push_width;
                        break;
                    case AbstractValue::Tag::storage_load:
                        r.callee.kind = ExternalSource::Kind::from_slot;
                        r.callee.slot = cs.target.slot;
                        break;
                    default:
                        r.callee.kind = ExternalSource::Kind::unresolved;
                        break;
                }
            }
            return r;
        }
        case AbstractValue::Tag::calldata:
            r.kind = TargetResolution::Kind::unresolved;
            r.reason = "target supplied by calldata";
            return r;
        default:
            r.kind = TargetResolution::Kind::unresolved;
            r.reason = "target not statically recoverable";
            return r;
    }
}

DelegateAnalysis resolve_delegate_target(BytesView code, const InterpOptions& opts) {
    DelegateAnalysis out;
    const InterpResult res = interpret(code, EntryMode::fallback, opts);
    out.truncated = res.truncated;
    out.malformed_jump = res.malformed_jump;

    std::map<uint32_t, size_t> by_offset;  // delegatecall offset -> index into sites
    for (const auto& ev : res.events) {
        if (ev.kind != InterpEvent::Kind::delegatecall)
            continue;
        TargetResolution r = resolution_of_value(ev.target, res.call_sites);
        r.offset = ev.offset;
        auto it = by_offset.find(ev.offset);
        if (it == by_offset.end()) {
            by_offset[ev.offset] = out.sites.size();
            out.sites.push_back(std::move(r));
            continue;
        }
        // Same instruction, different resolution on another path: keep the
        // site but report it unresolved rather than guessing.
        TargetResolution& prev = out.sites[it->second];
        const bool same = prev.kind == r.kind && prev.address == r.address &&
                          prev.slot == r.slot &&
                          prev.callee.kind == r.callee.kind &&
                          prev.callee.address == r.callee.address && prev.callee.slot == r.callee.slot;
        if (!same) {
            prev = TargetResolution{};
            prev.kind = TargetResolution::Kind::unresolved;
            prev.offset = ev.offset;
            prev.reason = "conflicting resolutions across paths";
        }
    }
    return out;
}

std::optional<SlotExpr> resolve_getter_slot(BytesView code, const Selector& getter,
                                            const InterpOptions& opts) {
    const InterpResult res = interpret(code, EntryMode::dispatch, opts);
    for (const auto& ev : res.events) {
        if (ev.kind != InterpEvent::Kind::ret)
            continue;
        if (!ev.selector_ctx || !(*ev.selector_ctx == getter))
            continue;
        if (ev.value.tag == AbstractValue::Tag::storage_load)
            return ev.value.slot;
    }
    return std::nullopt;
}

}  // namespace upscan
