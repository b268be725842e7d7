// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/audit/uups.hpp>

#include <set>

namespace upscan {
namespace {

bool scan_shaky(const AssignmentScan& s) {
    return s.truncated || s.malformed_jump;
}

}  // namespace

UupsFindings audit_uups(const Address& proxy, const Address& implementation,
                        const StorageLookup& storage_read, const CodeLookup& code_lookup,
                        const AuditOptions& opts) {
    UupsFindings out;
    out.implementation = implementation;
    out.initializer_slot = opts.initializer_slot;

    auto impl_code = code_lookup(implementation);
    if (!impl_code)
        throw MissingCode(implementation);
    auto proxy_code = code_lookup(proxy);
    if (!proxy_code)
        throw MissingCode(proxy);

    // Step 1: the initialized flag lives in the implementation's own
    // storage; the one behind the proxy is a different account's.
    bool have_init = false;
    if (storage_read) {
        if (auto w = storage_read(implementation, opts.initializer_slot)) {
            out.initialized = !w->is_zero();
            have_init = true;
        }
    }

    // Steps 2/3: the owner slot is whatever gates the upgrade writer, so
    // find the writers of the proxy's delegate slot first.
    const DelegateAnalysis pd = resolve_delegate_target(*proxy_code, opts.interp);
    out.analysis_truncated |= pd.truncated || pd.malformed_jump;
    std::optional<Word> delegate_slot;
    if (const auto* site = pd.primary(); site && site->kind == TargetResolution::Kind::from_slot)
        delegate_slot = site->slot.resolved();

    std::set<Word> owner_slots;
    if (delegate_slot) {
        const AssignmentScan up = find_slot_assignments(*impl_code, *delegate_slot, opts.interp);
        out.analysis_truncated |= scan_shaky(up);
        for (const auto& f : up.findings) {
            if (!f.value_taint || !f.guard)
                continue;
            if (f.guard->kind == GuardCandidate::Kind::storage_slot)
                if (auto s = f.guard->slot.resolved())
                    owner_slots.insert(*s);
        }
    } else {
        out.analysis_truncated = true;  // cannot name the delegate slot
    }
    out.owner_slots.assign(owner_slots.begin(), owner_slots.end());

    // An entry point that stores calldata into an owner slot. Unguarded
    // ones are what the attack calls; a guarded one closes it.
    const AssignmentFinding* guarded_entry = nullptr;
    const AssignmentFinding* open_entry = nullptr;
    std::vector<AssignmentScan> owner_scans;
    // reserve keeps entry pointers into earlier scans valid across push_back
    owner_scans.reserve(owner_slots.size());
    for (const Word& slot : owner_slots) {
        owner_scans.push_back(find_slot_assignments(*impl_code, slot, opts.interp));
        const AssignmentScan& scan = owner_scans.back();
        out.analysis_truncated |= scan_shaky(scan);
        for (const auto& f : scan.findings) {
            if (!f.value_taint || !f.writer_selector)
                continue;
            if (f.guard) {
                if (!guarded_entry)
                    guarded_entry = &f;
            } else if (!open_entry) {
                open_entry = &f;
            }
        }
    }
    const AssignmentFinding* entry = open_entry ? open_entry : guarded_entry;
    if (entry) {
        out.owner_entry = *entry;
        out.init_selector = entry->writer_selector;
        out.direct_call_guard = entry->address_guard;
    }

    // Step 4 and steps 5/6 run over one dispatch exploration.
    const InterpResult res = interpret(*impl_code, EntryMode::dispatch, opts.interp);
    out.analysis_truncated |= res.truncated || res.malformed_jump;
    for (const auto& ev : res.events) {
        if (ev.kind == InterpEvent::Kind::selfdestruct) {
            out.selfdestruct_present = true;
            if (!out.selfdestruct_offset)
                out.selfdestruct_offset = ev.offset;
        } else if (ev.kind == InterpEvent::Kind::delegatecall && !out.mutable_delegatecall) {
            TargetResolution r = resolution_of_value(ev.target, res.call_sites);
            r.offset = ev.offset;
            if (r.kind != TargetResolution::Kind::from_slot)
                continue;
            auto slot = r.slot.resolved();
            if (!slot)
                continue;
            const AssignmentScan scan = find_slot_assignments(*impl_code, *slot, opts.interp);
            out.analysis_truncated |= scan_shaky(scan);
            for (const auto& f : scan.findings) {
                if (f.value_taint) {
                    out.mutable_delegatecall = MutableDelegatecall{ev.selector_ctx, r};
                    break;
                }
            }
        }
    }

    // Verdict. Positive evidence decides; absence decides only when the
    // analysis ran to completion.
    const bool channel = out.selfdestruct_present || out.mutable_delegatecall.has_value();
    if (!have_init) {
        out.verdict = UupsVerdict::inconclusive;
    } else if (out.initialized) {
        out.verdict = UupsVerdict::not_vulnerable;
    } else if (open_entry == nullptr) {
        out.verdict = out.analysis_truncated && entry == nullptr ? UupsVerdict::inconclusive
                                                                 : UupsVerdict::not_vulnerable;
    } else if (out.direct_call_guard) {
        out.verdict = UupsVerdict::not_vulnerable;
    } else if (channel) {
        out.verdict = UupsVerdict::exploitable;
    } else {
        out.verdict =
            out.analysis_truncated ? UupsVerdict::inconclusive : UupsVerdict::takeover_only;
    }
    return out;
}

const char* to_string(UupsVerdict v) {
    switch (v) {
        case UupsVerdict::exploitable: return "exploitable";
        case UupsVerdict::takeover_only: return "takeover-only";
        case UupsVerdict::not_vulnerable: return "not-vulnerable";
        case UupsVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

}  // namespace upscan
