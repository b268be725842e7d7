// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/analysis/assignments.hpp>

#include <algorithm>
#include <map>

namespace upscan {
namespace {

struct GroupKey {
    int slot_kind;
    Word slot_word;
    Bytes preimage;
    std::optional<Selector> selector;
    bool taint;

    auto tie() const { return std::tie(slot_kind, slot_word, preimage, selector, taint); }
    bool operator<(const GroupKey& o) const { return tie() < o.tie(); }
};

struct Group {
    SlotExpr slot;
    std::optional<Selector> selector;
    bool taint = false;
    std::vector<const InterpEvent*> events;
};

}  // namespace

AssignmentScan find_slot_assignments(BytesView code, std::optional<Word> slot,
                                     const InterpOptions& opts) {
    AssignmentScan out;
    const InterpResult res = interpret(code, EntryMode::dispatch, opts);
    out.truncated = res.truncated;
    out.malformed_jump = res.malformed_jump;

    std::map<GroupKey, Group> groups;
    for (const auto& ev : res.events) {
        if (ev.kind != InterpEvent::Kind::sstore)
            continue;
        if (slot) {
            const auto resolved = ev.slot.resolved();
            if (!resolved || !(*resolved == *slot))
                continue;
        }
        GroupKey key{static_cast<int>(ev.slot.kind), ev.slot.word, ev.slot.preimage,
                     ev.selector_ctx, ev.value.taint};
        Group& g = groups[key];
        g.slot = ev.slot;
        g.selector = ev.selector_ctx;
        g.taint = ev.value.taint;
        g.events.push_back(&ev);
    }

    for (auto& [key, g] : groups) {
        AssignmentFinding f;
        f.slot = g.slot;
        f.writer_selector = g.selector;
        f.value_taint = g.taint;

        // A guard counts only when every write path asserts it.
        std::vector<GuardCandidate> caller_cands;
        bool first = true;
        bool address_on_all = true;
        for (const InterpEvent* ev : g.events) {
            f.offsets.push_back(ev->offset);
            std::vector<GuardCandidate> here;
            bool address_here = false;
            for (const auto& fact : ev->facts) {
                if (fact.subject == GuardFact::Subject::caller && fact.asserted)
                    here.push_back(fact.cand);
                if (fact.subject == GuardFact::Subject::self_address)
                    address_here = true;
            }
            address_on_all &= address_here;
            if (first) {
                caller_cands = std::move(here);
                first = false;
            } else {
                std::vector<GuardCandidate> kept;
                for (const auto& c : caller_cands)
                    if (std::find(here.begin(), here.end(), c) != here.end())
                        kept.push_back(c);
                caller_cands = std::move(kept);
            }
        }
        if (!caller_cands.empty())
            f.guard = caller_cands.front();
        f.address_guard = address_on_all && !g.events.empty();

        std::sort(f.offsets.begin(), f.offsets.end());
        f.offsets.erase(std::unique(f.offsets.begin(), f.offsets.end()), f.offsets.end());
        out.findings.push_back(std::move(f));
    }
    return out;
}

std::optional<GuardCandidate> extract_caller_guard(BytesView code, const AssignmentFinding& writer,
                                                   const InterpOptions& opts) {
    const auto scan = find_slot_assignments(code, writer.slot.resolved(), opts);
    for (const auto& f : scan.findings) {
        if (f.writer_selector == writer.writer_selector && f.value_taint == writer.value_taint)
            return f.guard;
    }
    return std::nullopt;
}

}  // namespace upscan
