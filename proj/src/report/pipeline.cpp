// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/report/pipeline.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace upscan {
namespace {

// Index-addressed work over a bounded pool. Results land in preallocated
// slots, so the outcome is identical for any worker count.
template <typename Fn>
void parallel_for(int workers, size_t n, Fn&& fn) {
    if (n == 0)
        return;
    const size_t nthreads = std::min(static_cast<size_t>(std::max(workers, 1)), n);
    if (nthreads == 1) {
        for (size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                fn(i);
            }
        });
    }
    for (auto& th : pool)
        th.join();
}

Verdict fallback_verdict(const ProxyEvidence& ev) {
    Verdict v;
    v.cls = ProxyClass::forwarder;
    v.reason = ForwarderReason::unresolved;
    v.flags.truncated_analysis = true;
    v.logic = ev.target;
    return v;
}

void classify_and_enrich(Gateway& gw, uint64_t state_block, const ScanOptions& opts,
                         const FingerprintDb& db, ProxyRecord& rec, const Bytes& code) {
    const CodeLookup code_lk = gw.code_lookup(state_block);
    const StorageLookup storage_lk = gw.storage_lookup(state_block);

    rec.cluster = cluster_digest(code);

    ClassifyOptions copts;
    copts.interp = opts.interp;
    copts.created_via_create2 = gw.created_via_create2(rec.evidence.proxy);
    try {
        rec.verdict = classify(rec.evidence, code, code_lk, storage_lk, copts);
    } catch (const std::exception& e) {
        rec.verdict = fallback_verdict(rec.evidence);
        rec.errors.push_back(std::string("classify: ") + e.what());
    }

    if (rec.verdict.cls != ProxyClass::forwarder) {
        AdminResolveOptions aopts;
        aopts.depth = opts.admin_depth;
        aopts.interp = opts.interp;
        try {
            rec.admin =
                resolve_admin(rec.evidence.proxy, rec.verdict, code_lk, storage_lk, db, aopts);
        } catch (const std::exception& e) {
            rec.errors.push_back(std::string("admin: ") + e.what());
        }
    }
    if (rec.verdict.cls == ProxyClass::uups && rec.verdict.logic) {
        AuditOptions uopts;
        uopts.initializer_slot = opts.initializer_slot;
        uopts.interp = opts.interp;
        try {
            rec.uups = audit_uups(rec.evidence.proxy, *rec.verdict.logic, storage_lk, code_lk,
                                  uopts);
        } catch (const std::exception& e) {
            rec.errors.push_back(std::string("uups: ") + e.what());
        }
    }
}

// Single-address entry has no trace pair to hand us the target, so rebuild
// it from the code and current state.
std::optional<Address> derive_target(Gateway& gw, uint64_t block, const Address& proxy,
                                     const Bytes& code, const InterpOptions& interp) {
    const CodeLookup code_lk = gw.code_lookup(block);
    const StorageLookup storage_lk = gw.storage_lookup(block);
    const DelegateAnalysis d = resolve_delegate_target(code, interp);
    const TargetResolution* site = d.primary();
    if (!site)
        return std::nullopt;

    auto slot_address = [&](const Address& account,
                            const SlotExpr& slot) -> std::optional<Address> {
        auto s = slot.resolved();
        if (!s)
            return std::nullopt;
        auto w = storage_lk(account, *s);
        if (!w || w->is_zero())
            return std::nullopt;
        return address_from_word(*w);
    };

    switch (site->kind) {
        case TargetResolution::Kind::hardcoded:
            return site->address;
        case TargetResolution::Kind::from_slot:
            return slot_address(proxy, site->slot);
        case TargetResolution::Kind::from_external_call: {
            std::optional<Address> beacon;
            if (site->callee.kind == ExternalSource::Kind::hardcoded)
                beacon = site->callee.address;
            else if (site->callee.kind == ExternalSource::Kind::from_slot)
                beacon = slot_address(proxy, site->callee.slot);
            if (!beacon || !site->getter)
                return std::nullopt;
            auto bcode = code_lk(*beacon);
            if (!bcode)
                return std::nullopt;
            auto gslot = resolve_getter_slot(*bcode, *site->getter, interp);
            if (!gslot)
                return std::nullopt;
            return slot_address(*beacon, *gslot);
        }
        case TargetResolution::Kind::unresolved:
        default:
            return std::nullopt;
    }
}

}  // namespace

ScanResult run_scan(Gateway& gateway, const ScanOptions& opts) {
    ScanResult out;

    std::vector<uint64_t> blocks;
    for (uint64_t b = opts.from_block; b <= opts.to_block; ++b) {
        blocks.push_back(b);
        if (b == UINT64_MAX)
            break;
    }

    struct BlockOut {
        std::vector<ProxyEvidence> evidence;
        std::optional<std::string> error;
    };
    std::vector<BlockOut> per_block(blocks.size());
    parallel_for(opts.workers, blocks.size(), [&](size_t i) {
        try {
            const std::string doc = gateway.replay_block(blocks[i]);
            const auto actions = parse_trace(doc, blocks[i]);
            per_block[i].evidence = detect_proxy_calls(actions);
        } catch (const std::exception& e) {
            per_block[i].error = e.what();
        }
    });

    // Merge in block order so evidence dedup is worker-count independent.
    uint64_t evidence_total = 0;
    std::map<Address, size_t> by_proxy;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (per_block[i].error) {
            out.failed_blocks.push_back({blocks[i], *per_block[i].error});
            continue;
        }
        for (const auto& ev : per_block[i].evidence) {
            ++evidence_total;
            if (auto it = by_proxy.find(ev.proxy); it != by_proxy.end()) {
                ++out.records[it->second].evidence_count;
                continue;
            }
            by_proxy.emplace(ev.proxy, out.records.size());
            ProxyRecord rec;
            rec.evidence = ev;
            rec.evidence_count = 1;
            out.records.push_back(std::move(rec));
        }
    }
    std::sort(out.records.begin(), out.records.end(),
              [](const ProxyRecord& a, const ProxyRecord& b) {
                  return a.evidence.proxy < b.evidence.proxy;
              });

    const uint64_t state_block = gateway.fixture_block().value_or(opts.to_block);
    FingerprintDb db;
    if (!opts.fingerprints_path.empty())
        db = FingerprintDb::load(opts.fingerprints_path);

    std::vector<std::optional<std::string>> skips(out.records.size());
    parallel_for(opts.workers, out.records.size(), [&](size_t i) {
        ProxyRecord& rec = out.records[i];
        try {
            const auto code = gateway.code_lookup(state_block)(rec.evidence.proxy);
            if (!code) {
                skips[i] = "proxy code unavailable at block " + std::to_string(state_block);
                return;
            }
            classify_and_enrich(gateway, state_block, opts, db, rec, *code);
        } catch (const std::exception& e) {
            skips[i] = e.what();
        }
    });

    std::vector<ProxyRecord> kept;
    kept.reserve(out.records.size());
    for (size_t i = 0; i < out.records.size(); ++i) {
        if (skips[i])
            out.skipped.push_back({out.records[i].evidence.proxy, *skips[i]});
        else
            kept.push_back(std::move(out.records[i]));
    }
    out.records = std::move(kept);

    out.census = compute_census(out.records, evidence_total);
    out.census.from_block = opts.from_block;
    out.census.to_block = opts.to_block;
    out.census.source_mode =
        gateway.mode() == DataSource::Mode::fixture ? "fixture" : "live";
    out.census.failed_block_count = out.failed_blocks.size();
    return out;
}

ProxyRecord analyze_address(Gateway& gateway, const Address& proxy, uint64_t block,
                            const ScanOptions& opts) {
    ProxyRecord rec;
    rec.evidence.proxy = proxy;
    rec.evidence.block = block;

    const auto code = gateway.code_lookup(block)(proxy);
    if (!code)
        throw MissingCode(proxy);
    if (auto target = derive_target(gateway, block, proxy, *code, opts.interp))
        rec.evidence.target = *target;

    FingerprintDb db;
    if (!opts.fingerprints_path.empty())
        db = FingerprintDb::load(opts.fingerprints_path);
    classify_and_enrich(gateway, block, opts, db, rec, *code);
    return rec;
}

CensusReport compute_census(const std::vector<ProxyRecord>& sorted_records,
                            uint64_t evidence_total) {
    CensusReport c;
    c.evidence_total = evidence_total;
    c.proxies_total = sorted_records.size();

    // Records arrive address-sorted, so emplace keeps the lowest address as
    // each cluster's representative.
    std::map<Word, const ProxyRecord*> reps;
    for (const auto& r : sorted_records)
        reps.emplace(r.cluster, &r);
    c.systems_total = reps.size();

    std::map<std::pair<int, int>, uint64_t> admin_rows;
    for (const auto& [digest, rep] : reps) {
        switch (rep->verdict.cls) {
            case ProxyClass::forwarder: ++c.classes.forwarder; break;
            case ProxyClass::regular: ++c.classes.regular; break;
            case ProxyClass::uups: ++c.classes.uups; break;
            case ProxyClass::beacon: ++c.classes.beacon; break;
        }
        if (rep->verdict.cls != ProxyClass::forwarder) {
            AdminType t = AdminType::governance_or_unknown;
            AdminLocator::Kind k = AdminLocator::Kind::governance_unknown;
            if (rep->admin) {
                t = rep->admin->admin_type;
                k = rep->admin->locator.kind;
            }
            ++admin_rows[{static_cast<int>(t), static_cast<int>(k)}];
        }
        if (rep->verdict.cls == ProxyClass::uups) {
            const UupsVerdict v = rep->uups ? rep->uups->verdict : UupsVerdict::inconclusive;
            switch (v) {
                case UupsVerdict::exploitable: ++c.uups.exploitable; break;
                case UupsVerdict::takeover_only: ++c.uups.takeover_only; break;
                case UupsVerdict::not_vulnerable: ++c.uups.not_vulnerable; break;
                case UupsVerdict::inconclusive: ++c.uups.inconclusive; break;
            }
        }
    }
    for (const auto& [key, count] : admin_rows)
        c.admin_rows.push_back({static_cast<AdminType>(key.first),
                                static_cast<AdminLocator::Kind>(key.second), count});
    return c;
}

}  // namespace upscan
