// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/admin/admin.hpp>
#include <upscan/evm/keccak.hpp>
#include <upscan/evm/slots.hpp>

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace upscan {
namespace {

Word must_read(const StorageLookup& storage_read, const Address& account, const Word& slot) {
    if (storage_read) {
        if (auto v = storage_read(account, slot))
            return *v;
    }
    throw StorageUnavailable(account, slot);
}

// Caller comparison asserted on every reachable forwarding delegatecall.
// Covers admin proxies that gate forwarding itself instead of an upgrade.
std::optional<GuardCandidate> forwarding_caller_guard(BytesView code, const InterpOptions& opts) {
    const InterpResult res = interpret(code, EntryMode::fallback, opts);
    std::vector<const InterpEvent*> sites;
    for (const auto& ev : res.events)
        if (ev.kind == InterpEvent::Kind::delegatecall)
            sites.push_back(&ev);
    if (sites.empty())
        return std::nullopt;

    std::vector<GuardCandidate> common;
    for (const auto& f : sites.front()->facts)
        if (f.subject == GuardFact::Subject::caller && f.asserted)
            common.push_back(f.cand);
    for (size_t i = 1; i < sites.size() && !common.empty(); ++i) {
        std::vector<GuardCandidate> kept;
        for (const auto& c : common)
            for (const auto& f : sites[i]->facts)
                if (f.subject == GuardFact::Subject::caller && f.asserted && f.cand == c) {
                    kept.push_back(c);
                    break;
                }
        common = std::move(kept);
    }
    if (common.empty())
        return std::nullopt;
    return common.front();
}

std::optional<Address> guard_address(const GuardCandidate& g, const Address& store,
                                     const StorageLookup& storage_read) {
    if (g.kind == GuardCandidate::Kind::constant_address)
        return g.address;
    auto slot = g.slot.resolved();
    if (!slot)
        return std::nullopt;
    const Word w = must_read(storage_read, store, *slot);
    if (w.is_zero())
        return std::nullopt;
    return address_from_word(w);
}

// The admin of an admin-proxy account itself: fixed slot, then the guard on
// its delegation-slot writer, then the guard on the forwarding delegatecall.
std::optional<Address> admin_of_account(const Address& account, BytesView code,
                                        const TargetResolution* site,
                                        const StorageLookup& storage_read,
                                        const InterpOptions& opts) {
    const Word fixed = must_read(storage_read, account, eip1967_admin_slot());
    if (!fixed.is_zero())
        return address_from_word(fixed);

    if (site && site->kind == TargetResolution::Kind::from_slot) {
        if (auto slot = site->slot.resolved()) {
            const AssignmentScan scan = find_slot_assignments(code, *slot, opts);
            for (const auto& f : scan.findings) {
                if (!f.value_taint || !f.guard)
                    continue;
                if (auto a = guard_address(*f.guard, account, storage_read))
                    return a;
            }
        }
    }
    if (auto g = forwarding_caller_guard(code, opts))
        return guard_address(*g, account, storage_read);
    return std::nullopt;
}

}  // namespace

const FingerprintEntry* FingerprintDb::find(const Word& digest) const {
    for (const auto& e : entries)
        if (e.code_digest == digest)
            return &e;
    return nullptr;
}

FingerprintDb FingerprintDb::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("fingerprint database: ") + e.what());
    }
    if (!doc.is_object())
        throw std::runtime_error("fingerprint database: top level must be an object");

    FingerprintDb db;
    if (auto it = doc.find("version"); it != doc.end() && it->is_number_unsigned())
        db.version = it->get<uint32_t>();
    const auto entries = doc.find("entries");
    if (entries == doc.end() || !entries->is_array())
        throw std::runtime_error("fingerprint database: missing entries array");
    for (const auto& e : *entries) {
        if (!e.is_object())
            throw std::runtime_error("fingerprint database: entry must be an object");
        FingerprintEntry fe;
        const auto dig = e.find("code_digest");
        if (dig == e.end() || !dig->is_string())
            throw std::runtime_error("fingerprint database: entry missing code_digest");
        auto w = hex::decode_fixed<32>(dig->get<std::string>());
        if (!w)
            throw std::runtime_error("fingerprint database: code_digest must be 32 bytes of hex: " +
                                     dig->get<std::string>());
        fe.code_digest = *w;
        if (auto l = e.find("label"); l != e.end() && l->is_string())
            fe.label = l->get<std::string>();
        if (auto t = e.find("threshold_semantics"); t != e.end() && t->is_string())
            fe.threshold_semantics = t->get<std::string>();
        db.entries.push_back(std::move(fe));
    }
    return db;
}

FingerprintDb FingerprintDb::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("fingerprint database: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

LocatedAdmin locate_admin(const Address& proxy, const Verdict& verdict,
                          const StorageLookup& storage_read, const CodeLookup& code_lookup,
                          const InterpOptions& opts) {
    if (verdict.cls == ProxyClass::forwarder)
        throw std::invalid_argument("admin resolution requires an upgradeable verdict");

    // The upgrade writer's code and the storage its guard slot lives in.
    // Regular writes on the proxy; uups writes on the logic but executes in
    // the proxy's storage; beacon writes and stores on the beacon.
    Address writer_host = proxy;
    Address guard_store = proxy;
    if (verdict.cls == ProxyClass::uups && verdict.logic) {
        writer_host = *verdict.logic;
    } else if (verdict.cls == ProxyClass::beacon && verdict.beacon) {
        writer_host = *verdict.beacon;
        guard_store = *verdict.beacon;
    }

    std::optional<GuardCandidate> guard;
    {
        auto wcode = code_lookup(writer_host);
        if (!wcode)
            throw MissingCode(writer_host);
        for (const auto& f : verdict.assignments) {
            if (!f.value_taint)
                continue;
            if (auto g = extract_caller_guard(*wcode, f, opts)) {
                guard = g;
                break;
            }
        }
    }

    auto from_guard = [&](const GuardCandidate& g) -> std::optional<LocatedAdmin> {
        LocatedAdmin out;
        if (g.kind == GuardCandidate::Kind::constant_address) {
            out.locator.kind = AdminLocator::Kind::hardcoded_admin;
            out.locator.address = g.address;
            out.admin = g.address;
            return out;
        }
        auto slot = g.slot.resolved();
        if (!slot)
            return std::nullopt;
        const Word w = must_read(storage_read, guard_store, *slot);
        if (g.slot.kind == SlotExpr::Kind::keccak_of_constant) {
            out.locator.kind = AdminLocator::Kind::arbitrary_keccak_slot;
            out.locator.preimage = g.slot.preimage;
        } else {
            out.locator.kind = AdminLocator::Kind::discovered_slot;
        }
        out.locator.slot = *slot;
        out.admin = address_from_word(w);
        return out;
    };

    const Word fixed = must_read(storage_read, proxy, eip1967_admin_slot());
    if (!fixed.is_zero()) {
        LocatedAdmin out;
        out.locator.kind = AdminLocator::Kind::eip1967_admin_slot;
        out.locator.slot = eip1967_admin_slot();
        out.admin = address_from_word(fixed);
        // Same proxy, two non-zero answers: keep the fixed slot, flag it.
        if (guard) {
            if (auto alt = from_guard(*guard))
                if (!alt->admin.is_zero() && alt->admin != out.admin)
                    out.conflicting_locators = true;
        }
        return out;
    }

    if (guard) {
        if (auto out = from_guard(*guard))
            return *out;
    }
    return LocatedAdmin{};  // governance_unknown, zero admin
}

AdminReport classify_admin(const Address& proxy, const LocatedAdmin& located,
                           const CodeLookup& code_lookup, const StorageLookup& storage_read,
                           const FingerprintDb& fingerprints, const AdminResolveOptions& opts) {
    AdminReport rep;
    rep.proxy = proxy;
    rep.locator = located.locator;
    rep.admin = located.admin;
    rep.conflicting_locators = located.conflicting_locators;

    if (located.locator.kind == AdminLocator::Kind::governance_unknown)
        return rep;

    Address current = located.admin;
    std::set<Address> seen{current};
    int depth = opts.depth;

    for (;;) {
        rep.admin = current;
        auto code = code_lookup(current);
        if (!code)
            throw MissingCode(current);
        if (code->empty()) {
            rep.admin_type = AdminType::eoa;
            return rep;
        }
        if (const auto* e = fingerprints.find(keccak256(*code))) {
            rep.admin_type = AdminType::multisig;
            rep.multisig_label = e->label;
            return rep;
        }

        const DelegateAnalysis d = resolve_delegate_target(*code, opts.interp);
        const TargetResolution* site = d.primary();
        if (site == nullptr || site->kind == TargetResolution::Kind::unresolved)
            return rep;  // contract, no known wallet shape, no proxy shape

        // A wallet behind its own thin proxy: recognize the singleton.
        std::optional<Address> fwd;
        if (site->kind == TargetResolution::Kind::hardcoded) {
            fwd = site->address;
        } else if (site->kind == TargetResolution::Kind::from_slot) {
            if (auto slot = site->slot.resolved()) {
                const Word w = must_read(storage_read, current, *slot);
                if (!w.is_zero())
                    fwd = address_from_word(w);
            }
        }
        if (fwd) {
            if (auto tcode = code_lookup(*fwd)) {
                if (const auto* e = fingerprints.find(keccak256(*tcode))) {
                    rep.admin_type = AdminType::multisig;
                    rep.multisig_label = e->label;
                    return rep;
                }
            }
        }

        auto next = admin_of_account(current, *code, site, storage_read, opts.interp);
        if (!next || seen.count(*next))
            return rep;  // dead end or cycle: stays governance_or_unknown
        if (depth == 0) {
            rep.recursion_exhausted = true;
            return rep;
        }
        rep.via_admin_proxy.push_back(current);
        seen.insert(*next);
        current = *next;
        --depth;
    }
}

AdminReport resolve_admin(const Address& proxy, const Verdict& verdict,
                          const CodeLookup& code_lookup, const StorageLookup& storage_read,
                          const FingerprintDb& fingerprints, const AdminResolveOptions& opts) {
    const LocatedAdmin located = locate_admin(proxy, verdict, storage_read, code_lookup, opts.interp);
    return classify_admin(proxy, located, code_lookup, storage_read, fingerprints, opts);
}

const char* to_string(AdminType t) {
    switch (t) {
        case AdminType::eoa: return "eoa";
        case AdminType::multisig: return "multisig";
        case AdminType::governance_or_unknown: return "governance-or-unknown";
    }
    return "governance-or-unknown";
}

const char* to_string(AdminLocator::Kind k) {
    switch (k) {
        case AdminLocator::Kind::eip1967_admin_slot: return "eip1967-admin-slot";
        case AdminLocator::Kind::discovered_slot: return "discovered-slot";
        case AdminLocator::Kind::arbitrary_keccak_slot: return "arbitrary-keccak-slot";
        case AdminLocator::Kind::hardcoded_admin: return "hardcoded-admin";
        case AdminLocator::Kind::governance_unknown: return "governance-unknown";
    }
    return "governance-unknown";
}

}  // namespace upscan
