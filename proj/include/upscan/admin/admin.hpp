// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/classify/verdict.hpp>

#include <string>
#include <vector>

namespace upscan {

// Where the admin account was found.
struct AdminLocator {
    enum class Kind : uint8_t {
        eip1967_admin_slot,     // the fixed admin slot held a non-zero word
        discovered_slot,        // upgrade guard compares CALLER to SLOAD(slot)
        arbitrary_keccak_slot,  // same, slot spelled as a hash of a constant
        hardcoded_admin,        // upgrade guard compares CALLER to a literal
        governance_unknown,     // nothing above applied
    };

    Kind kind = Kind::governance_unknown;
    Word slot;        // discovered_slot / arbitrary_keccak_slot
    Bytes preimage;   // arbitrary_keccak_slot
    Address address;  // hardcoded_admin
};

enum class AdminType : uint8_t { eoa, multisig, governance_or_unknown };

struct AdminReport {
    Address proxy;
    AdminLocator locator;
    Address admin;  // terminal account of the chain; zero on governance_unknown locator
    AdminType admin_type = AdminType::governance_or_unknown;
    std::string multisig_label;  // fingerprint label when admin_type == multisig
    std::vector<Address> via_admin_proxy;  // intermediate admin proxies, acyclic
    bool conflicting_locators = false;  // admin slot and guard slot disagree
    bool recursion_exhausted = false;   // chain ran past the depth budget
};

struct StorageUnavailable : std::runtime_error {
    StorageUnavailable(const Address& account, const Word& slot)
        : std::runtime_error("storage unavailable for " + hex::encode(account) + " slot " +
                             hex::encode(slot)),
          account(account),
          slot(slot) {}
    Address account;
    Word slot;
};

// Multisig wallets are recognized by runtime-code digest against this
// database. Extending coverage means adding entries, not code.
struct FingerprintEntry {
    Word code_digest;
    std::string label;
    std::string threshold_semantics;
};

struct FingerprintDb {
    uint32_t version = 1;
    std::vector<FingerprintEntry> entries;

    const FingerprintEntry* find(const Word& digest) const;

    // Both throw std::runtime_error with a position/description on bad input.
    // Unknown fields are ignored so databases can grow ahead of the binary.
    static FingerprintDb from_json(std::string_view text);
    static FingerprintDb load(const std::string& path);
};

struct LocatedAdmin {
    AdminLocator locator;
    Address admin;
    bool conflicting_locators = false;
};

struct AdminResolveOptions {
    int depth = 4;  // admin-proxy links to follow
    InterpOptions interp;
};

// Finds the admin account of an upgradeable proxy: the EIP-1967 admin slot
// when non-zero, otherwise the caller guard on the upgrade writer. Beacon
// guard slots read from the beacon account, others from the proxy. Throws
// StorageUnavailable when the accessor cannot answer, MissingCode when a
// needed account's code is gone.
LocatedAdmin locate_admin(const Address& proxy, const Verdict& verdict,
                          const StorageLookup& storage_read, const CodeLookup& code_lookup,
                          const InterpOptions& opts = {});

// Types the located admin, following admin-proxy indirection down to the
// real account. Cycle-guarded; depth bounds the chain length.
AdminReport classify_admin(const Address& proxy, const LocatedAdmin& located,
                           const CodeLookup& code_lookup, const StorageLookup& storage_read,
                           const FingerprintDb& fingerprints, const AdminResolveOptions& opts = {});

AdminReport resolve_admin(const Address& proxy, const Verdict& verdict,
                          const CodeLookup& code_lookup, const StorageLookup& storage_read,
                          const FingerprintDb& fingerprints, const AdminResolveOptions& opts = {});

const char* to_string(AdminType t);
const char* to_string(AdminLocator::Kind k);

}  // namespace upscan
