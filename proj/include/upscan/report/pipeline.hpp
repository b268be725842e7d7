// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/admin/admin.hpp>
#include <upscan/audit/uups.hpp>
#include <upscan/classify/verdict.hpp>
#include <upscan/gateway/gateway.hpp>

namespace upscan {

struct ScanOptions {
    uint64_t from_block = 0;
    uint64_t to_block = 0;  // inclusive
    int workers = 1;
    std::string fingerprints_path;  // empty: no multisig fingerprints
    InterpOptions interp;
    int admin_depth = 4;
    Word initializer_slot{};  // forwarded to the uups audit
};

struct BlockFailure {
    uint64_t block = 0;
    std::string error;
};

struct SkippedProxy {
    Address proxy;
    std::string error;
};

// Everything the scan learned about one unique proxy address.
struct ProxyRecord {
    ProxyEvidence evidence;     // first observed pair, in block order
    uint64_t evidence_count = 0;
    Verdict verdict;
    Word cluster;
    std::optional<AdminReport> admin;  // upgradeable classes only
    std::optional<UupsFindings> uups;  // uups class only
    std::vector<std::string> errors;   // partial-analysis notes
};

struct ClassCounts {
    uint64_t forwarder = 0;
    uint64_t regular = 0;
    uint64_t uups = 0;
    uint64_t beacon = 0;
};

struct AdminRow {
    AdminType admin_type = AdminType::governance_or_unknown;
    AdminLocator::Kind locator = AdminLocator::Kind::governance_unknown;
    uint64_t count = 0;
};

struct UupsTallies {
    uint64_t exploitable = 0;
    uint64_t takeover_only = 0;
    uint64_t not_vulnerable = 0;
    uint64_t inconclusive = 0;
};

// Census over cluster representatives (lowest proxy address per cluster):
// class counts sum to systems_total; admin rows partition the upgradeable
// representatives; uups tallies cover the uups representatives.
struct CensusReport {
    uint64_t evidence_total = 0;  // matching delegate pairs across the range
    uint64_t proxies_total = 0;   // unique proxy addresses
    uint64_t systems_total = 0;   // clusters
    ClassCounts classes;
    std::vector<AdminRow> admin_rows;  // sorted by (admin_type, locator)
    UupsTallies uups;
    uint64_t from_block = 0;
    uint64_t to_block = 0;
    std::string source_mode;  // "fixture" or "live"
    uint64_t failed_block_count = 0;
};

struct ScanResult {
    std::vector<ProxyRecord> records;  // sorted by proxy address
    std::vector<BlockFailure> failed_blocks;
    std::vector<SkippedProxy> skipped;  // proxy code unavailable at the pin
    CensusReport census;
};

// Full pipeline over the inclusive block range: replay, pair detection,
// classification, admin resolution, uups audits, census. Deterministic for
// a fixed source and range regardless of worker count. State reads pin the
// fixture's manifest block in fixture mode, to_block in live mode.
ScanResult run_scan(Gateway& gateway, const ScanOptions& opts);

// Single-subject helpers behind the classify/admin/audit-uups subcommands.
ProxyRecord analyze_address(Gateway& gateway, const Address& proxy, uint64_t block,
                            const ScanOptions& opts);

CensusReport compute_census(const std::vector<ProxyRecord>& sorted_records,
                            uint64_t evidence_total);

}  // namespace upscan
