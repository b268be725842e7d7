// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/accessors.hpp>
#include <upscan/evm/bytes.hpp>

#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace upscan {

// Network or IO failure after retries were spent, or a missing fixture file.
struct SourceUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixture mode only: the account is not part of the corpus. Deliberately
// distinct from an account with empty code.
struct NotInFixture : std::runtime_error {
    explicit NotInFixture(const Address& account)
        : std::runtime_error("account not in fixture set: " + hex::encode(account)),
          account(account) {}
    Address account;
};

// The endpoint answered but lacks the trace-replay method.
struct TraceUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataSource {
    enum class Mode : uint8_t { live, fixture };

    Mode mode = Mode::fixture;
    std::string endpoint;     // live: http(s)://host:port[/path]
    std::string fixture_dir;  // fixture: directory with manifest/accounts/traces
    int max_in_flight = 4;    // live request concurrency ceiling
    int attempts = 3;
    std::chrono::milliseconds backoff_base{100};
    std::optional<std::string> cache_dir;  // live reads persist here when set

    static DataSource live(std::string url) {
        DataSource s;
        s.mode = Mode::live;
        s.endpoint = std::move(url);
        return s;
    }
    static DataSource fixture(std::string dir) {
        DataSource s;
        s.fixture_dir = std::move(dir);
        return s;
    }
};

// One uniform, shareable, read-only view of chain state at historical
// blocks. Thread-safe: analysis workers call concurrently without locking.
class Gateway {
public:
    explicit Gateway(DataSource source);
    ~Gateway();
    Gateway(const Gateway&) = delete;
    Gateway& operator=(const Gateway&) = delete;

    Bytes get_code(const Address& account, uint64_t block);
    Word get_storage(const Address& account, const Word& slot, uint64_t block);

    // Raw per-block trace document, exactly as parse_trace expects it.
    std::string replay_block(uint64_t block);

    // Deployment provenance, when the fixture records it. Live mode cannot
    // answer and returns nullopt (provenance needs deployment-tx history).
    std::optional<bool> created_via_create2(const Address& account);

    std::optional<uint64_t> fixture_block() const;          // manifest pin
    std::vector<uint64_t> fixture_trace_blocks() const;     // sorted
    DataSource::Mode mode() const;

    // Accessor adapters for the analysis modules: gateway errors become
    // nullopt ("source could not answer"). The gateway must outlive them.
    CodeLookup code_lookup(uint64_t block);
    StorageLookup storage_lookup(uint64_t block);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Structural checks over a fixture directory; one human-readable line per
// problem, empty when the corpus is well formed.
std::vector<std::string> validate_fixture_dir(const std::string& dir);

}  // namespace upscan
