// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/evm/bytes.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace upscan {

// One frame of a transaction execution trace, node wire shape.
struct TraceAction {
    enum class Kind : uint8_t {
        call,
        delegatecall,
        staticcall,
        callcode,
        create,
        create2,
        selfdestruct,
        other,
    };

    Kind kind = Kind::other;
    std::string kind_verbatim;  // original tag, preserved for unknown kinds
    Address from;
    Address to;
    Bytes input;
    std::vector<uint32_t> trace_path;  // position in the call tree
    Word tx_hash;
    uint64_t block = 0;
};

struct MalformedTrace : std::runtime_error {
    MalformedTrace(const std::string& what, size_t offset)
        : std::runtime_error(what), byte_offset(offset) {}
    size_t byte_offset;
};

// Parses one block's trace-replay document (array of per-transaction
// objects, each carrying "trace" and "transactionHash"). Actions come back
// in document order. Throws MalformedTrace.
std::vector<TraceAction> parse_trace(std::string_view document, uint64_t block);

struct ProxyEvidence {
    Address proxy;
    Address target;
    Word tx_hash;
    uint64_t block = 0;
    std::optional<Selector> selector;  // first four input bytes when present

    bool operator==(const ProxyEvidence&) const = default;
};

// A frame pair yields evidence when the child is a delegatecall directly
// under its parent in the tree, forwards the parent's input byte for byte,
// runs as the parent's callee, and the input is non-empty.
std::vector<ProxyEvidence> detect_proxy_calls(std::span<const TraceAction> actions);

}  // namespace upscan
