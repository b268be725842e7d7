// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/evm/bytes.hpp>
#include <upscan/evm/disasm.hpp>

#include <set>

namespace upscan {

// 4-byte constants that take part in a dispatch comparison:
//   PUSH4 s ... EQ ... JUMPI
//   PUSH4 s ... SUB ... ISZERO ... JUMPI
//   PUSH4 s ... XOR ... ISZERO ... JUMPI
// Bare PUSH4 data (masks, embedded constants) does not qualify.
std::set<Selector> extract_selectors(BytesView code);
std::set<Selector> extract_selectors(const Disassembly& d);

enum class LiteralSite {
    none,
    push20,      // exact PUSH20 immediate
    push32,      // 20-byte window inside a PUSH32 immediate
    raw_window,  // any 20-byte window of the code section
};

struct LiteralHit {
    LiteralSite site = LiteralSite::none;
    uint32_t offset = 0;  // instruction offset (push sites) or byte offset (raw)

    explicit operator bool() const { return site != LiteralSite::none; }
};

// Where the trailing compiler metadata begins, if a known marker is present
// (ipfs or bzzr CBOR keys). Raw-window searches stop here; decoded PUSH
// immediates are searched over the whole blob regardless.
size_t metadata_boundary(BytesView code);

LiteralHit find_address_literal(BytesView code, const Address& target);

inline bool contains_address_literal(BytesView code, const Address& target) {
    return static_cast<bool>(find_address_literal(code, target));
}

}  // namespace upscan
