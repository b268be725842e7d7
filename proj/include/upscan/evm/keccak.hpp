// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/evm/bytes.hpp>

namespace upscan {

// Keccak-256 with the original 0x01 domain padding (the Ethereum variant,
// not NIST SHA3-256 which pads with 0x06).
Word keccak256(BytesView data);

inline Word keccak256(const Bytes& data) {
    return keccak256(BytesView{data.data(), data.size()});
}

inline Word keccak256(std::string_view text) {
    return keccak256(BytesView{reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

}  // namespace upscan
