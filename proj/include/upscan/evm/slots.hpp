// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/evm/keccak.hpp>

#include <string_view>

namespace upscan {

// keccak256(label) - 1, the collision-avoiding slot family of EIP-1967.
inline Word derived_storage_slot(std::string_view label) {
    Bytes data(label.begin(), label.end());
    Word w = keccak256(data);
    for (int i = 31; i >= 0; --i) {
        if (w.bytes[i] != 0) {
            w.bytes[i] -= 1;
            break;
        }
        w.bytes[i] = 0xff;
    }
    return w;
}

inline const Word& eip1967_implementation_slot() {
    static const Word w = derived_storage_slot("eip1967.proxy.implementation");
    return w;
}

inline const Word& eip1967_admin_slot() {
    static const Word w = derived_storage_slot("eip1967.proxy.admin");
    return w;
}

inline const Word& eip1967_beacon_slot() {
    static const Word w = derived_storage_slot("eip1967.proxy.beacon");
    return w;
}

}  // namespace upscan
