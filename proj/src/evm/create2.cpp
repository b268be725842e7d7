// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/evm/create2.hpp>
#include <upscan/evm/keccak.hpp>

namespace upscan {

Address compute_create2_address(const Address& factory, const Word& salt, BytesView init_code) {
    const Word init_hash = keccak256(init_code);
    Bytes preimage;
    preimage.reserve(1 + 20 + 32 + 32);
    preimage.push_back(0xff);
    preimage.insert(preimage.end(), factory.bytes.begin(), factory.bytes.end());
    preimage.insert(preimage.end(), salt.bytes.begin(), salt.bytes.end());
    preimage.insert(preimage.end(), init_hash.bytes.begin(), init_hash.bytes.end());
    return address_from_word(keccak256(preimage));
}

}  // namespace upscan
