// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/evm/bytes.hpp>

namespace upscan {

// keccak256(0xff || factory || salt || keccak256(init_code))[12..31]
Address compute_create2_address(const Address& factory, const Word& salt, BytesView init_code);

}  // namespace upscan
