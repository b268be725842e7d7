// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/evm/bytes.hpp>

#include <functional>
#include <optional>

namespace upscan {

// Account state accessors injected into analyses. nullopt means the backing
// source could not answer (distinct from an empty account, which returns an
// empty byte string or a zero word).
using CodeLookup = std::function<std::optional<Bytes>(const Address&)>;
using StorageLookup = std::function<std::optional<Word>(const Address&, const Word&)>;

}  // namespace upscan
