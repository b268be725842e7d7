// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace upscan {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace upscan
