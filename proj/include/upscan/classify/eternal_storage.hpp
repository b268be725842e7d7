// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace upscan {

// Source-text shape check for the eternal-storage layout: per-primitive-type
// mappings keyed by bytes32, each paired with a getter taking the key and a
// setter taking key plus value. True when at least two distinct primitive
// type families complete the shape. Operates on source, never bytecode.
bool detect_eternal_storage(std::string_view source_text);

}  // namespace upscan
