// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/report/pipeline.hpp>

#include <string>

namespace upscan {

enum class OutputFormat : uint8_t { json, csv, human };

std::optional<OutputFormat> parse_output_format(std::string_view name);

// JSON output is byte-stable for a fixed input: keys sorted, no timestamps,
// run metadata confined to the provenance object.
std::string render_scan(const ScanResult& result, OutputFormat format);
std::string render_record(const ProxyRecord& record, OutputFormat format);
std::string render_admin(const AdminReport& report, OutputFormat format);
std::string render_uups(const UupsFindings& findings, OutputFormat format);

}  // namespace upscan
