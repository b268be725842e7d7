// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/classify/eternal_storage.hpp>

#include <optional>
#include <regex>
#include <set>
#include <string>

namespace upscan {
namespace {

// Width suffixes collapse within the two integer families so that a
// mapping over uint256 pairs with accessors spelled uint (and vice versa).
std::optional<std::string> primitive_family(const std::string& token) {
    auto numeric_tail = [](std::string_view s, size_t from) {
        if (from == s.size())
            return true;
        for (size_t i = from; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    if (token == "bool" || token == "address" || token == "string")
        return token;
    if (token.rfind("uint", 0) == 0 && numeric_tail(token, 4))
        return "uint";
    if (token.rfind("int", 0) == 0 && numeric_tail(token, 3))
        return "int";
    if (token.rfind("bytes", 0) == 0 && numeric_tail(token, 5))
        return token;  // bytes widths are distinct value shapes
    return std::nullopt;
}

std::set<std::string> families_matching(std::string_view text, const std::regex& re) {
    std::set<std::string> out;
    std::cregex_iterator it(text.data(), text.data() + text.size(), re);
    for (std::cregex_iterator end; it != end; ++it)
        if (auto fam = primitive_family((*it)[1].str()))
            out.insert(*fam);
    return out;
}

}  // namespace

bool detect_eternal_storage(std::string_view source_text) {
    // mapping(bytes32 => T)
    static const std::regex mapping_re(
        R"(mapping\s*\(\s*bytes32\s*=>\s*([A-Za-z][A-Za-z0-9]*)\s*\))");
    // function f(bytes32 k) ... returns (T ...)
    static const std::regex getter_re(
        R"(function\s+[A-Za-z_]\w*\s*\(\s*bytes32(?:\s+\w+)?\s*\)[^{;]*\breturns\s*\(\s*([A-Za-z][A-Za-z0-9]*))");
    // function f(bytes32 k, T v)
    static const std::regex setter_re(
        R"(function\s+[A-Za-z_]\w*\s*\(\s*bytes32(?:\s+\w+)?\s*,\s*([A-Za-z][A-Za-z0-9]*))");

    const auto mapped = families_matching(source_text, mapping_re);
    const auto read = families_matching(source_text, getter_re);
    const auto written = families_matching(source_text, setter_re);

    size_t complete = 0;
    for (const auto& fam : mapped)
        if (read.count(fam) && written.count(fam))
            ++complete;
    return complete >= 2;
}

}  // namespace upscan
