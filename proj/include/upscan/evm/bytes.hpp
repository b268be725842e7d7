// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace upscan {

using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;

// Fixed-width big-endian byte strings. Comparable, hashable, hex-printable.
template <size_t N>
struct FixedBytes {
    std::array<uint8_t, N> bytes{};

    constexpr auto operator<=>(const FixedBytes&) const = default;

    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0)
                return false;
        return true;
    }

    static FixedBytes from_uint(uint64_t v) {
        FixedBytes r;
        for (size_t i = 0; i < sizeof(uint64_t) && i < N; ++i)
            r.bytes[N - 1 - i] = static_cast<uint8_t>(v >> (8 * i));
        return r;
    }

    // Low 64 bits, big-endian tail. Callers must check fits_uint64 when range matters.
    uint64_t to_uint_truncated() const {
        uint64_t v = 0;
        for (size_t i = (N > 8 ? N - 8 : 0); i < N; ++i)
            v = (v << 8) | bytes[i];
        return v;
    }

    bool fits_uint64() const {
        for (size_t i = 0; i + 8 < N; ++i)
            if (bytes[i] != 0)
                return false;
        return true;
    }
};

using Address = FixedBytes<20>;
using Word = FixedBytes<32>;
using Selector = FixedBytes<4>;

// Address occupies the low 20 bytes of a 256-bit word.
inline Address address_from_word(const Word& w) {
    Address a;
    std::copy(w.bytes.begin() + 12, w.bytes.end(), a.bytes.begin());
    return a;
}

inline Word word_from_address(const Address& a) {
    Word w;
    std::copy(a.bytes.begin(), a.bytes.end(), w.bytes.begin() + 12);
    return w;
}

namespace hex {

inline int nibble(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

inline std::string_view strip_prefix(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        return s.substr(2);
    return s;
}

// Strict decode: optional 0x prefix, even length, hex digits only.
inline std::optional<Bytes> decode(std::string_view s) {
    s = strip_prefix(s);
    if (s.size() % 2 != 0)
        return std::nullopt;
    Bytes out;
    out.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2) {
        int hi = nibble(s[i]);
        int lo = nibble(s[i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        out.push_back(static_cast<uint8_t>(hi << 4 | lo));
    }
    return out;
}

inline std::string encode(BytesView data, bool with_prefix = true) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(data.size() * 2 + 2);
    if (with_prefix)
        s += "0x";
    for (uint8_t b : data) {
        s += digits[b >> 4];
        s += digits[b & 0x0f];
    }
    return s;
}

template <size_t N>
std::optional<FixedBytes<N>> decode_fixed(std::string_view s) {
    auto raw = decode(s);
    if (!raw || raw->size() != N)
        return std::nullopt;
    FixedBytes<N> r;
    std::copy(raw->begin(), raw->end(), r.bytes.begin());
    return r;
}

// Quantity decode tolerates short hex (JSON-RPC words are often unpadded).
template <size_t N>
std::optional<FixedBytes<N>> decode_padded(std::string_view s) {
    s = strip_prefix(s);
    if (s.empty() || s.size() > 2 * N)
        return std::nullopt;
    std::string full(2 * N - s.size(), '0');
    full.append(s);
    return decode_fixed<N>(full);
}

template <size_t N>
std::string encode(const FixedBytes<N>& v, bool with_prefix = true) {
    return encode(BytesView{v.bytes.data(), v.bytes.size()}, with_prefix);
}

}  // namespace hex

inline std::optional<Address> parse_address(std::string_view s) {
    return hex::decode_fixed<20>(s);
}

inline std::optional<Word> parse_word(std::string_view s) {
    return hex::decode_padded<32>(s);
}

}  // namespace upscan
