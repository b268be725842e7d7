// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference Keccak-256 used as the cross-check oracle in tests. Kept
// deliberately unlike the library implementation: the state is a 5x5
// x/y-indexed matrix, the rotation offsets come out of the positional
// recurrence, and the round constants come out of the degree-8 LFSR, so a
// shared transcription mistake between library and test is impossible.

#include <upscan/evm/bytes.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <string_view>

namespace upscan::test {

namespace keccak_detail {

inline uint64_t rotl64(uint64_t v, unsigned r) {
    r %= 64;
    return r == 0 ? v : (v << r) | (v >> (64 - r));
}

// rc(t): bit stream of x^t mod x^8 + x^6 + x^5 + x^4 + 1 over GF(2).
inline bool rc_bit(unsigned t) {
    uint8_t r = 1;
    for (unsigned i = 0; i < t % 255; ++i) {
        const bool high = r & 0x80;
        r <<= 1;
        if (high)
            r ^= 0x71;  // x^8 := x^6 + x^5 + x^4 + 1
    }
    return r & 1;
}

inline uint64_t round_constant(unsigned round) {
    uint64_t rc = 0;
    for (unsigned j = 0; j <= 6; ++j)
        if (rc_bit(7 * round + j))
            rc |= uint64_t{1} << ((1u << j) - 1);
    return rc;
}

struct Offsets {
    std::array<std::array<unsigned, 5>, 5> r{};
    Offsets() {
        unsigned x = 1, y = 0;
        for (unsigned t = 0; t < 24; ++t) {
            r[x][y] = ((t + 1) * (t + 2) / 2) % 64;
            const unsigned nx = y;
            y = (2 * x + 3 * y) % 5;
            x = nx;
        }
    }
};

inline void permute(std::array<std::array<uint64_t, 5>, 5>& a) {
    static const Offsets off;
    for (unsigned round = 0; round < 24; ++round) {
        uint64_t c[5], d[5];
        for (unsigned x = 0; x < 5; ++x)
            c[x] = a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4];
        for (unsigned x = 0; x < 5; ++x)
            d[x] = c[(x + 4) % 5] ^ rotl64(c[(x + 1) % 5], 1);
        for (unsigned x = 0; x < 5; ++x)
            for (unsigned y = 0; y < 5; ++y)
                a[x][y] ^= d[x];

        std::array<std::array<uint64_t, 5>, 5> b{};
        for (unsigned x = 0; x < 5; ++x)
            for (unsigned y = 0; y < 5; ++y)
                b[y][(2 * x + 3 * y) % 5] = rotl64(a[x][y], off.r[x][y]);

        for (unsigned x = 0; x < 5; ++x)
            for (unsigned y = 0; y < 5; ++y)
                a[x][y] = b[x][y] ^ (~b[(x + 1) % 5][y] & b[(x + 2) % 5][y]);

        a[0][0] ^= round_constant(round);
    }
}

}  // namespace keccak_detail

inline Word alt_keccak256(BytesView data) {
    constexpr size_t rate = 136;  // 1600/8 - 2*256/8
    std::array<std::array<uint64_t, 5>, 5> state{};

    Bytes padded(data.begin(), data.end());
    padded.push_back(0x01);
    while (padded.size() % rate != 0)
        padded.push_back(0x00);
    padded.back() |= 0x80;

    for (size_t block = 0; block < padded.size(); block += rate) {
        for (size_t i = 0; i < rate / 8; ++i) {
            uint64_t lane = 0;
            for (size_t b = 0; b < 8; ++b)
                lane |= uint64_t{padded[block + i * 8 + b]} << (8 * b);
            state[i % 5][i / 5] ^= lane;
        }
        keccak_detail::permute(state);
    }

    Word out;
    for (size_t i = 0; i < 4; ++i) {
        const uint64_t lane = state[i % 5][i / 5];
        for (size_t b = 0; b < 8; ++b)
            out.bytes[i * 8 + b] = static_cast<uint8_t>(lane >> (8 * b));
    }
    return out;
}

inline Word alt_keccak256(std::string_view text) {
    return alt_keccak256(BytesView{reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

inline Word alt_keccak256(const Bytes& data) {
    return alt_keccak256(BytesView{data.data(), data.size()});
}

// keccak256(0xff || factory || salt || keccak256(init))[12..31], composed
// from the oracle hash only.
inline Address alt_create2_address(const Address& factory, const Word& salt, BytesView init_code) {
    const Word init_hash = alt_keccak256(init_code);
    Bytes pre;
    pre.push_back(0xff);
    pre.insert(pre.end(), factory.bytes.begin(), factory.bytes.end());
    pre.insert(pre.end(), salt.bytes.begin(), salt.bytes.end());
    pre.insert(pre.end(), init_hash.bytes.begin(), init_hash.bytes.end());
    const Word h = alt_keccak256(pre);
    return address_from_word(h);
}

// keccak256(label) - 1 with the arithmetic done in a big integer, not a
// byte-borrow loop.
inline Word alt_derived_slot(std::string_view label) {
    using boost::multiprecision::cpp_int;
    const Word h = alt_keccak256(label);
    cpp_int v = 0;
    for (auto b : h.bytes)
        v = (v << 8) | b;
    v -= 1;
    Word out;
    for (size_t i = 32; i-- > 0;) {
        out.bytes[i] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

}  // namespace upscan::test
