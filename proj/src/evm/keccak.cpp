// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/evm/keccak.hpp>

#include <bit>
#include <cstring>

namespace upscan {
namespace {

constexpr uint64_t round_constants[24] = {
    0x0000000000000001, 0x0000000000008082, 0x800000000000808a, 0x8000000080008000,
    0x000000000000808b, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008a, 0x0000000000000088, 0x0000000080008009, 0x000000008000000a,
    0x000000008000808b, 0x800000000000008b, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800a, 0x800000008000000a,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
};

// rho rotations and pi lane order for the in-place walk below.
constexpr int rho[24] = {1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14,
                         27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44};
constexpr int pi[24] = {10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4,
                        15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1};

void keccak_f1600(uint64_t s[25]) {
    uint64_t bc[5];
    for (int round = 0; round < 24; ++round) {
        // theta
        for (int i = 0; i < 5; ++i)
            bc[i] = s[i] ^ s[i + 5] ^ s[i + 10] ^ s[i + 15] ^ s[i + 20];
        for (int i = 0; i < 5; ++i) {
            const uint64_t t = bc[(i + 4) % 5] ^ std::rotl(bc[(i + 1) % 5], 1);
            for (int j = 0; j < 25; j += 5)
                s[j + i] ^= t;
        }
        // rho + pi
        uint64_t t = s[1];
        for (int i = 0; i < 24; ++i) {
            const int j = pi[i];
            const uint64_t tmp = s[j];
            s[j] = std::rotl(t, rho[i]);
            t = tmp;
        }
        // chi
        for (int j = 0; j < 25; j += 5) {
            for (int i = 0; i < 5; ++i)
                bc[i] = s[j + i];
            for (int i = 0; i < 5; ++i)
                s[j + i] = bc[i] ^ (~bc[(i + 1) % 5] & bc[(i + 2) % 5]);
        }
        // iota
        s[0] ^= round_constants[round];
    }
}

}  // namespace

Word keccak256(BytesView data) {
    constexpr size_t rate = 136;  // 1088-bit rate for 256-bit output
    uint64_t state[25] = {};

    size_t offset = 0;
    while (data.size() - offset >= rate) {
        for (size_t i = 0; i < rate / 8; ++i) {
            uint64_t lane;
            std::memcpy(&lane, data.data() + offset + 8 * i, 8);
            state[i] ^= lane;  // little-endian hosts only; fine for this target
        }
        keccak_f1600(state);
        offset += rate;
    }

    uint8_t block[rate] = {};
    const size_t tail = data.size() - offset;
    std::memcpy(block, data.data() + offset, tail);
    block[tail] = 0x01;
    block[rate - 1] |= 0x80;
    for (size_t i = 0; i < rate / 8; ++i) {
        uint64_t lane;
        std::memcpy(&lane, block + 8 * i, 8);
        state[i] ^= lane;
    }
    keccak_f1600(state);

    Word out;
    for (int i = 0; i < 4; ++i) {
        const uint64_t lane = state[i];
        for (int b = 0; b < 8; ++b)
            out.bytes[8 * i + b] = static_cast<uint8_t>(lane >> (8 * b));
    }
    return out;
}

}  // namespace upscan
