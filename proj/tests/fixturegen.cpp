// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

// Regenerates the on-disk fixture chain from the tables in
// tests/support/corpus.cpp. Run from anywhere:
//
//   fixturegen <fixture-dir> <fingerprints-file>
//
// The repository checks in the generated tree; rerun this after changing
// the corpus and commit the result.
#include "support/corpus.hpp"

#include <cstdio>
#include <exception>

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: fixturegen <fixture-dir> <fingerprints-file>\n");
        return 1;
    }
    try {
        upscan::test::corpus::write_fixture_tree(argv[1]);
        upscan::test::corpus::write_fingerprints(argv[2]);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fixturegen: %s\n", e.what());
        return 1;
    }
    std::printf("fixture tree written to %s\n", argv[1]);
    return 0;
}
