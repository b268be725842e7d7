// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/report/pipeline.hpp>
#include <upscan/report/render.hpp>
#include <upscan/version.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace upscan;

// exit codes: 0 success, 1 usage, 2 source unavailable, 3 partial scan
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kSource = 2;
constexpr int kPartial = 3;

struct CommonOpts {
    std::string rpc_url;
    std::string fixtures;
    std::string cache;
    std::string fingerprints;
    std::string output = "json";
    uint64_t step_budget = InterpOptions{}.step_budget;
    int admin_depth = 4;
    int workers = 4;
};

void add_source_flags(CLI::App* cmd, CommonOpts& o) {
    auto* rpc =
        cmd->add_option("--rpc-url", o.rpc_url, "JSON-RPC endpoint (default: $ETH_RPC_URL)");
    auto* fix = cmd->add_option("--fixtures", o.fixtures, "fixture corpus directory");
    rpc->excludes(fix);
    fix->excludes(rpc);
    cmd->add_option("--cache", o.cache, "cache directory for live reads");
    cmd->add_option("--output", o.output, "output format")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    cmd->add_option("--fingerprints", o.fingerprints, "multisig fingerprint database (json)");
    cmd->add_option("--step-budget", o.step_budget, "interpreter step budget per entry");
    cmd->add_option("--admin-depth", o.admin_depth, "admin-proxy recursion budget");
}

std::optional<DataSource> make_source(const CommonOpts& o, std::string& err) {
    if (!o.fixtures.empty()) {
        DataSource s = DataSource::fixture(o.fixtures);
        if (!o.cache.empty())
            s.cache_dir = o.cache;
        return s;
    }
    std::string url = o.rpc_url;
    if (url.empty()) {
        if (const char* env = std::getenv("ETH_RPC_URL"))
            url = env;
    }
    if (!url.empty()) {
        DataSource s = DataSource::live(std::move(url));
        if (!o.cache.empty())
            s.cache_dir = o.cache;
        s.max_in_flight = std::max(o.workers, 1);
        return s;
    }
    err = "no data source: pass --fixtures DIR or --rpc-url URL (or set ETH_RPC_URL)";
    return std::nullopt;
}

ScanOptions make_scan_options(const CommonOpts& o) {
    ScanOptions opts;
    opts.workers = std::max(o.workers, 1);
    opts.fingerprints_path = o.fingerprints;
    opts.interp.step_budget = o.step_budget;
    opts.admin_depth = o.admin_depth;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"upscan: find upgradeable proxy contracts, resolve their admins, and grade "
                 "uups implementations"};
    app.set_version_flag("--version", std::string("upscan ") + kVersion);
    app.require_subcommand(1);

    CommonOpts o;
    uint64_t from_block = 0;
    uint64_t to_block = 0;
    uint64_t at_block = 0;
    std::string address_arg;
    std::string implementation_arg;
    std::string validate_dir;

    auto* scan_cmd = app.add_subcommand("scan", "scan a block range, emit verdicts and a census");
    add_source_flags(scan_cmd, o);
    scan_cmd->add_option("--from-block", from_block, "first block (inclusive)");
    scan_cmd->add_option("--to-block", to_block, "last block (inclusive)");
    scan_cmd->add_option("--workers", o.workers, "parallel workers")->check(CLI::PositiveNumber);

    auto* cls_cmd = app.add_subcommand("classify", "classify one contract address");
    add_source_flags(cls_cmd, o);
    cls_cmd->add_option("address", address_arg, "contract address")->required();
    cls_cmd->add_option("--at-block", at_block, "state block (fixture manifest block if absent)");

    auto* adm_cmd = app.add_subcommand("admin", "resolve the admin of an upgradeable proxy");
    add_source_flags(adm_cmd, o);
    adm_cmd->add_option("address", address_arg, "proxy address")->required();
    adm_cmd->add_option("--at-block", at_block, "state block (fixture manifest block if absent)");

    auto* uups_cmd = app.add_subcommand("audit-uups", "grade a uups implementation");
    add_source_flags(uups_cmd, o);
    uups_cmd->add_option("address", address_arg, "proxy address")->required();
    uups_cmd->add_option("--implementation", implementation_arg,
                         "implementation address (derived from the proxy if absent)");
    uups_cmd->add_option("--at-block", at_block, "state block (fixture manifest block if absent)");

    auto* val_cmd = app.add_subcommand("fixtures-validate", "check a fixture directory");
    val_cmd->add_option("dir", validate_dir, "fixture directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*val_cmd) {
            const auto problems = validate_fixture_dir(validate_dir);
            for (const auto& p : problems)
                std::cout << p << "\n";
            if (problems.empty()) {
                std::cout << "ok\n";
                return kOk;
            }
            return kSource;
        }

        std::string err;
        auto source = make_source(o, err);
        if (!source) {
            std::cerr << "error: " << err << "\n";
            return kUsage;
        }
        const bool fixture_mode = source->mode == DataSource::Mode::fixture;
        Gateway gw(std::move(*source));
        const OutputFormat fmt = *parse_output_format(o.output);
        ScanOptions sopts = make_scan_options(o);

        if (*scan_cmd) {
            if (scan_cmd->count("--from-block") && scan_cmd->count("--to-block")) {
                sopts.from_block = from_block;
                sopts.to_block = to_block;
            } else if (scan_cmd->count("--from-block") || scan_cmd->count("--to-block")) {
                std::cerr << "error: --from-block and --to-block go together\n";
                return kUsage;
            } else if (fixture_mode) {
                const auto blocks = gw.fixture_trace_blocks();
                if (blocks.empty()) {
                    std::cerr << "error: fixture has no trace documents\n";
                    return kSource;
                }
                sopts.from_block = blocks.front();
                sopts.to_block = blocks.back();
            } else {
                std::cerr << "error: live scans need --from-block and --to-block\n";
                return kUsage;
            }
            if (sopts.from_block > sopts.to_block) {
                std::cerr << "error: --from-block must not exceed --to-block\n";
                return kUsage;
            }
            const ScanResult result = run_scan(gw, sopts);
            std::cout << render_scan(result, fmt);
            return result.failed_blocks.empty() ? kOk : kPartial;
        }

        // single-subject commands
        const auto addr = parse_address(address_arg);
        if (!addr) {
            std::cerr << "error: not a 20-byte hex address: " << address_arg << "\n";
            return kUsage;
        }
        CLI::App* active = *cls_cmd ? cls_cmd : (*adm_cmd ? adm_cmd : uups_cmd);
        uint64_t at = at_block;
        if (active->count("--at-block") == 0) {
            if (auto pin = gw.fixture_block()) {
                at = *pin;
            } else {
                std::cerr << "error: live mode needs --at-block\n";
                return kUsage;
            }
        }

        const ProxyRecord rec = analyze_address(gw, *addr, at, sopts);

        if (*cls_cmd) {
            std::cout << render_record(rec, fmt);
            return kOk;
        }
        if (*adm_cmd) {
            if (rec.admin) {
                std::cout << render_admin(*rec.admin, fmt);
                return kOk;
            }
            if (rec.verdict.cls == ProxyClass::forwarder) {
                std::cerr << "error: " << hex::encode(*addr) << " classified as forwarder ("
                          << to_string(rec.verdict.reason) << "); nothing to administer\n";
                return kUsage;
            }
            for (const auto& e : rec.errors)
                std::cerr << "error: " << e << "\n";
            return kSource;
        }
        if (*uups_cmd) {
            if (rec.uups && implementation_arg.empty()) {
                std::cout << render_uups(*rec.uups, fmt);
                return kOk;
            }
            Address impl;
            if (!implementation_arg.empty()) {
                const auto parsed = parse_address(implementation_arg);
                if (!parsed) {
                    std::cerr << "error: not a 20-byte hex address: " << implementation_arg
                              << "\n";
                    return kUsage;
                }
                impl = *parsed;
            } else if (rec.verdict.cls == ProxyClass::uups && rec.verdict.logic) {
                impl = *rec.verdict.logic;
            } else {
                std::cerr << "error: " << hex::encode(*addr) << " classified as "
                          << to_string(rec.verdict.cls)
                          << ", not uups; pass --implementation to audit anyway\n";
                return kUsage;
            }
            AuditOptions uopts;
            uopts.interp = sopts.interp;
            const UupsFindings findings =
                audit_uups(*addr, impl, gw.storage_lookup(at), gw.code_lookup(at), uopts);
            std::cout << render_uups(findings, fmt);
            return kOk;
        }
        return kUsage;
    } catch (const TraceUnsupported& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSource;
    }
}
