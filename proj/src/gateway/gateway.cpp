// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/gateway/gateway.hpp>
#include <upscan/trace/trace.hpp>

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace upscan {
namespace {

std::string block_hex(uint64_t block) {
    std::ostringstream os;
    os << "0x" << std::hex << block;
    return os.str();
}

std::optional<std::string> read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct FixtureAccount {
    Address address;
    Bytes code;
    std::map<Word, Word> storage;
    std::optional<bool> created_via_create2;
};

// Splits http(s)://host[:port][/path] for the http client: base for the
// connection, path for the request.
struct Endpoint {
    std::string base;
    std::string path = "/";
};

Endpoint split_endpoint(const std::string& url) {
    Endpoint ep;
    auto scheme = url.find("://");
    size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    auto slash = url.find('/', host_start);
    if (slash == std::string::npos) {
        ep.base = url;
    } else {
        ep.base = url.substr(0, slash);
        ep.path = url.substr(slash);
    }
    return ep;
}

}  // namespace

struct Gateway::Impl {
    DataSource src;

    // live request slots
    std::mutex slot_mutex;
    std::condition_variable slot_cv;
    int in_flight = 0;
    std::atomic<uint64_t> next_id{1};

    // cache writers
    std::mutex cache_mutex;
    std::atomic<uint64_t> temp_seq{0};

    // parsed fixture accounts
    std::mutex account_mutex;
    std::map<Address, FixtureAccount> accounts;
    std::optional<uint64_t> manifest_block;

    explicit Impl(DataSource s) : src(std::move(s)) {
        if (src.mode == DataSource::Mode::fixture)
            load_manifest();
    }

    void load_manifest() {
        const fs::path p = fs::path(src.fixture_dir) / "manifest.json";
        auto text = read_file(p);
        if (!text)
            throw SourceUnavailable("fixture manifest missing: " + p.string());
        try {
            auto doc = nlohmann::json::parse(*text);
            manifest_block = doc.at("block").get<uint64_t>();
        } catch (const nlohmann::json::exception& e) {
            throw SourceUnavailable("fixture manifest unreadable: " + p.string() + ": " +
                                    e.what());
        }
    }

    struct Slot {
        Impl& impl;
        explicit Slot(Impl& i) : impl(i) {
            std::unique_lock lock(impl.slot_mutex);
            impl.slot_cv.wait(lock, [&] { return impl.in_flight < impl.src.max_in_flight; });
            ++impl.in_flight;
        }
        ~Slot() {
            {
                std::lock_guard lock(impl.slot_mutex);
                --impl.in_flight;
            }
            impl.slot_cv.notify_one();
        }
    };

    // One JSON-RPC exchange. Throws TraceUnsupported on a method-not-found
    // answer for trace methods; anything else failing is retryable.
    nlohmann::json rpc_once(const std::string& method, const nlohmann::json& params) {
        const Endpoint ep = split_endpoint(src.endpoint);
        nlohmann::json req{{"jsonrpc", "2.0"},
                           {"id", next_id.fetch_add(1)},
                           {"method", method},
                           {"params", params}};
        Slot slot(*this);
        httplib::Client cli(ep.base);
        cli.set_read_timeout(30, 0);
        auto res = cli.Post(ep.path, req.dump(), "application/json");
        if (!res)
            throw SourceUnavailable("no response from " + src.endpoint);
        if (res->status != 200)
            throw SourceUnavailable("http status " + std::to_string(res->status) + " from " +
                                    src.endpoint);
        auto doc = nlohmann::json::parse(res->body);  // json::exception is retryable
        if (auto err = doc.find("error"); err != doc.end() && !err->is_null()) {
            const int code = err->value("code", 0);
            const std::string msg = err->value("message", "");
            if (code == -32601 && method.rfind("trace_", 0) == 0)
                throw TraceUnsupported(
                    "endpoint does not implement " + method +
                    "; point --rpc-url at a trace-capable archive node or rerun with --fixtures");
            throw SourceUnavailable("rpc error " + std::to_string(code) + ": " + msg);
        }
        auto result = doc.find("result");
        if (result == doc.end())
            throw SourceUnavailable("rpc answer without result");
        return *result;
    }

    nlohmann::json rpc(const std::string& method, const nlohmann::json& params) {
        std::string last = "no attempts";
        for (int attempt = 0; attempt < src.attempts; ++attempt) {
            if (attempt > 0)
                std::this_thread::sleep_for(src.backoff_base * (1 << (attempt - 1)));
            try {
                return rpc_once(method, params);
            } catch (const TraceUnsupported&) {
                throw;  // definitive, retrying cannot change it
            } catch (const std::exception& e) {
                last = e.what();
            }
        }
        throw SourceUnavailable("rpc " + method + " failed after " +
                                std::to_string(src.attempts) + " attempts: " + last);
    }

    // cache files live under <cache>/<block>/, named by method and key
    std::optional<fs::path> cache_path(uint64_t block, const std::string& name) {
        if (!src.cache_dir)
            return std::nullopt;
        return fs::path(*src.cache_dir) / std::to_string(block) / name;
    }

    std::optional<std::string> cache_get(const std::optional<fs::path>& p) {
        if (!p)
            return std::nullopt;
        return read_file(*p);
    }

    void cache_put(const std::optional<fs::path>& p, const std::string& content) {
        if (!p)
            return;
        std::lock_guard lock(cache_mutex);
        std::error_code ec;
        fs::create_directories(p->parent_path(), ec);
        if (ec)
            return;  // cache is best-effort, reads already succeeded
        fs::path tmp = *p;
        tmp += ".tmp" + std::to_string(temp_seq.fetch_add(1));
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                return;
            out << content;
            if (!out)
                return;
        }
        fs::rename(tmp, *p, ec);  // atomic replace keeps entries uncorrupted
        if (ec)
            fs::remove(tmp, ec);
    }

    const FixtureAccount* fixture_account(const Address& account) {
        {
            std::lock_guard lock(account_mutex);
            if (auto it = accounts.find(account); it != accounts.end())
                return &it->second;
        }
        const fs::path p =
            fs::path(src.fixture_dir) / "accounts" / (hex::encode(account) + ".json");
        auto text = read_file(p);
        if (!text)
            return nullptr;
        FixtureAccount acct;
        try {
            auto doc = nlohmann::json::parse(*text);
            auto addr = parse_address(doc.at("address").get<std::string>());
            if (!addr || *addr != account)
                throw SourceUnavailable("fixture account address mismatch in " + p.string());
            acct.address = *addr;
            auto code = hex::decode(doc.at("code").get<std::string>());
            if (!code)
                throw SourceUnavailable("fixture account code not hex in " + p.string());
            acct.code = *code;
            if (auto st = doc.find("storage"); st != doc.end()) {
                for (auto it = st->begin(); it != st->end(); ++it) {
                    auto slot = parse_word(it.key());
                    auto value = parse_word(it.value().get<std::string>());
                    if (!slot || !value)
                        throw SourceUnavailable("fixture storage entry not hex in " + p.string());
                    acct.storage[*slot] = *value;
                }
            }
            if (auto c2 = doc.find("created_via_create2"); c2 != doc.end() && c2->is_boolean())
                acct.created_via_create2 = c2->get<bool>();
        } catch (const nlohmann::json::exception& e) {
            throw SourceUnavailable("fixture account unreadable: " + p.string() + ": " + e.what());
        }
        std::lock_guard lock(account_mutex);
        return &accounts.emplace(account, std::move(acct)).first->second;
    }
};

Gateway::Gateway(DataSource source) : impl_(std::make_unique<Impl>(std::move(source))) {}
Gateway::~Gateway() = default;

Bytes Gateway::get_code(const Address& account, uint64_t block) {
    if (impl_->src.mode == DataSource::Mode::fixture) {
        const FixtureAccount* acct = impl_->fixture_account(account);
        if (!acct)
            throw NotInFixture(account);
        return acct->code;
    }
    const auto cpath = impl_->cache_path(block, "code-" + hex::encode(account));
    if (auto hit = impl_->cache_get(cpath)) {
        if (auto bytes = hex::decode(*hit))
            return *bytes;
    }
    const auto result = impl_->rpc("eth_getCode", {hex::encode(account), block_hex(block)});
    if (!result.is_string())
        throw SourceUnavailable("eth_getCode answered with a non-string");
    auto bytes = hex::decode(result.get<std::string>());
    if (!bytes)
        throw SourceUnavailable("eth_getCode answered with invalid hex");
    impl_->cache_put(cpath, hex::encode(*bytes));
    return *bytes;
}

Word Gateway::get_storage(const Address& account, const Word& slot, uint64_t block) {
    if (impl_->src.mode == DataSource::Mode::fixture) {
        const FixtureAccount* acct = impl_->fixture_account(account);
        if (!acct)
            throw NotInFixture(account);
        auto it = acct->storage.find(slot);
        return it == acct->storage.end() ? Word{} : it->second;
    }
    const auto cpath = impl_->cache_path(
        block, "storage-" + hex::encode(account) + "-" + hex::encode(slot));
    if (auto hit = impl_->cache_get(cpath)) {
        if (auto w = parse_word(*hit))
            return *w;
    }
    const auto result = impl_->rpc("eth_getStorageAt",
                                   {hex::encode(account), hex::encode(slot), block_hex(block)});
    if (!result.is_string())
        throw SourceUnavailable("eth_getStorageAt answered with a non-string");
    auto w = parse_word(result.get<std::string>());
    if (!w)
        throw SourceUnavailable("eth_getStorageAt answered with invalid hex");
    impl_->cache_put(cpath, hex::encode(*w));
    return *w;
}

std::string Gateway::replay_block(uint64_t block) {
    if (impl_->src.mode == DataSource::Mode::fixture) {
        const fs::path p =
            fs::path(impl_->src.fixture_dir) / "traces" / (std::to_string(block) + ".json");
        auto text = read_file(p);
        if (!text)
            throw SourceUnavailable("no trace document for block " + std::to_string(block) +
                                    " at " + p.string());
        return *text;
    }
    const auto cpath = impl_->cache_path(block, "trace.json");
    if (auto hit = impl_->cache_get(cpath))
        return *hit;
    const auto result = impl_->rpc("trace_replayBlockTransactions",
                                   {block_hex(block), nlohmann::json::array({"trace"})});
    std::string document = result.dump();
    impl_->cache_put(cpath, document);
    return document;
}

std::optional<bool> Gateway::created_via_create2(const Address& account) {
    if (impl_->src.mode != DataSource::Mode::fixture)
        return std::nullopt;
    const FixtureAccount* acct = impl_->fixture_account(account);
    if (!acct)
        return std::nullopt;
    return acct->created_via_create2;
}

std::optional<uint64_t> Gateway::fixture_block() const {
    return impl_->manifest_block;
}

DataSource::Mode Gateway::mode() const {
    return impl_->src.mode;
}

std::vector<uint64_t> Gateway::fixture_trace_blocks() const {
    std::vector<uint64_t> blocks;
    if (impl_->src.mode != DataSource::Mode::fixture)
        return blocks;
    const fs::path dir = fs::path(impl_->src.fixture_dir) / "traces";
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file())
            continue;
        const std::string name = entry.path().filename().string();
        if (name.size() <= 5 || name.substr(name.size() - 5) != ".json")
            continue;
        uint64_t n = 0;
        bool numeric = true;
        for (char c : name.substr(0, name.size() - 5)) {
            if (c < '0' || c > '9') {
                numeric = false;
                break;
            }
            n = n * 10 + static_cast<uint64_t>(c - '0');
        }
        if (numeric)
            blocks.push_back(n);
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

CodeLookup Gateway::code_lookup(uint64_t block) {
    return [this, block](const Address& account) -> std::optional<Bytes> {
        try {
            return get_code(account, block);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
}

StorageLookup Gateway::storage_lookup(uint64_t block) {
    return [this, block](const Address& account, const Word& slot) -> std::optional<Word> {
        try {
            return get_storage(account, slot, block);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
}

std::vector<std::string> validate_fixture_dir(const std::string& dir) {
    std::vector<std::string> problems;
    const fs::path root(dir);

    const fs::path manifest = root / "manifest.json";
    auto mtext = read_file(manifest);
    if (!mtext) {
        problems.push_back("missing manifest.json at " + manifest.string());
    } else {
        try {
            auto doc = nlohmann::json::parse(*mtext);
            doc.at("block").get<uint64_t>();
        } catch (const nlohmann::json::exception& e) {
            problems.push_back("manifest.json unreadable: " + std::string(e.what()));
        }
    }

    const fs::path accounts = root / "accounts";
    std::error_code ec;
    size_t account_count = 0;
    for (const auto& entry : fs::directory_iterator(accounts, ec)) {
        if (!entry.is_regular_file())
            continue;
        ++account_count;
        const std::string name = entry.path().filename().string();
        auto text = read_file(entry.path());
        if (!text) {
            problems.push_back("unreadable account file " + name);
            continue;
        }
        try {
            auto doc = nlohmann::json::parse(*text);
            const std::string addr_field = doc.at("address").get<std::string>();
            auto addr = parse_address(addr_field);
            if (!addr) {
                problems.push_back(name + ": address field is not a 20-byte hex string");
            } else if (name != hex::encode(*addr) + ".json") {
                problems.push_back(name + ": filename does not match address " + addr_field);
            }
            if (!hex::decode(doc.at("code").get<std::string>()))
                problems.push_back(name + ": code is not hex");
            if (auto st = doc.find("storage"); st != doc.end()) {
                for (auto it = st->begin(); it != st->end(); ++it) {
                    if (!parse_word(it.key()) ||
                        !it.value().is_string() ||
                        !parse_word(it.value().get<std::string>()))
                        problems.push_back(name + ": bad storage entry at key " + it.key());
                }
            }
        } catch (const nlohmann::json::exception& e) {
            problems.push_back(name + ": " + e.what());
        }
    }
    if (ec)
        problems.push_back("missing accounts directory at " + accounts.string());
    else if (account_count == 0)
        problems.push_back("accounts directory is empty");

    const fs::path traces = root / "traces";
    size_t trace_count = 0;
    ec.clear();
    for (const auto& entry : fs::directory_iterator(traces, ec)) {
        if (!entry.is_regular_file())
            continue;
        ++trace_count;
        const std::string name = entry.path().filename().string();
        auto text = read_file(entry.path());
        if (!text) {
            problems.push_back("unreadable trace file " + name);
            continue;
        }
        try {
            parse_trace(*text, 0);
        } catch (const std::exception& e) {
            problems.push_back(name + ": " + e.what());
        }
    }
    if (ec)
        problems.push_back("missing traces directory at " + traces.string());
    else if (trace_count == 0)
        problems.push_back("traces directory is empty");

    return problems;
}

}  // namespace upscan
