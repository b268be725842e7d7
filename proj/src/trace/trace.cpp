// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/trace/trace.hpp>

#include <nlohmann/json.hpp>

#include <map>

namespace upscan {
namespace {

using json = nlohmann::json;

[[noreturn]] void malformed(const std::string& what, size_t offset = 0) {
    throw MalformedTrace(what, offset);
}

Address require_address(const json& obj, const char* field, const std::string& where) {
    if (!obj.contains(field) || !obj[field].is_string())
        malformed(where + ": missing address field '" + field + "'");
    auto a = parse_address(obj[field].get<std::string>());
    if (!a)
        malformed(where + ": bad address in '" + field + "'");
    return *a;
}

Bytes require_hex(const json& obj, const char* field, const std::string& where) {
    if (!obj.contains(field) || !obj[field].is_string())
        malformed(where + ": missing hex field '" + field + "'");
    auto b = hex::decode(obj[field].get<std::string>());
    if (!b)
        malformed(where + ": bad hex in '" + field + "'");
    return *b;
}

TraceAction::Kind call_kind(const std::string& call_type) {
    if (call_type == "call")
        return TraceAction::Kind::call;
    if (call_type == "delegatecall")
        return TraceAction::Kind::delegatecall;
    if (call_type == "staticcall")
        return TraceAction::Kind::staticcall;
    if (call_type == "callcode")
        return TraceAction::Kind::callcode;
    return TraceAction::Kind::other;
}

}  // namespace

std::vector<TraceAction> parse_trace(std::string_view document, uint64_t block) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw MalformedTrace(e.what(), e.byte);
    }
    if (!doc.is_array())
        malformed("trace document root must be an array of transaction results");

    std::vector<TraceAction> out;
    size_t tx_index = 0;
    for (const auto& tx : doc) {
        const std::string where = "tx[" + std::to_string(tx_index) + "]";
        if (!tx.is_object() || !tx.contains("trace") || !tx["trace"].is_array())
            malformed(where + ": missing trace array");
        if (!tx.contains("transactionHash") || !tx["transactionHash"].is_string())
            malformed(where + ": missing transactionHash");
        auto txh = hex::decode_fixed<32>(tx["transactionHash"].get<std::string>());
        if (!txh)
            malformed(where + ": bad transactionHash");

        for (const auto& frame : tx["trace"]) {
            if (!frame.is_object() || !frame.contains("action") || !frame["action"].is_object())
                malformed(where + ": frame without action");
            const json& action = frame["action"];
            const std::string type = frame.value("type", std::string{});

            TraceAction ta;
            ta.tx_hash = *txh;
            ta.block = block;
            ta.kind_verbatim = type;

            if (frame.contains("traceAddress")) {
                if (!frame["traceAddress"].is_array())
                    malformed(where + ": traceAddress must be an array");
                for (const auto& e : frame["traceAddress"]) {
                    if (!e.is_number_unsigned())
                        malformed(where + ": traceAddress entries must be unsigned");
                    ta.trace_path.push_back(e.get<uint32_t>());
                }
            }

            if (type == "call") {
                const std::string ct = action.value("callType", std::string{"call"});
                ta.kind = call_kind(ct);
                if (ta.kind == TraceAction::Kind::other)
                    ta.kind_verbatim = ct;
                ta.from = require_address(action, "from", where);
                ta.to = require_address(action, "to", where);
                ta.input = require_hex(action, "input", where);
            } else if (type == "create") {
                ta.kind = action.value("creationMethod", std::string{}) == "create2"
                              ? TraceAction::Kind::create2
                              : TraceAction::Kind::create;
                ta.from = require_address(action, "from", where);
                if (frame.contains("result") && frame["result"].is_object() &&
                    frame["result"].contains("address") && frame["result"]["address"].is_string()) {
                    if (auto created = parse_address(frame["result"]["address"].get<std::string>()))
                        ta.to = *created;
                }
            } else if (type == "suicide") {
                ta.kind = TraceAction::Kind::selfdestruct;
                ta.from = require_address(action, "address", where);
                if (action.contains("refundAddress") && action["refundAddress"].is_string()) {
                    if (auto refund = parse_address(action["refundAddress"].get<std::string>()))
                        ta.to = *refund;
                }
            } else {
                ta.kind = TraceAction::Kind::other;
            }
            out.push_back(std::move(ta));
        }
        ++tx_index;
    }
    return out;
}

std::vector<ProxyEvidence> detect_proxy_calls(std::span<const TraceAction> actions) {
    // Parent lookup is per transaction: a path never pairs across tx hashes.
    std::map<std::pair<Word, std::vector<uint32_t>>, const TraceAction*> by_path;
    for (const auto& a : actions)
        by_path[{a.tx_hash, a.trace_path}] = &a;

    std::vector<ProxyEvidence> out;
    for (const auto& child : actions) {
        if (child.kind != TraceAction::Kind::delegatecall)
            continue;
        if (child.input.empty())
            continue;  // a bare value transfer is never forwarding evidence
        if (child.trace_path.empty())
            continue;  // a top-level frame has no parent
        std::vector<uint32_t> parent_path(child.trace_path.begin(), child.trace_path.end() - 1);
        auto it = by_path.find({child.tx_hash, parent_path});
        if (it == by_path.end())
            continue;
        const TraceAction& parent = *it->second;
        if (!(child.from == parent.to))
            continue;  // the delegatecall must run as the parent's callee
        if (parent.input != child.input)
            continue;
        if (parent.to == child.to)
            continue;  // self-delegation is not proxy evidence

        ProxyEvidence ev;
        ev.proxy = parent.to;
        ev.target = child.to;
        ev.tx_hash = child.tx_hash;
        ev.block = child.block;
        if (child.input.size() >= 4) {
            Selector s;
            std::copy(child.input.begin(), child.input.begin() + 4, s.bytes.begin());
            ev.selector = s;
        }
        out.push_back(ev);
    }
    return out;
}

}  // namespace upscan
