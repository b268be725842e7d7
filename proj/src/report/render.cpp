// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/report/render.hpp>
#include <upscan/version.hpp>

#include <json.hpp>

#include <sstream>

namespace upscan {
namespace {

using nlohmann::json;

const char* kind_name(TargetResolution::Kind k) {
    switch (k) {
        case TargetResolution::Kind::hardcoded: return "hardcoded";
        case TargetResolution::Kind::from_slot: return "from-slot";
        case TargetResolution::Kind::from_external_call: return "from-external-call";
        case TargetResolution::Kind::unresolved: return "unresolved";
    }
    return "unresolved";
}

json slot_expr_json(const SlotExpr& s) {
    json j;
    switch (s.kind) {
        case SlotExpr::Kind::concrete:
            j["kind"] = "concrete";
            j["word"] = hex::encode(s.word);
            break;
        case SlotExpr::Kind::keccak_of_constant:
            j["kind"] = "keccak-of-constant";
            j["word"] = hex::encode(s.word);
            j["preimage"] = hex::encode(BytesView{s.preimage});
            break;
        case SlotExpr::Kind::unknown:
            j["kind"] = "unknown";
            break;
    }
    return j;
}

json guard_json(const GuardCandidate& g) {
    json j;
    if (g.kind == GuardCandidate::Kind::constant_address) {
        j["kind"] = "constant-address";
        j["address"] = hex::encode(g.address);
    } else {
        j["kind"] = "storage-slot";
        j["slot"] = slot_expr_json(g.slot);
    }
    return j;
}

json resolution_json(const TargetResolution& r) {
    json j;
    j["kind"] = kind_name(r.kind);
    j["offset"] = r.offset;
    switch (r.kind) {
        case TargetResolution::Kind::hardcoded:
            j["address"] = hex::encode(r.address);
            j["push_width"] = r.push_width;
            break;
        case TargetResolution::Kind::from_slot:
            j["slot"] = slot_expr_json(r.slot);
            break;
        case TargetResolution::Kind::from_external_call: {
            json callee;
            switch (r.callee.kind) {
                case ExternalSource::Kind::hardcoded:
                    callee["kind"] = "hardcoded";
                    callee["address"] = hex::encode(r.callee.address);
                    break;
                case ExternalSource::Kind::from_slot:
                    callee["kind"] = "from-slot";
                    callee["slot"] = slot_expr_json(r.callee.slot);
                    break;
                case ExternalSource::Kind::unresolved:
                    callee["kind"] = "unresolved";
                    break;
            }
            j["callee"] = callee;
            if (r.getter)
                j["getter"] = hex::encode(*r.getter);
            break;
        }
        case TargetResolution::Kind::unresolved:
            if (!r.reason.empty())
                j["reason"] = r.reason;
            break;
    }
    return j;
}

json assignment_json(const AssignmentFinding& f) {
    json j;
    j["slot"] = slot_expr_json(f.slot);
    if (f.writer_selector)
        j["selector"] = hex::encode(*f.writer_selector);
    j["value_taint"] = f.value_taint;
    if (f.guard)
        j["guard"] = guard_json(*f.guard);
    j["address_guard"] = f.address_guard;
    j["offsets"] = f.offsets;
    return j;
}

json admin_json(const AdminReport& a) {
    json j;
    j["proxy"] = hex::encode(a.proxy);
    json loc;
    loc["kind"] = to_string(a.locator.kind);
    switch (a.locator.kind) {
        case AdminLocator::Kind::eip1967_admin_slot:
        case AdminLocator::Kind::discovered_slot:
            loc["slot"] = hex::encode(a.locator.slot);
            break;
        case AdminLocator::Kind::arbitrary_keccak_slot:
            loc["slot"] = hex::encode(a.locator.slot);
            loc["preimage"] = hex::encode(BytesView{a.locator.preimage});
            break;
        case AdminLocator::Kind::hardcoded_admin:
            loc["address"] = hex::encode(a.locator.address);
            break;
        case AdminLocator::Kind::governance_unknown:
            break;
    }
    j["locator"] = loc;
    j["admin"] = hex::encode(a.admin);
    j["admin_type"] = to_string(a.admin_type);
    if (!a.multisig_label.empty())
        j["multisig_label"] = a.multisig_label;
    json chain = json::array();
    for (const auto& hop : a.via_admin_proxy)
        chain.push_back(hex::encode(hop));
    j["via_admin_proxy"] = chain;
    j["conflicting_locators"] = a.conflicting_locators;
    j["recursion_exhausted"] = a.recursion_exhausted;
    return j;
}

json uups_json(const UupsFindings& u) {
    json j;
    j["implementation"] = hex::encode(u.implementation);
    j["initializer_slot"] = hex::encode(u.initializer_slot);
    j["initialized"] = u.initialized;
    json slots = json::array();
    for (const auto& s : u.owner_slots)
        slots.push_back(hex::encode(s));
    j["owner_slots"] = slots;
    if (u.init_selector)
        j["init_selector"] = hex::encode(*u.init_selector);
    if (u.owner_entry)
        j["owner_entry"] = assignment_json(*u.owner_entry);
    j["direct_call_guard"] = u.direct_call_guard;
    j["selfdestruct_present"] = u.selfdestruct_present;
    if (u.selfdestruct_offset)
        j["selfdestruct_offset"] = *u.selfdestruct_offset;
    if (u.mutable_delegatecall) {
        json m;
        if (u.mutable_delegatecall->selector)
            m["selector"] = hex::encode(*u.mutable_delegatecall->selector);
        m["resolution"] = resolution_json(u.mutable_delegatecall->resolution);
        j["mutable_delegatecall"] = m;
    }
    j["analysis_truncated"] = u.analysis_truncated;
    j["verdict"] = to_string(u.verdict);
    return j;
}

json record_json(const ProxyRecord& r) {
    json j;
    j["proxy"] = hex::encode(r.evidence.proxy);
    j["block"] = r.evidence.block;
    if (!r.evidence.tx_hash.is_zero())
        j["tx"] = hex::encode(r.evidence.tx_hash);
    if (r.evidence.selector)
        j["selector"] = hex::encode(*r.evidence.selector);
    j["evidence_count"] = r.evidence_count;
    j["class"] = to_string(r.verdict.cls);
    if (r.verdict.cls == ProxyClass::forwarder)
        j["reason"] = to_string(r.verdict.reason);
    j["cluster"] = hex::encode(r.cluster);
    if (r.verdict.logic)
        j["logic"] = hex::encode(*r.verdict.logic);
    if (r.verdict.beacon)
        j["beacon"] = hex::encode(*r.verdict.beacon);
    j["resolution"] = resolution_json(r.verdict.resolution);
    j["flags"] = json{{"transparent", r.verdict.flags.transparent},
                      {"metamorphic", to_string(r.verdict.metamorphic)},
                      {"truncated", r.verdict.flags.truncated_analysis}};
    json assigns = json::array();
    for (const auto& f : r.verdict.assignments)
        assigns.push_back(assignment_json(f));
    j["assignments"] = assigns;
    if (r.admin)
        j["admin"] = admin_json(*r.admin);
    if (r.uups)
        j["uups_audit"] = uups_json(*r.uups);
    if (!r.errors.empty())
        j["errors"] = r.errors;
    return j;
}

json census_json(const CensusReport& c) {
    json j;
    j["evidence_total"] = c.evidence_total;
    j["proxies_total"] = c.proxies_total;
    j["systems_total"] = c.systems_total;
    j["classes"] = json{{"forwarder", c.classes.forwarder},
                        {"regular", c.classes.regular},
                        {"uups", c.classes.uups},
                        {"beacon", c.classes.beacon}};
    json rows = json::array();
    for (const auto& row : c.admin_rows)
        rows.push_back(json{{"admin_type", to_string(row.admin_type)},
                            {"locator", to_string(row.locator)},
                            {"count", row.count}});
    j["admin_rows"] = rows;
    j["uups_audit"] = json{{"exploitable", c.uups.exploitable},
                           {"takeover-only", c.uups.takeover_only},
                           {"not-vulnerable", c.uups.not_vulnerable},
                           {"inconclusive", c.uups.inconclusive}};
    j["failed_block_count"] = c.failed_block_count;
    return j;
}

json provenance_json(const CensusReport& c) {
    return json{{"from_block", c.from_block},
                {"to_block", c.to_block},
                {"source_mode", c.source_mode},
                {"tool", "upscan"},
                {"version", kVersion}};
}

// CSV column order is part of the report contract; keep in lockstep with
// the schema document.
constexpr const char* kCsvHeader =
    "proxy,class,reason,cluster,logic,beacon,transparent,metamorphic,truncated,"
    "admin_type,admin,admin_locator,uups_verdict,block,evidence_count";

std::string csv_row(const ProxyRecord& r) {
    std::ostringstream os;
    os << hex::encode(r.evidence.proxy) << ',' << to_string(r.verdict.cls) << ','
       << (r.verdict.cls == ProxyClass::forwarder ? to_string(r.verdict.reason) : "") << ','
       << hex::encode(r.cluster) << ','
       << (r.verdict.logic ? hex::encode(*r.verdict.logic) : "") << ','
       << (r.verdict.beacon ? hex::encode(*r.verdict.beacon) : "") << ','
       << (r.verdict.flags.transparent ? "true" : "false") << ','
       << to_string(r.verdict.metamorphic) << ','
       << (r.verdict.flags.truncated_analysis ? "true" : "false") << ','
       << (r.admin ? to_string(r.admin->admin_type) : "") << ','
       << (r.admin ? hex::encode(r.admin->admin) : "") << ','
       << (r.admin ? to_string(r.admin->locator.kind) : "") << ','
       << (r.uups ? to_string(r.uups->verdict) : "") << ',' << r.evidence.block << ','
       << r.evidence_count;
    return os.str();
}

std::string human_record_line(const ProxyRecord& r) {
    std::ostringstream os;
    os << hex::encode(r.evidence.proxy) << "  " << to_string(r.verdict.cls);
    if (r.verdict.cls == ProxyClass::forwarder)
        os << " (" << to_string(r.verdict.reason) << ")";
    if (r.verdict.logic)
        os << "  logic " << hex::encode(*r.verdict.logic);
    if (r.verdict.beacon)
        os << "  beacon " << hex::encode(*r.verdict.beacon);
    if (r.admin)
        os << "  admin " << hex::encode(r.admin->admin) << " [" << to_string(r.admin->admin_type)
           << " via " << to_string(r.admin->locator.kind) << "]";
    if (r.uups)
        os << "  uups " << to_string(r.uups->verdict);
    if (r.verdict.flags.transparent)
        os << "  transparent";
    if (r.verdict.metamorphic == MetamorphicRisk::at_risk)
        os << "  metamorphic-risk";
    if (r.verdict.flags.truncated_analysis)
        os << "  truncated";
    return os.str();
}

std::string human_scan(const ScanResult& result) {
    std::ostringstream os;
    const CensusReport& c = result.census;
    os << "scan of blocks " << c.from_block << ".." << c.to_block << " (" << c.source_mode
       << " source)\n";
    os << "  evidence pairs " << c.evidence_total << ", unique proxies " << c.proxies_total
       << ", systems " << c.systems_total << "\n";
    os << "  classes: forwarder " << c.classes.forwarder << ", regular " << c.classes.regular
       << ", uups " << c.classes.uups << ", beacon " << c.classes.beacon << "\n";
    if (!c.admin_rows.empty()) {
        os << "  admins:\n";
        for (const auto& row : c.admin_rows)
            os << "    " << to_string(row.admin_type) << " / " << to_string(row.locator) << ": "
               << row.count << "\n";
    }
    os << "  uups audit: exploitable " << c.uups.exploitable << ", takeover-only "
       << c.uups.takeover_only << ", not-vulnerable " << c.uups.not_vulnerable
       << ", inconclusive " << c.uups.inconclusive << "\n";
    if (!result.failed_blocks.empty()) {
        os << "  failed blocks:\n";
        for (const auto& f : result.failed_blocks)
            os << "    " << f.block << ": " << f.error << "\n";
    }
    if (!result.skipped.empty()) {
        os << "  skipped proxies:\n";
        for (const auto& s : result.skipped)
            os << "    " << hex::encode(s.proxy) << ": " << s.error << "\n";
    }
    os << "\n";
    for (const auto& r : result.records)
        os << human_record_line(r) << "\n";
    return os.str();
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view name) {
    if (name == "json")
        return OutputFormat::json;
    if (name == "csv")
        return OutputFormat::csv;
    if (name == "human")
        return OutputFormat::human;
    return std::nullopt;
}

std::string render_scan(const ScanResult& result, OutputFormat format) {
    switch (format) {
        case OutputFormat::json: {
            json j;
            j["schema"] = "upscan-report/1";
            j["provenance"] = provenance_json(result.census);
            j["census"] = census_json(result.census);
            json failed = json::array();
            for (const auto& f : result.failed_blocks)
                failed.push_back(json{{"block", f.block}, {"error", f.error}});
            j["failed_blocks"] = failed;
            json skipped = json::array();
            for (const auto& s : result.skipped)
                skipped.push_back(json{{"proxy", hex::encode(s.proxy)}, {"error", s.error}});
            j["skipped_proxies"] = skipped;
            json verdicts = json::array();
            for (const auto& r : result.records)
                verdicts.push_back(record_json(r));
            j["verdicts"] = verdicts;
            return j.dump(2) + "\n";
        }
        case OutputFormat::csv: {
            std::ostringstream os;
            os << kCsvHeader << "\n";
            for (const auto& r : result.records)
                os << csv_row(r) << "\n";
            return os.str();
        }
        case OutputFormat::human:
            return human_scan(result);
    }
    return {};
}

std::string render_record(const ProxyRecord& record, OutputFormat format) {
    switch (format) {
        case OutputFormat::json:
            return record_json(record).dump(2) + "\n";
        case OutputFormat::csv: {
            std::ostringstream os;
            os << kCsvHeader << "\n" << csv_row(record) << "\n";
            return os.str();
        }
        case OutputFormat::human:
            return human_record_line(record) + "\n";
    }
    return {};
}

std::string render_admin(const AdminReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::json:
            return admin_json(report).dump(2) + "\n";
        case OutputFormat::csv: {
            std::ostringstream os;
            os << "proxy,admin,admin_type,locator,via_admin_proxy,conflicting_locators,"
                  "recursion_exhausted\n";
            os << hex::encode(report.proxy) << ',' << hex::encode(report.admin) << ','
               << to_string(report.admin_type) << ',' << to_string(report.locator.kind) << ',';
            for (size_t i = 0; i < report.via_admin_proxy.size(); ++i)
                os << (i ? ";" : "") << hex::encode(report.via_admin_proxy[i]);
            os << ',' << (report.conflicting_locators ? "true" : "false") << ','
               << (report.recursion_exhausted ? "true" : "false") << "\n";
            return os.str();
        }
        case OutputFormat::human: {
            std::ostringstream os;
            os << "proxy " << hex::encode(report.proxy) << "\n";
            os << "  admin " << hex::encode(report.admin) << " (" << to_string(report.admin_type);
            if (!report.multisig_label.empty())
                os << ": " << report.multisig_label;
            os << ")\n";
            os << "  located via " << to_string(report.locator.kind) << "\n";
            for (const auto& hop : report.via_admin_proxy)
                os << "  through admin proxy " << hex::encode(hop) << "\n";
            if (report.conflicting_locators)
                os << "  warning: admin slot and guard slot disagree\n";
            if (report.recursion_exhausted)
                os << "  warning: admin chain cut off by depth budget\n";
            return os.str();
        }
    }
    return {};
}

std::string render_uups(const UupsFindings& findings, OutputFormat format) {
    switch (format) {
        case OutputFormat::json:
            return uups_json(findings).dump(2) + "\n";
        case OutputFormat::csv: {
            std::ostringstream os;
            os << "implementation,initialized,init_selector,direct_call_guard,"
                  "selfdestruct_present,mutable_delegatecall,verdict\n";
            os << hex::encode(findings.implementation) << ','
               << (findings.initialized ? "true" : "false") << ','
               << (findings.init_selector ? hex::encode(*findings.init_selector) : "") << ','
               << (findings.direct_call_guard ? "true" : "false") << ','
               << (findings.selfdestruct_present ? "true" : "false") << ','
               << (findings.mutable_delegatecall ? "true" : "false") << ','
               << to_string(findings.verdict) << "\n";
            return os.str();
        }
        case OutputFormat::human: {
            std::ostringstream os;
            os << "implementation " << hex::encode(findings.implementation) << "\n";
            os << "  initialized: " << (findings.initialized ? "yes" : "no") << " (slot "
               << hex::encode(findings.initializer_slot) << ")\n";
            if (findings.init_selector)
                os << "  owner-setting entry: selector " << hex::encode(*findings.init_selector)
                   << (findings.owner_entry && !findings.owner_entry->guard ? " (unguarded)"
                                                                            : " (guarded)")
                   << "\n";
            os << "  direct-call guard: " << (findings.direct_call_guard ? "yes" : "no") << "\n";
            os << "  selfdestruct: " << (findings.selfdestruct_present ? "yes" : "no") << "\n";
            os << "  mutable delegatecall: " << (findings.mutable_delegatecall ? "yes" : "no")
               << "\n";
            os << "  verdict: " << to_string(findings.verdict) << "\n";
            return os.str();
        }
    }
    return {};
}

}  // namespace upscan
