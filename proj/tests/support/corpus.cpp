// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "corpus.hpp"

#include "evmasm.hpp"

#include <upscan/evm/keccak.hpp>
#include <upscan/evm/slots.hpp>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace upscan::test::corpus {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

Address tagged(uint8_t fill, uint8_t group, uint8_t index) {
    Address a;
    a.bytes.fill(fill);
    a.bytes[18] = group;
    a.bytes[19] = index;
    return a;
}

void check_range(int i, int lo, int hi, const char* what) {
    if (i < lo || i > hi)
        throw std::out_of_range(std::string(what) + " index out of range");
}

// selector in the high four bytes, ABI call layout
Word selector_word(const Selector& s) {
    Word w;
    std::copy(s.bytes.begin(), s.bytes.end(), w.bytes.begin());
    return w;
}

// --- shared assembly snippets -------------------------------------------

// selector = calldata[0..32) >> 224
void emit_dispatch_prologue(Asm& a) {
    a.push(0).op(Opcode::CALLDATALOAD);
    a.push(0xe0).op(Opcode::SHR);
}

// keeps the selector word on the stack for the next case
void emit_selector_case(Asm& a, uint32_t selector, const std::string& target) {
    a.op(Opcode::DUP1).push_selector(sel(selector)).op(Opcode::EQ).jumpi(target);
}

// require(caller == SLOAD(slot)); small slots use a narrow push
void emit_caller_slot_guard(Asm& a, const Word& slot, const std::string& ok) {
    a.op(Opcode::CALLER);
    if (slot.fits_uint64() && slot.to_uint_truncated() < 256)
        a.push(slot.to_uint_truncated());
    else
        a.push_word(slot);
    a.op(Opcode::SLOAD).op(Opcode::EQ).jumpi(ok);
    a.revert_empty();
    a.label(ok);
}

// require(caller == constant)
void emit_caller_constant_guard(Asm& a, const Address& admin, const std::string& ok) {
    a.op(Opcode::CALLER).push_addr(admin).op(Opcode::EQ).jumpi(ok);
    a.revert_empty();
    a.label(ok);
}

void emit_caller_guard(Asm& a, const GuardSpec& guard, const std::string& ok) {
    switch (guard.kind) {
        case GuardSpec::Kind::storage_slot: emit_caller_slot_guard(a, guard.slot, ok); break;
        case GuardSpec::Kind::constant_address: emit_caller_constant_guard(a, guard.address, ok); break;
        case GuardSpec::Kind::none: break;
    }
}

// copy calldata to memory 0, delegatecall SLOAD(slot), bubble the result
void emit_forward_delegate_sload(Asm& a, const Word& slot, const std::string& ok) {
    a.op(Opcode::CALLDATASIZE).push(0).push(0).op(Opcode::CALLDATACOPY);
    a.push(0).push(0);                       // rlen, roff
    a.op(Opcode::CALLDATASIZE).push(0);      // alen, aoff
    a.push_word(slot).op(Opcode::SLOAD);     // target
    a.op(Opcode::GAS).op(Opcode::DELEGATECALL);
    a.jumpi(ok);
    a.revert_empty();
    a.label(ok);
    a.op(Opcode::RETURNDATASIZE).push(0).push(0).op(Opcode::RETURNDATACOPY);
    a.op(Opcode::RETURNDATASIZE).push(0).op(Opcode::RETURN);
}

// SSTORE(slot, calldata[4..36))
void emit_store_arg(Asm& a, const Word& slot) {
    a.push(4).op(Opcode::CALLDATALOAD);
    if (slot.fits_uint64() && slot.to_uint_truncated() < 256)
        a.push(slot.to_uint_truncated());
    else
        a.push_word(slot);
    a.op(Opcode::SSTORE).stop();
}

// return SLOAD(slot) as a 32-byte word
void emit_return_sload(Asm& a, uint64_t slot) {
    a.push(slot).op(Opcode::SLOAD);
    a.push(0).op(Opcode::MSTORE);
    a.push(0x20).push(0).op(Opcode::RETURN);
}

std::string input_hex(uint32_t selector, const std::vector<Word>& args) {
    Bytes raw(sel(selector).bytes.begin(), sel(selector).bytes.end());
    for (const auto& w : args)
        raw.insert(raw.end(), w.bytes.begin(), w.bytes.end());
    return hex::encode(BytesView{raw});
}

std::string tx_hash(uint64_t block, int index) {
    return hex::encode(Word::from_uint(block * 1000 + static_cast<uint64_t>(index)));
}

json call_frame(const char* call_type, const Address& from, const Address& to,
                const std::string& input, const std::vector<int>& path, int subtraces) {
    return json{{"type", "call"},
                {"action", json{{"callType", call_type},
                                {"from", hex::encode(from)},
                                {"to", hex::encode(to)},
                                {"input", input},
                                {"gas", "0x2dc6c0"},
                                {"value", "0x0"}}},
                {"result", json{{"gasUsed", "0x9c40"}, {"output", "0x"}}},
                {"traceAddress", path},
                {"subtraces", subtraces}};
}

// One transaction: an EOA calls the proxy, the proxy delegates to its target.
json pair_tx(uint64_t block, int index, const Address& proxy, const Address& target,
             const std::string& input) {
    return json{{"transactionHash", tx_hash(block, index)},
                {"trace", json::array({
                    call_frame("call", trace_caller_address(), proxy, input, {}, 1),
                    call_frame("delegatecall", proxy, target, input, {0}, 0),
                })}};
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + p.string() + " for writing");
    out << text;
    if (!text.empty() && text.back() != '\n')
        out << '\n';
    if (!out)
        throw std::runtime_error("short write to " + p.string());
}

json account_json(const Account& acct) {
    json j{{"address", hex::encode(acct.address)}, {"code", hex::encode(BytesView{acct.code})}};
    if (!acct.storage.empty()) {
        json st = json::object();
        for (const auto& [slot, value] : acct.storage)
            st[hex::encode(slot)] = hex::encode(value);
        j["storage"] = st;
    }
    // Deployment provenance is always known on a fixture chain; an absent
    // field means "unknown" to the gateway, which is a live-mode condition.
    if (!acct.code.empty())
        j["created_via_create2"] = acct.created_via_create2;
    return j;
}

}  // namespace

// --- addresses -----------------------------------------------------------

Address proxy_address(int i) {
    check_range(i, 1, 14, "proxy");
    return tagged(0xa1, 0x10, static_cast<uint8_t>(i));
}

Address target_address(int i) {
    check_range(i, 1, 14, "target");
    return tagged(0xb2, 0x20, static_cast<uint8_t>(i));
}

Address eoa_address(int i) {
    check_range(i, 1, 8, "eoa");
    return tagged(0xc3, 0x50, static_cast<uint8_t>(i));
}

Address admin_proxy_address() { return tagged(0xd4, 0x30, 0x01); }
Address wallet_logic_address() { return tagged(0xd4, 0x30, 0x02); }
Address multisig_address() { return tagged(0xd4, 0x30, 0x03); }
Address multisig_singleton_address() { return tagged(0xd4, 0x30, 0x04); }
Address beacon_address() { return tagged(0xe5, 0x40, 0x01); }
Address trace_caller_address() { return tagged(0xc3, 0x60, 0x01); }

Selector sel(uint32_t value) {
    Selector s;
    s.bytes[0] = static_cast<uint8_t>(value >> 24);
    s.bytes[1] = static_cast<uint8_t>(value >> 16);
    s.bytes[2] = static_cast<uint8_t>(value >> 8);
    s.bytes[3] = static_cast<uint8_t>(value);
    return s;
}

// --- bytecode ------------------------------------------------------------

Bytes minimal_proxy_code(const Address& target) {
    Asm a;
    a.raw({0x36, 0x3d, 0x3d, 0x37, 0x3d, 0x3d, 0x3d, 0x36, 0x3d});
    a.push_addr(target);
    a.raw({0x5a, 0xf4, 0x3d, 0x82, 0x80, 0x3e, 0x90, 0x3d, 0x91, 0x60, 0x2b, 0x57, 0xfd, 0x5b,
           0xf3});
    return a.assemble();
}

Bytes hardcoded_forwarder_code(const Address& target) {
    Asm a;
    a.op(Opcode::CALLDATASIZE).push(0).push(0).op(Opcode::CALLDATACOPY);
    a.push(0).push(0);
    a.op(Opcode::CALLDATASIZE).push(0);
    a.push_addr(target);
    a.op(Opcode::GAS).op(Opcode::DELEGATECALL);
    a.jumpi("ok");
    a.revert_empty();
    a.label("ok");
    a.op(Opcode::RETURNDATASIZE).push(0).push(0).op(Opcode::RETURNDATACOPY);
    a.op(Opcode::RETURNDATASIZE).push(0).op(Opcode::RETURN);
    return a.assemble();
}

Bytes immutable_forwarder_code(const Address& target) {
    Asm a;
    a.op(Opcode::CALLDATASIZE).push(0).push(0).op(Opcode::CALLDATACOPY);
    a.push(0).push(0);
    a.op(Opcode::CALLDATASIZE).push(0);
    // the target rides in a full word, the way compiled-in immutables do
    a.push_word(word_from_address(target));
    a.op(Opcode::GAS).op(Opcode::DELEGATECALL);
    a.jumpi("ok");
    a.revert_empty();
    a.label("ok");
    a.op(Opcode::RETURNDATASIZE).push(0).push(0).op(Opcode::RETURNDATACOPY);
    a.op(Opcode::RETURNDATASIZE).push(0).op(Opcode::RETURN);
    return a.assemble();
}

Bytes bare_slot_proxy_code(int marker) {
    Asm a;
    if (marker >= 0)
        a.push(static_cast<uint64_t>(marker)).op(Opcode::POP);
    emit_forward_delegate_sload(a, eip1967_implementation_slot(), "ok");
    return a.assemble();
}

Bytes regular_proxy_code(int marker, const GuardSpec& guard) {
    Asm a;
    if (marker >= 0)
        a.push(static_cast<uint64_t>(marker)).op(Opcode::POP);
    emit_dispatch_prologue(a);
    emit_selector_case(a, kSelUpgradeTo, "upgrade");
    a.op(Opcode::POP);
    emit_forward_delegate_sload(a, eip1967_implementation_slot(), "fwd_ok");
    a.label("upgrade").op(Opcode::POP);
    emit_caller_guard(a, guard, "upgrade_ok");
    emit_store_arg(a, eip1967_implementation_slot());
    return a.assemble();
}

Bytes transparent_proxy_code() {
    Asm a;
    // route by caller first: admin traffic never reaches the implementation
    a.op(Opcode::CALLER);
    a.push_word(eip1967_admin_slot()).op(Opcode::SLOAD);
    a.op(Opcode::EQ).jumpi("admin");
    emit_forward_delegate_sload(a, eip1967_implementation_slot(), "fwd_ok");
    a.label("admin");
    emit_dispatch_prologue(a);
    emit_selector_case(a, kSelUpgradeTo, "upgrade");
    a.op(Opcode::POP).stop();
    a.label("upgrade").op(Opcode::POP);
    emit_store_arg(a, eip1967_implementation_slot());
    return a.assemble();
}

Bytes beacon_proxy_code() {
    Asm a;
    // staticcall beacon.implementation() with the selector staged at mem[0]
    a.push_word(selector_word(sel(kSelImplementation)));
    a.push(0).op(Opcode::MSTORE);
    a.push(0x20).push(0);  // rlen, roff
    a.push(4).push(0);     // alen, aoff
    a.push_word(eip1967_beacon_slot()).op(Opcode::SLOAD);
    a.op(Opcode::GAS).op(Opcode::STATICCALL);
    a.op(Opcode::POP);
    a.push(0).op(Opcode::MLOAD);  // implementation address
    a.op(Opcode::CALLDATASIZE).push(0).push(0).op(Opcode::CALLDATACOPY);
    a.push(0).push(0);
    a.op(Opcode::CALLDATASIZE).push(0);
    a.op(Opcode::DUP5);  // implementation from under the call arguments
    a.op(Opcode::GAS).op(Opcode::DELEGATECALL);
    a.jumpi("ok");
    a.revert_empty();
    a.label("ok");
    a.op(Opcode::RETURNDATASIZE).push(0).push(0).op(Opcode::RETURNDATACOPY);
    a.op(Opcode::RETURNDATASIZE).push(0).op(Opcode::RETURN);
    return a.assemble();
}

Bytes beacon_code() {
    Asm a;
    emit_dispatch_prologue(a);
    emit_selector_case(a, kSelImplementation, "get");
    emit_selector_case(a, kSelSetImplementation, "set");
    a.op(Opcode::POP);
    a.revert_empty();
    a.label("get").op(Opcode::POP);
    emit_return_sload(a, 0);
    a.label("set").op(Opcode::POP);
    emit_caller_slot_guard(a, Word::from_uint(1), "set_ok");
    emit_store_arg(a, Word::from_uint(0));
    return a.assemble();
}

Bytes uups_logic_code(const UupsLogicOptions& opts) {
    Asm a;
    emit_dispatch_prologue(a);
    emit_selector_case(a, kSelUpgradeTo, "upgrade");
    emit_selector_case(a, kSelInitialize, "init");
    if (opts.with_selfdestruct)
        emit_selector_case(a, kSelDestroy, "destroy");
    emit_selector_case(a, kSelOwner, "owner");
    a.op(Opcode::POP);
    a.revert_empty();

    a.label("upgrade").op(Opcode::POP);
    emit_caller_slot_guard(a, Word::from_uint(0), "upgrade_ok");
    emit_store_arg(a, eip1967_implementation_slot());

    a.label("init").op(Opcode::POP);
    if (opts.direct_call_guard) {
        // refuse calls that hit the implementation directly
        a.op(Opcode::ADDRESS).push_addr(opts.self_constant).op(Opcode::EQ).jumpi("init_direct");
    }
    if (opts.guard_initialize)
        emit_caller_slot_guard(a, Word::from_uint(0), "init_ok");
    emit_store_arg(a, Word::from_uint(0));
    if (opts.direct_call_guard) {
        a.label("init_direct");
        a.revert_empty();
    }

    if (opts.with_selfdestruct) {
        a.label("destroy").op(Opcode::POP);
        emit_caller_slot_guard(a, Word::from_uint(0), "destroy_ok");
        a.op(Opcode::CALLER).op(Opcode::SELFDESTRUCT);
    }

    a.label("owner").op(Opcode::POP);
    emit_return_sload(a, 0);
    return a.assemble();
}

Bytes token_logic_code() {
    Asm a;
    emit_dispatch_prologue(a);
    emit_selector_case(a, kSelTransfer, "transfer");
    a.op(Opcode::POP).stop();
    a.label("transfer").op(Opcode::POP);
    emit_store_arg(a, Word::from_uint(2));
    return a.assemble();
}

Bytes small_store_code() {
    Asm a;
    emit_dispatch_prologue(a);
    emit_selector_case(a, kSelOwner, "owner");
    a.op(Opcode::POP).stop();
    a.label("owner").op(Opcode::POP);
    emit_return_sload(a, 0);
    return a.assemble();
}

// --- chain state ---------------------------------------------------------

const std::vector<Account>& accounts() {
    static const std::vector<Account> table = [] {
        std::vector<Account> t;
        const Word impl = eip1967_implementation_slot();
        const Word admin = eip1967_admin_slot();
        const Word beacon = eip1967_beacon_slot();
        auto as_word = [](const Address& a) { return word_from_address(a); };

        // proxies
        t.push_back({proxy_address(1), minimal_proxy_code(target_address(1)), {}, false});
        t.push_back({proxy_address(2), minimal_proxy_code(target_address(2)), {}, true});
        t.push_back({proxy_address(3), hardcoded_forwarder_code(target_address(3)), {}, false});
        t.push_back({proxy_address(4), immutable_forwarder_code(target_address(4)), {}, false});
        t.push_back({proxy_address(5), bare_slot_proxy_code(0x05),
                     {{impl, as_word(target_address(5))}}, false});
        t.push_back({proxy_address(6),
                     regular_proxy_code(0x06, GuardSpec::storage(admin)),
                     {{impl, as_word(target_address(6))}, {admin, as_word(eoa_address(1))}},
                     false});
        t.push_back({proxy_address(7), transparent_proxy_code(),
                     {{impl, as_word(target_address(7))}, {admin, as_word(eoa_address(2))}},
                     false});
        t.push_back({proxy_address(8),
                     regular_proxy_code(0x08, GuardSpec::storage(admin)),
                     {{impl, as_word(target_address(8))}, {admin, as_word(admin_proxy_address())}},
                     false});
        t.push_back({proxy_address(9),
                     regular_proxy_code(0x09, GuardSpec::constant(eoa_address(4))),
                     {{impl, as_word(target_address(9))}},
                     false});
        t.push_back({proxy_address(10),
                     regular_proxy_code(0x0a, GuardSpec::storage(admin)),
                     {{impl, as_word(target_address(10))}, {admin, as_word(multisig_address())}},
                     false});
        t.push_back({proxy_address(11), bare_slot_proxy_code(0x0b),
                     {{impl, as_word(target_address(11))},
                      {Word::from_uint(0), as_word(eoa_address(5))}},
                     false});
        t.push_back({proxy_address(12), bare_slot_proxy_code(0x0c),
                     {{impl, as_word(target_address(12))},
                      {Word::from_uint(0), as_word(eoa_address(6))}},
                     false});
        t.push_back({proxy_address(13), bare_slot_proxy_code(0x0d),
                     {{impl, as_word(target_address(13))},
                      {Word::from_uint(0), as_word(eoa_address(7))}},
                     false});
        t.push_back({proxy_address(14), beacon_proxy_code(),
                     {{beacon, as_word(beacon_address())}}, false});

        // logic contracts
        for (int i = 1; i <= 4; ++i)
            t.push_back({target_address(i), small_store_code(), {}, false});
        for (int i = 5; i <= 10; ++i)
            t.push_back({target_address(i), token_logic_code(), {}, false});
        UupsLogicOptions open_init;  // unguarded initialize, destroy() present
        t.push_back({target_address(11), uups_logic_code(open_init), {}, false});
        UupsLogicOptions guarded_init;
        guarded_init.guard_initialize = true;
        t.push_back({target_address(12), uups_logic_code(guarded_init), {}, false});
        t.push_back({target_address(13), uups_logic_code(open_init),
                     {{Word::from_uint(0), Word::from_uint(1)}}, false});
        t.push_back({target_address(14), token_logic_code(), {}, false});

        // admin-side accounts
        t.push_back({admin_proxy_address(), bare_slot_proxy_code(0x31),
                     {{impl, as_word(wallet_logic_address())},
                      {admin, as_word(eoa_address(3))}},
                     false});
        t.push_back({wallet_logic_address(), small_store_code(), {}, false});
        t.push_back({multisig_address(), minimal_proxy_code(multisig_singleton_address()), {},
                     false});
        t.push_back({multisig_singleton_address(), small_store_code(), {}, false});
        t.push_back({beacon_address(), beacon_code(),
                     {{Word::from_uint(0), as_word(target_address(14))},
                      {Word::from_uint(1), as_word(eoa_address(8))}},
                     false});

        // externally owned accounts on the admin side
        for (int i = 1; i <= 8; ++i)
            t.push_back({eoa_address(i), {}, {}, false});
        return t;
    }();
    return table;
}

const std::vector<ExpectedProxy>& expected() {
    static const std::vector<ExpectedProxy> table = [] {
        std::vector<ExpectedProxy> t;
        auto fwd = [&](int i, const std::string& reason, const std::string& risk,
                       uint64_t count, uint64_t block) {
            ExpectedProxy e;
            e.proxy = proxy_address(i);
            e.target = target_address(i);
            e.cls = "forwarder";
            e.forwarder_reason = reason;
            e.metamorphic = risk;
            e.evidence_count = count;
            e.first_block = block;
            t.push_back(e);
        };
        auto up = [&](int i, const std::string& cls, bool transparent,
                      const std::string& admin_type, const std::string& locator,
                      const Address& admin, size_t via, const std::string& uups,
                      uint64_t block) {
            ExpectedProxy e;
            e.proxy = proxy_address(i);
            e.target = target_address(i);
            e.cls = cls;
            e.transparent = transparent;
            e.metamorphic = "ruled-out";
            e.first_block = block;
            e.admin_type = admin_type;
            e.admin_locator = locator;
            e.admin = admin;
            e.via_admin_proxies = via;
            e.uups_verdict = uups;
            t.push_back(e);
        };

        fwd(1, "hardcoded", "ruled-out", 2, 10800001);
        fwd(2, "hardcoded", "at-risk", 1, 10800001);
        fwd(3, "hardcoded", "ruled-out", 1, 10800001);
        fwd(4, "immutable-in-code", "ruled-out", 1, 10800001);
        fwd(5, "slot-never-assigned", "ruled-out", 1, 10800001);

        up(6, "regular", false, "eoa", "eip1967-admin-slot", eoa_address(1), 0, "", 10800002);
        up(7, "regular", true, "eoa", "eip1967-admin-slot", eoa_address(2), 0, "", 10800002);
        up(8, "regular", false, "eoa", "eip1967-admin-slot", eoa_address(3), 1, "", 10800002);
        up(9, "regular", false, "eoa", "hardcoded-admin", eoa_address(4), 0, "", 10800002);
        up(10, "regular", false, "multisig", "eip1967-admin-slot", multisig_address(), 0, "",
           10800002);
        up(11, "uups", false, "eoa", "discovered-slot", eoa_address(5), 0, "exploitable",
           10800003);
        up(12, "uups", false, "eoa", "discovered-slot", eoa_address(6), 0, "not-vulnerable",
           10800003);
        up(13, "uups", false, "eoa", "discovered-slot", eoa_address(7), 0, "not-vulnerable",
           10800003);
        up(14, "beacon", false, "eoa", "discovered-slot", eoa_address(8), 0, "", 10800003);
        t[9].multisig_label = "safe-proxy-1.3";
        return t;
    }();
    return table;
}

// --- traces --------------------------------------------------------------

std::vector<uint64_t> trace_blocks() { return {10800001, 10800002, 10800003}; }

std::string trace_document(uint64_t block) {
    const std::string transfer =
        input_hex(kSelTransfer, {word_from_address(eoa_address(1)), Word::from_uint(1000)});
    json txs = json::array();
    switch (block) {
        case 10800001:
            for (int i = 1; i <= 5; ++i)
                txs.push_back(pair_tx(block, i, proxy_address(i), target_address(i), transfer));
            break;
        case 10800002:
            for (int i = 6; i <= 10; ++i)
                txs.push_back(
                    pair_tx(block, i - 5, proxy_address(i), target_address(i), transfer));
            break;
        case 10800003: {
            for (int i = 11; i <= 13; ++i)
                txs.push_back(
                    pair_tx(block, i - 10, proxy_address(i), target_address(i), transfer));
            // beacon dispatch: the getter staticcall sits between the outer
            // call and the delegatecall, so the pair spans sibling frames
            txs.push_back(json{
                {"transactionHash", tx_hash(block, 4)},
                {"trace", json::array({
                    call_frame("call", trace_caller_address(), proxy_address(14), transfer, {},
                               2),
                    call_frame("staticcall", proxy_address(14), beacon_address(),
                               input_hex(kSelImplementation, {}), {0}, 0),
                    call_frame("delegatecall", proxy_address(14), target_address(14), transfer,
                               {1}, 0),
                })}});
            // the first proxy shows up again: one more piece of evidence,
            // same record
            txs.push_back(pair_tx(block, 5, proxy_address(1), target_address(1), transfer));
            break;
        }
        default:
            throw std::out_of_range("no trace document for block " + std::to_string(block));
    }
    return txs.dump(1);
}

// --- documents -----------------------------------------------------------

std::string manifest_json() {
    return json{{"block", kPinnedBlock}}.dump(1);
}

std::string fingerprints_json() {
    Word ms_digest;
    for (const auto& acct : accounts())
        if (acct.address == multisig_address())
            ms_digest = keccak256(BytesView{acct.code});
    json doc{{"version", 1},
             {"entries", json::array({json{
                 {"code_digest", hex::encode(ms_digest)},
                 {"label", "safe-proxy-1.3"},
                 {"threshold_semantics",
                  "confirmation threshold lives in wallet storage; any threshold "
                  "counts as shared control"}}})}};
    return doc.dump(1);
}

std::string labels_json() {
    json rows = json::array();
    for (const auto& e : expected()) {
        json r{{"proxy", hex::encode(e.proxy)},
               {"target", hex::encode(e.target)},
               {"class", e.cls},
               {"transparent", e.transparent},
               {"metamorphic", e.metamorphic},
               {"evidence_count", e.evidence_count},
               {"first_block", e.first_block}};
        if (!e.forwarder_reason.empty())
            r["reason"] = e.forwarder_reason;
        if (!e.admin_type.empty()) {
            r["admin_type"] = e.admin_type;
            r["admin_locator"] = e.admin_locator;
            r["admin"] = hex::encode(e.admin);
            r["via_admin_proxies"] = e.via_admin_proxies;
        }
        if (!e.multisig_label.empty())
            r["multisig_label"] = e.multisig_label;
        if (!e.uups_verdict.empty())
            r["uups_verdict"] = e.uups_verdict;
        rows.push_back(r);
    }
    return json{{"pinned_block", kPinnedBlock}, {"proxies", rows}}.dump(1);
}

void write_fixture_tree(const std::string& root) {
    const fs::path base(root);
    fs::create_directories(base / "accounts");
    fs::create_directories(base / "traces");
    write_text(base / "manifest.json", manifest_json());
    write_text(base / "labels.json", labels_json());
    for (const auto& acct : accounts())
        write_text(base / "accounts" / (hex::encode(acct.address) + ".json"),
                   account_json(acct).dump(1));
    for (uint64_t block : trace_blocks())
        write_text(base / "traces" / (std::to_string(block) + ".json"), trace_document(block));
}

void write_fingerprints(const std::string& path) {
    fs::create_directories(fs::path(path).parent_path());
    write_text(path, fingerprints_json());
}

}  // namespace upscan::test::corpus
