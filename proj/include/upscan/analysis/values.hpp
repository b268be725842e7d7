// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <upscan/evm/bytes.hpp>

#include <optional>

namespace upscan {

// Storage slot expression recovered by the interpreter.
struct SlotExpr {
    enum class Kind : uint8_t { concrete, keccak_of_constant, unknown };

    Kind kind = Kind::unknown;
    Word word;       // resolved slot value (concrete and keccak_of_constant)
    Bytes preimage;  // keccak_of_constant only

    static SlotExpr concrete(const Word& w) { return {Kind::concrete, w, {}}; }
    static SlotExpr keccak(Bytes pre, const Word& w) {
        return {Kind::keccak_of_constant, w, std::move(pre)};
    }

    // unknown slots resolve to nothing; aliases compare through this
    std::optional<Word> resolved() const {
        if (kind == Kind::unknown)
            return std::nullopt;
        return word;
    }

    bool operator==(const SlotExpr& o) const {
        return kind == o.kind && word == o.word && preimage == o.preimage;
    }
};

// What an account-identity opcode was compared against in a branch condition.
struct GuardCandidate {
    enum class Kind : uint8_t { constant_address, storage_slot };

    Kind kind = Kind::constant_address;
    Address address;  // constant_address
    SlotExpr slot;    // storage_slot

    static GuardCandidate constant(const Address& a) {
        GuardCandidate g;
        g.kind = Kind::constant_address;
        g.address = a;
        return g;
    }
    static GuardCandidate storage(const SlotExpr& s) {
        GuardCandidate g;
        g.kind = Kind::storage_slot;
        g.slot = s;
        return g;
    }

    bool operator==(const GuardCandidate& o) const {
        return kind == o.kind && address == o.address && slot == o.slot;
    }
};

// Comparison provenance carried by a value so JUMPI can tell which branch
// asserts what.
struct Predicate {
    enum class Kind : uint8_t { none, selector_eq, caller_eq, self_address_eq };

    Kind kind = Kind::none;
    bool negated = false;  // value is truthy iff the comparison does NOT hold
    Selector selector;     // selector_eq
    GuardCandidate cand;   // caller_eq / self_address_eq
};

// Path-insensitive abstract value. Taint marks calldata influence and is
// monotone: no operation clears it.
struct AbstractValue {
    enum class Tag : uint8_t { constant, calldata, storage_load, caller, external_return, opaque };

    // Metadata orthogonal to the tag, kept for guard and slot recovery.
    enum class Origin : uint8_t { none, selector_word, self_address, keccak_constant };

    Tag tag = Tag::opaque;
    bool taint = false;
    Word word;                      // constant payload
    SlotExpr slot;                  // storage_load payload
    uint32_t call_site = 0;         // external_return payload
    Origin origin = Origin::none;
    Bytes keccak_preimage;          // origin == keccak_constant
    std::optional<Word> cd_offset;  // calldata load offset when known
    uint8_t push_width = 0;         // constant that came straight from PUSHn
    uint32_t def_offset = 0;        // instruction offset that produced this
    Predicate pred;

    static AbstractValue constant(const Word& w, uint32_t def = 0, uint8_t width = 0) {
        AbstractValue v;
        v.tag = Tag::constant;
        v.word = w;
        v.def_offset = def;
        v.push_width = width;
        return v;
    }
    static AbstractValue opaque(bool taint = false) {
        AbstractValue v;
        v.taint = taint;
        return v;
    }

    bool is_constant() const { return tag == Tag::constant; }

    // Slot expression when this value is used as a storage key.
    SlotExpr as_slot() const {
        if (tag == Tag::constant) {
            if (origin == Origin::keccak_constant)
                return SlotExpr::keccak(keccak_preimage, word);
            return SlotExpr::concrete(word);
        }
        return SlotExpr{};
    }
};

}  // namespace upscan
