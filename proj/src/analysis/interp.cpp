// upscan: upgradeability scanner for EVM proxy contracts
// Copyright 2026 The upscan Authors.
// SPDX-License-Identifier: Apache-2.0

#include <upscan/analysis/interp.hpp>
#include <upscan/evm/keccak.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace upscan {
namespace {

using u256 = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<
    256, 256, boost::multiprecision::unsigned_magnitude, boost::multiprecision::unchecked, void>>;

u256 to_u256(const Word& w) {
    u256 v = 0;
    for (auto b : w.bytes)
        v = (v << 8) | b;
    return v;
}

Word to_word(const u256& v) {
    Word w;
    u256 x = v;
    for (size_t i = 32; i-- > 0;) {
        w.bytes[i] = static_cast<uint8_t>(x & 0xff);
        x >>= 8;
    }
    return w;
}

constexpr size_t mem_model_limit = 1 << 20;  // offsets beyond this poison the model
constexpr size_t copy_model_limit = 4096;    // longest copy tracked byte by byte
constexpr size_t hash_preimage_limit = 512;
constexpr size_t stack_limit = 1024;

struct MemByte {
    enum class Kind : uint8_t { constant, calldata, extret, word_ref, unknown };
    Kind kind = Kind::unknown;
    uint8_t value = 0;
    uint32_t site = 0;  // extret: call site id; word_ref: base offset of the stored word
    bool taint = false;
};

struct State {
    size_t idx = 0;  // instruction index in the disassembly
    std::vector<AbstractValue> stack;
    std::map<uint32_t, MemByte> mem;
    std::map<uint32_t, AbstractValue> mem_words;  // word_ref payloads
    bool mem_poisoned = false;
    bool mem_taint = false;
    std::vector<GuardFact> facts;
    std::optional<Selector> selector_ctx;
    int last_call = -1;
};

bool word_fits_u32(const Word& w, uint32_t& out) {
    if (!w.fits_uint64())
        return false;
    const uint64_t v = w.to_uint_truncated();
    if (v > 0xffffffffull)
        return false;
    out = static_cast<uint32_t>(v);
    return true;
}

// Subjects and candidates for comparison predicates.
bool is_caller(const AbstractValue& v) {
    return v.tag == AbstractValue::Tag::caller;
}
bool is_self_address(const AbstractValue& v) {
    return v.origin == AbstractValue::Origin::self_address;
}
bool is_selector_word(const AbstractValue& v) {
    return v.origin == AbstractValue::Origin::selector_word;
}

std::optional<GuardCandidate> guard_candidate(const AbstractValue& v) {
    if (v.tag == AbstractValue::Tag::constant)
        return GuardCandidate::constant(address_from_word(v.word));
    if (v.tag == AbstractValue::Tag::storage_load)
        return GuardCandidate::storage(v.slot);
    return std::nullopt;
}

Predicate comparison_predicate(const AbstractValue& a, const AbstractValue& b, bool negated) {
    Predicate p;
    const AbstractValue* subj = nullptr;
    const AbstractValue* other = nullptr;
    if (is_caller(a) || is_self_address(a)) {
        subj = &a;
        other = &b;
    } else if (is_caller(b) || is_self_address(b)) {
        subj = &b;
        other = &a;
    }
    if (subj) {
        if (auto cand = guard_candidate(*other)) {
            p.kind = is_caller(*subj) ? Predicate::Kind::caller_eq : Predicate::Kind::self_address_eq;
            p.negated = negated;
            p.cand = *cand;
        }
        return p;
    }
    const AbstractValue* selw = nullptr;
    const AbstractValue* cst = nullptr;
    if (is_selector_word(a) && b.is_constant()) {
        selw = &a;
        cst = &b;
    } else if (is_selector_word(b) && a.is_constant()) {
        selw = &b;
        cst = &a;
    }
    if (selw) {
        bool high_zero = true;
        for (size_t i = 0; i < 28; ++i)
            if (cst->word.bytes[i] != 0)
                high_zero = false;
        if (high_zero) {
            p.kind = Predicate::Kind::selector_eq;
            p.negated = negated;
            std::copy(cst->word.bytes.begin() + 28, cst->word.bytes.end(), p.selector.bytes.begin());
        }
    }
    return p;
}

std::string fact_key(const GuardFact& f) {
    std::ostringstream os;
    os << static_cast<int>(f.subject) << '|' << f.asserted << '|' << static_cast<int>(f.cand.kind)
       << '|' << hex::encode(f.cand.address) << '|' << static_cast<int>(f.cand.slot.kind) << '|'
       << hex::encode(f.cand.slot.word) << '|' << hex::encode(BytesView{f.cand.slot.preimage});
    return os.str();
}

// false = contradiction, path infeasible
bool add_fact(std::vector<GuardFact>& facts, const GuardFact& f) {
    for (const auto& e : facts) {
        if (e.subject == f.subject && e.cand == f.cand)
            return e.asserted == f.asserted;
    }
    facts.push_back(f);
    return true;
}

class Machine {
  public:
    Machine(BytesView code, EntryMode entry, const InterpOptions& opts)
        : code_(code), dis_(disassemble(code)), entry_(entry), opts_(opts) {}

    InterpResult run() {
        enqueue_entry();
        while (!queue_.empty()) {
            if (result_.steps >= opts_.step_budget) {
                result_.truncated = true;
                break;
            }
            State st = std::move(queue_.front());
            queue_.pop_front();
            run_path(std::move(st));
        }
        return std::move(result_);
    }

  private:
    BytesView code_;
    Disassembly dis_;
    EntryMode entry_;
    InterpOptions opts_;
    InterpResult result_;
    std::deque<State> queue_;
    std::map<uint32_t, int> jumpdest_visits_;
    size_t states_spawned_ = 0;
    std::set<std::string> event_keys_;

    void enqueue_entry() {
        if (dis_.instructions.empty())
            return;
        State init;
        init.idx = 0;
        queue_.push_back(std::move(init));
        states_spawned_ = 1;
    }

    void enqueue_jump(State&& st, uint32_t target_offset) {
        if (!dis_.jumpdests.count(target_offset))
            return;  // jump to a non-JUMPDEST halts in the real machine
        if (states_spawned_ >= opts_.max_states) {
            result_.truncated = true;
            return;
        }
        int& visits = jumpdest_visits_[target_offset];
        if (visits >= opts_.jumpdest_revisit_limit)
            return;
        ++visits;
        const Instruction* ins = dis_.at_offset(target_offset);
        st.idx = static_cast<size_t>(ins - dis_.instructions.data());
        ++states_spawned_;
        queue_.push_back(std::move(st));
    }

    void enqueue_fallthrough(State&& st, size_t idx) {
        if (idx >= dis_.instructions.size())
            return;
        if (states_spawned_ >= opts_.max_states) {
            result_.truncated = true;
            return;
        }
        st.idx = idx;
        ++states_spawned_;
        queue_.push_back(std::move(st));
    }

    void emit(InterpEvent ev, const State& st) {
        ev.selector_ctx = st.selector_ctx;
        ev.facts = st.facts;
        std::sort(ev.facts.begin(), ev.facts.end(), [](const GuardFact& x, const GuardFact& y) {
            return fact_key(x) < fact_key(y);
        });
        std::ostringstream key;
        key << static_cast<int>(ev.kind) << '@' << ev.offset << '|'
            << (ev.selector_ctx ? hex::encode(*ev.selector_ctx) : "-") << '|'
            << static_cast<int>(ev.slot.kind) << hex::encode(ev.slot.word) << '|'
            << static_cast<int>(ev.value.tag) << ev.value.taint << hex::encode(ev.value.word)
            << static_cast<int>(ev.value.slot.kind) << hex::encode(ev.value.slot.word) << '|'
            << static_cast<int>(ev.target.tag) << hex::encode(ev.target.word)
            << static_cast<int>(ev.target.slot.kind) << hex::encode(ev.target.slot.word) << '|';
        for (const auto& f : ev.facts)
            key << fact_key(f) << ';';
        if (event_keys_.insert(key.str()).second)
            result_.events.push_back(std::move(ev));
    }

    // ---- memory helpers ----

    void mem_write_value(State& st, const AbstractValue& off, const AbstractValue& val, size_t width) {
        uint32_t o;
        if (!off.is_constant() || !word_fits_u32(off.word, o) || o + width > mem_model_limit) {
            st.mem_poisoned = true;
            st.mem_taint |= val.taint || val.tag == AbstractValue::Tag::calldata;
            return;
        }
        const bool as_word_ref = width == 32 && val.tag != AbstractValue::Tag::constant &&
                                 val.tag != AbstractValue::Tag::calldata &&
                                 val.tag != AbstractValue::Tag::external_return;
        if (as_word_ref)
            st.mem_words[o] = val;
        for (size_t i = 0; i < width; ++i) {
            MemByte cell;
            cell.taint = val.taint;
            if (as_word_ref) {
                cell.kind = MemByte::Kind::word_ref;
                cell.site = o;
            } else {
                switch (val.tag) {
                    case AbstractValue::Tag::constant:
                        cell.kind = MemByte::Kind::constant;
                        cell.value = width == 32 ? val.word.bytes[i] : val.word.bytes[31];
                        break;
                    case AbstractValue::Tag::calldata:
                        cell.kind = MemByte::Kind::calldata;
                        cell.taint = true;
                        break;
                    case AbstractValue::Tag::external_return:
                        cell.kind = MemByte::Kind::extret;
                        cell.site = val.call_site;
                        break;
                    default:
                        cell.kind = MemByte::Kind::unknown;
                        break;
                }
            }
            st.mem[o + static_cast<uint32_t>(i)] = cell;
            st.mem_taint |= cell.taint;
        }
    }

    void mem_fill(State& st, const AbstractValue& dst, const AbstractValue& len,
                  MemByte::Kind kind, uint32_t site, bool taint) {
        uint32_t d, n;
        if (!dst.is_constant() || !len.is_constant() || !word_fits_u32(dst.word, d) ||
            !word_fits_u32(len.word, n) || n > copy_model_limit || d + n > mem_model_limit) {
            st.mem_poisoned = true;
            st.mem_taint |= taint;
            return;
        }
        for (uint32_t i = 0; i < n; ++i) {
            st.mem[d + i] = MemByte{kind, 0, site, taint};
        }
        st.mem_taint |= taint && n > 0;
    }

    void mem_write_code(State& st, const AbstractValue& dst, const AbstractValue& src,
                        const AbstractValue& len) {
        uint32_t d, s, n;
        if (!dst.is_constant() || !src.is_constant() || !len.is_constant() ||
            !word_fits_u32(dst.word, d) || !word_fits_u32(src.word, s) ||
            !word_fits_u32(len.word, n) || n > copy_model_limit || d + n > mem_model_limit) {
            st.mem_poisoned = true;
            return;
        }
        for (uint32_t i = 0; i < n; ++i) {
            const uint8_t b = (s + i < code_.size()) ? code_[s + i] : 0;
            st.mem[d + i] = MemByte{MemByte::Kind::constant, b, 0, false};
        }
    }

    AbstractValue mem_load(State& st, const AbstractValue& off, uint32_t def) {
        uint32_t o;
        if (!off.is_constant() || !word_fits_u32(off.word, o) || o + 32 > mem_model_limit ||
            st.mem_poisoned) {
            auto v = AbstractValue::opaque(st.mem_taint && (st.mem_poisoned || !off.is_constant()));
            if (off.is_constant() && !st.mem_poisoned)
                v.taint = false;
            v.def_offset = def;
            return v;
        }
        bool all_const = true;
        bool any_calldata = false;
        bool any_taint = false;
        bool all_extret = true;
        bool all_wordref = true;
        uint32_t extret_site = 0;
        bool extret_seen = false;
        Word w;
        for (uint32_t i = 0; i < 32; ++i) {
            auto it = st.mem.find(o + i);
            if (it == st.mem.end()) {
                w.bytes[i] = 0;  // untouched memory is zero
                all_extret = false;
                all_wordref = false;
                continue;
            }
            const MemByte& c = it->second;
            any_taint |= c.taint;
            if (c.kind != MemByte::Kind::word_ref || c.site != o)
                all_wordref = false;
            switch (c.kind) {
                case MemByte::Kind::constant:
                    w.bytes[i] = c.value;
                    all_extret = false;
                    break;
                case MemByte::Kind::calldata:
                    any_calldata = true;
                    all_const = false;
                    all_extret = false;
                    break;
                case MemByte::Kind::extret:
                    all_const = false;
                    if (extret_seen && extret_site != c.site)
                        all_extret = false;
                    extret_seen = true;
                    extret_site = c.site;
                    break;
                default:
                    all_const = false;
                    all_extret = false;
                    break;
            }
        }
        if (all_wordref) {
            auto wit = st.mem_words.find(o);
            if (wit != st.mem_words.end()) {
                AbstractValue v = wit->second;
                v.def_offset = def;
                return v;
            }
        }
        AbstractValue v;
        v.def_offset = def;
        if (all_const) {
            v = AbstractValue::constant(w, def);
        } else if (any_calldata) {
            v.tag = AbstractValue::Tag::calldata;
            v.taint = true;
        } else if (extret_seen && all_extret) {
            v.tag = AbstractValue::Tag::external_return;
            v.call_site = extret_site;
            v.taint = any_taint;
        } else {
            v.tag = AbstractValue::Tag::opaque;
            v.taint = any_taint;
        }
        return v;
    }

    std::optional<Bytes> mem_constant_region(const State& st, const AbstractValue& off,
                                             const AbstractValue& len, bool& tainted) const {
        tainted = false;
        uint32_t o, n;
        if (!off.is_constant() || !len.is_constant() || !word_fits_u32(off.word, o) ||
            !word_fits_u32(len.word, n) || n > hash_preimage_limit || o + n > mem_model_limit)
            return std::nullopt;
        if (st.mem_poisoned) {
            tainted = st.mem_taint;
            return std::nullopt;
        }
        Bytes out(n, 0);
        for (uint32_t i = 0; i < n; ++i) {
            auto it = st.mem.find(o + i);
            if (it == st.mem.end())
                continue;
            if (it->second.kind != MemByte::Kind::constant) {
                tainted = it->second.taint || it->second.kind == MemByte::Kind::calldata;
                return std::nullopt;
            }
            out[i] = it->second.value;
        }
        return out;
    }

    std::optional<Selector> call_arg_selector(const State& st, const AbstractValue& aoff,
                                              const AbstractValue& alen) const {
        uint32_t o, n;
        if (!aoff.is_constant() || !alen.is_constant() || !word_fits_u32(aoff.word, o) ||
            !word_fits_u32(alen.word, n) || n < 4 || st.mem_poisoned)
            return std::nullopt;
        Selector s;
        for (uint32_t i = 0; i < 4; ++i) {
            auto it = st.mem.find(o + i);
            if (it == st.mem.end() || it->second.kind != MemByte::Kind::constant)
                return std::nullopt;
            s.bytes[i] = it->second.value;
        }
        return s;
    }

    // ---- arithmetic ----

    AbstractValue fold_binary(Opcode op, const AbstractValue& a, const AbstractValue& b,
                              uint32_t def) {
        const u256 x = to_u256(a.word);
        const u256 y = to_u256(b.word);
        u256 r = 0;
        bool folded = true;
        switch (op) {
            case Opcode::ADD: r = x + y; break;
            case Opcode::MUL: r = x * y; break;
            case Opcode::SUB: r = x - y; break;
            case Opcode::DIV: r = y == 0 ? u256(0) : x / y; break;
            case Opcode::MOD: r = y == 0 ? u256(0) : x % y; break;
            case Opcode::EXP:
                if (y <= 256) {
                    r = 1;
                    for (unsigned i = 0; i < static_cast<unsigned>(y); ++i)
                        r *= x;
                } else {
                    folded = false;
                }
                break;
            case Opcode::LT: r = x < y ? 1 : 0; break;
            case Opcode::GT: r = x > y ? 1 : 0; break;
            case Opcode::EQ: r = x == y ? 1 : 0; break;
            case Opcode::AND: r = x & y; break;
            case Opcode::OR: r = x | y; break;
            case Opcode::XOR: r = x ^ y; break;
            case Opcode::BYTE: r = x < 32 ? u256(b.word.bytes[static_cast<size_t>(x)]) : u256(0); break;
            case Opcode::SHL: r = x >= 256 ? u256(0) : y << static_cast<unsigned>(x); break;
            case Opcode::SHR: r = x >= 256 ? u256(0) : y >> static_cast<unsigned>(x); break;
            default: folded = false; break;
        }
        if (!folded)
            return AbstractValue::opaque(a.taint || b.taint);
        auto v = AbstractValue::constant(to_word(r), def);
        return v;
    }

    AbstractValue binary(Opcode op, const AbstractValue& a, const AbstractValue& b, uint32_t def) {
        if (a.is_constant() && b.is_constant())
            return fold_binary(op, a, b, def);

        const bool taint = a.taint || b.taint;

        // Masking with a constant preserves identity of the other operand.
        if (op == Opcode::AND && (a.is_constant() || b.is_constant())) {
            const AbstractValue& keep = a.is_constant() ? b : a;
            AbstractValue v = keep;
            v.def_offset = def;
            v.taint = taint;
            v.pred = Predicate{};
            v.push_width = 0;
            if (v.origin == AbstractValue::Origin::keccak_constant)
                v.origin = AbstractValue::Origin::none;
            return v;
        }

        // Selector extraction from the first calldata word.
        const bool cd0_a = a.tag == AbstractValue::Tag::calldata && a.cd_offset &&
                           a.cd_offset->is_zero();
        const bool cd0_b = b.tag == AbstractValue::Tag::calldata && b.cd_offset &&
                           b.cd_offset->is_zero();
        if (op == Opcode::SHR && a.is_constant() && a.word == Word::from_uint(224) && cd0_b) {
            AbstractValue v = b;
            v.def_offset = def;
            v.origin = AbstractValue::Origin::selector_word;
            v.cd_offset.reset();
            return v;
        }
        if (op == Opcode::DIV && cd0_a && b.is_constant()) {
            u256 shift224 = u256(1) << 224;
            if (to_u256(b.word) == shift224) {
                AbstractValue v = a;
                v.def_offset = def;
                v.origin = AbstractValue::Origin::selector_word;
                v.cd_offset.reset();
                return v;
            }
        }

        AbstractValue v;
        v.def_offset = def;
        v.taint = taint;
        if (op == Opcode::EQ) {
            v.pred = comparison_predicate(a, b, false);
        } else if (op == Opcode::SUB || op == Opcode::XOR) {
            v.pred = comparison_predicate(a, b, true);
        }
        if (a.tag == AbstractValue::Tag::calldata || b.tag == AbstractValue::Tag::calldata)
            v.tag = AbstractValue::Tag::calldata;
        return v;
    }

    // ---- main path walk ----

    void run_path(State st) {
        while (st.idx < dis_.instructions.size()) {
            if (result_.steps >= opts_.step_budget) {
                result_.truncated = true;
                return;
            }
            ++result_.steps;
            const Instruction& ins = dis_.instructions[st.idx];
            const uint8_t raw = ins.byte;
            const OpcodeInfo& info = opcode_info(raw);
            const uint32_t off = ins.offset;

            if (!info.assigned)
                return;  // unassigned byte halts

            if (st.stack.size() < info.stack_in)
                return;  // stack underflow halts

            auto pop = [&st]() {
                AbstractValue v = std::move(st.stack.back());
                st.stack.pop_back();
                return v;
            };
            auto push = [&st](AbstractValue v) { st.stack.push_back(std::move(v)); };

            if (is_push(raw)) {
                Word w;
                const size_t width = ins.immediate.size();
                std::copy(ins.immediate.begin(), ins.immediate.end(),
                          w.bytes.begin() + (32 - width));
                push(AbstractValue::constant(w, off, static_cast<uint8_t>(width)));
                ++st.idx;
                continue;
            }
            if (is_dup(raw)) {
                const size_t n = raw - static_cast<uint8_t>(Opcode::DUP1) + 1;
                if (st.stack.size() >= stack_limit)
                    return;
                push(st.stack[st.stack.size() - n]);
                ++st.idx;
                continue;
            }
            if (is_swap(raw)) {
                const size_t n = raw - static_cast<uint8_t>(Opcode::SWAP1) + 1;
                std::swap(st.stack.back(), st.stack[st.stack.size() - 1 - n]);
                ++st.idx;
                continue;
            }

            switch (static_cast<Opcode>(raw)) {
                case Opcode::STOP:
                case Opcode::REVERT:
                case Opcode::INVALID:
                    return;

                case Opcode::RETURN: {
                    auto o = pop();
                    auto n = pop();
                    InterpEvent ev;
                    ev.kind = InterpEvent::Kind::ret;
                    ev.offset = off;
                    if (n.is_constant() && n.word == Word::from_uint(32))
                        ev.value = mem_load(st, o, off);
                    else
                        ev.value = AbstractValue::opaque();
                    emit(std::move(ev), st);
                    return;
                }

                case Opcode::SELFDESTRUCT: {
                    auto beneficiary = pop();
                    InterpEvent ev;
                    ev.kind = InterpEvent::Kind::selfdestruct;
                    ev.offset = off;
                    ev.value = beneficiary;
                    emit(std::move(ev), st);
                    return;
                }

                case Opcode::JUMP: {
                    auto target = pop();
                    if (!target.is_constant()) {
                        result_.malformed_jump = true;
                        return;
                    }
                    uint32_t t;
                    if (!word_fits_u32(target.word, t))
                        return;
                    enqueue_jump(std::move(st), t);
                    return;
                }

                case Opcode::JUMPI: {
                    auto target = pop();
                    auto cond = pop();
                    handle_jumpi(std::move(st), target, cond);
                    return;
                }

                case Opcode::JUMPDEST:
                case Opcode::PC:
                    if (static_cast<Opcode>(raw) == Opcode::PC)
                        push(AbstractValue::constant(Word::from_uint(off), off));
                    ++st.idx;
                    continue;

                case Opcode::POP:
                    pop();
                    ++st.idx;
                    continue;

                case Opcode::ISZERO: {
                    auto a = pop();
                    if (a.is_constant()) {
                        push(AbstractValue::constant(
                            Word::from_uint(a.word.is_zero() ? 1 : 0), off));
                    } else {
                        AbstractValue v;
                        v.def_offset = off;
                        v.taint = a.taint;
                        if (a.pred.kind != Predicate::Kind::none) {
                            v.pred = a.pred;
                            v.pred.negated = !v.pred.negated;
                        }
                        if (a.tag == AbstractValue::Tag::calldata)
                            v.tag = AbstractValue::Tag::calldata;
                        push(std::move(v));
                    }
                    ++st.idx;
                    continue;
                }

                case Opcode::NOT: {
                    auto a = pop();
                    if (a.is_constant()) {
                        Word w;
                        for (size_t i = 0; i < 32; ++i)
                            w.bytes[i] = ~a.word.bytes[i];
                        push(AbstractValue::constant(w, off));
                    } else {
                        push(AbstractValue::opaque(a.taint));
                    }
                    ++st.idx;
                    continue;
                }

                case Opcode::CALLER: {
                    AbstractValue v;
                    v.tag = AbstractValue::Tag::caller;
                    v.def_offset = off;
                    push(std::move(v));
                    ++st.idx;
                    continue;
                }

                case Opcode::ADDRESS: {
                    AbstractValue v;
                    v.origin = AbstractValue::Origin::self_address;
                    v.def_offset = off;
                    push(std::move(v));
                    ++st.idx;
                    continue;
                }

                case Opcode::CALLDATALOAD: {
                    auto o = pop();
                    AbstractValue v;
                    v.tag = AbstractValue::Tag::calldata;
                    v.taint = true;
                    v.def_offset = off;
                    if (o.is_constant())
                        v.cd_offset = o.word;
                    push(std::move(v));
                    ++st.idx;
                    continue;
                }

                case Opcode::CALLDATASIZE: {
                    AbstractValue v;
                    v.tag = AbstractValue::Tag::calldata;
                    v.taint = true;
                    v.def_offset = off;
                    push(std::move(v));
                    ++st.idx;
                    continue;
                }

                case Opcode::CALLDATACOPY: {
                    auto dst = pop();
                    pop();  // source offset does not matter for the model
                    auto len = pop();
                    mem_fill(st, dst, len, MemByte::Kind::calldata, 0, true);
                    ++st.idx;
                    continue;
                }

                case Opcode::CODESIZE:
                    push(AbstractValue::constant(Word::from_uint(code_.size()), off));
                    ++st.idx;
                    continue;

                case Opcode::CODECOPY: {
                    auto dst = pop();
                    auto src = pop();
                    auto len = pop();
                    mem_write_code(st, dst, src, len);
                    ++st.idx;
                    continue;
                }

                case Opcode::RETURNDATASIZE:
                    if (st.last_call < 0)
                        push(AbstractValue::constant(Word{}, off));
                    else
                        push(AbstractValue::opaque());
                    ++st.idx;
                    continue;

                case Opcode::RETURNDATACOPY: {
                    auto dst = pop();
                    pop();
                    auto len = pop();
                    if (st.last_call >= 0)
                        mem_fill(st, dst, len, MemByte::Kind::extret,
                                 static_cast<uint32_t>(st.last_call), false);
                    else
                        mem_fill(st, dst, len, MemByte::Kind::constant, 0, false);
                    ++st.idx;
                    continue;
                }

                case Opcode::MLOAD: {
                    auto o = pop();
                    push(mem_load(st, o, off));
                    ++st.idx;
                    continue;
                }

                case Opcode::MSTORE: {
                    auto o = pop();
                    auto v = pop();
                    mem_write_value(st, o, v, 32);
                    ++st.idx;
                    continue;
                }

                case Opcode::MSTORE8: {
                    auto o = pop();
                    auto v = pop();
                    mem_write_value(st, o, v, 1);
                    ++st.idx;
                    continue;
                }

                case Opcode::SHA3: {
                    auto o = pop();
                    auto n = pop();
                    bool tainted = false;
                    auto pre = mem_constant_region(st, o, n, tainted);
                    if (pre) {
                        AbstractValue v = AbstractValue::constant(keccak256(*pre), off);
                        v.origin = AbstractValue::Origin::keccak_constant;
                        v.keccak_preimage = std::move(*pre);
                        push(std::move(v));
                    } else {
                        push(AbstractValue::opaque(tainted || o.taint || n.taint));
                    }
                    ++st.idx;
                    continue;
                }

                case Opcode::SLOAD: {
                    auto slotv = pop();
                    InterpEvent ev;
                    ev.kind = InterpEvent::Kind::sload;
                    ev.offset = off;
                    ev.slot = slotv.as_slot();
                    emit(ev, st);
                    AbstractValue v;
                    v.tag = AbstractValue::Tag::storage_load;
                    v.slot = slotv.as_slot();
                    v.def_offset = off;
                    push(std::move(v));
                    ++st.idx;
                    continue;
                }

                case Opcode::SSTORE: {
                    auto slotv = pop();
                    auto val = pop();
                    InterpEvent ev;
                    ev.kind = InterpEvent::Kind::sstore;
                    ev.offset = off;
                    ev.slot = slotv.as_slot();
                    ev.value = val;
                    emit(std::move(ev), st);
                    ++st.idx;
                    continue;
                }

                case Opcode::CALL:
                case Opcode::CALLCODE:
                case Opcode::DELEGATECALL:
                case Opcode::STATICCALL: {
                    const Opcode op = static_cast<Opcode>(raw);
                    pop();  // gas
                    auto addr = pop();
                    if (op == Opcode::CALL || op == Opcode::CALLCODE)
                        pop();  // value
                    auto aoff = pop();
                    auto alen = pop();
                    auto roff = pop();
                    auto rlen = pop();

                    CallSite site;
                    site.id = static_cast<uint32_t>(result_.call_sites.size());
                    site.op = op;
                    site.target = addr;
                    site.arg_selector = call_arg_selector(st, aoff, alen);
                    result_.call_sites.push_back(site);

                    InterpEvent ev;
                    switch (op) {
                        case Opcode::DELEGATECALL: ev.kind = InterpEvent::Kind::delegatecall; break;
                        case Opcode::STATICCALL: ev.kind = InterpEvent::Kind::staticcall; break;
                        case Opcode::CALLCODE: ev.kind = InterpEvent::Kind::callcode; break;
                        default: ev.kind = InterpEvent::Kind::call; break;
                    }
                    ev.offset = off;
                    ev.target = addr;
                    ev.call_site = site.id;
                    ev.arg_selector = site.arg_selector;
                    emit(std::move(ev), st);

                    mem_fill(st, roff, rlen, MemByte::Kind::extret, site.id, false);
                    AbstractValue success;
                    success.tag = AbstractValue::Tag::external_return;
                    success.call_site = site.id;
                    success.def_offset = off;
                    push(std::move(success));
                    st.last_call = static_cast<int>(site.id);
                    ++st.idx;
                    continue;
                }

                case Opcode::CREATE:
                case Opcode::CREATE2: {
                    const int n = raw == static_cast<uint8_t>(Opcode::CREATE) ? 3 : 4;
                    bool taint = false;
                    for (int i = 0; i < n; ++i)
                        taint |= pop().taint;
                    push(AbstractValue::opaque(taint));
                    ++st.idx;
                    continue;
                }

                default: {
                    // Binary arithmetic and comparisons get the modeled path;
                    // everything else is generic pop/push with taint OR.
                    if (info.stack_in == 2 && info.stack_out == 1) {
                        auto a = pop();
                        auto b = pop();
                        push(binary(static_cast<Opcode>(raw), a, b, off));
                        ++st.idx;
                        continue;
                    }
                    bool taint = false;
                    for (uint8_t i = 0; i < info.stack_in; ++i)
                        taint |= pop().taint;
                    for (uint8_t i = 0; i < info.stack_out; ++i)
                        push(AbstractValue::opaque(taint));
                    ++st.idx;
                    continue;
                }
            }
        }
    }

    void handle_jumpi(State&& st, const AbstractValue& target, const AbstractValue& cond) {
        const size_t fallthrough_idx = st.idx + 1;

        uint32_t t = 0;
        const bool target_known = target.is_constant() && word_fits_u32(target.word, t);

        bool take_jump = true;
        bool take_fall = true;
        if (cond.is_constant()) {
            take_jump = !cond.word.is_zero();
            take_fall = cond.word.is_zero();
        }

        const Predicate& p = cond.pred;
        if (p.kind == Predicate::Kind::selector_eq) {
            // taken branch: condition truthy; predicate holds iff !negated
            const bool jump_matches = !p.negated;
            if (entry_ == EntryMode::fallback) {
                // unmatched selector: the matching branch is not taken
                if (jump_matches)
                    take_jump = false;
                else
                    take_fall = false;
            }
            if (take_jump && target_known) {
                State j = st;
                if (jump_matches && !j.selector_ctx)
                    j.selector_ctx = p.selector;
                enqueue_jump(std::move(j), t);
            } else if (take_jump && !target.is_constant()) {
                result_.malformed_jump = true;
            }
            if (take_fall) {
                State f = std::move(st);
                if (!jump_matches && !f.selector_ctx)
                    f.selector_ctx = p.selector;
                enqueue_fallthrough(std::move(f), fallthrough_idx);
            }
            return;
        }

        if (p.kind == Predicate::Kind::caller_eq || p.kind == Predicate::Kind::self_address_eq) {
            GuardFact on_jump;
            on_jump.subject = p.kind == Predicate::Kind::caller_eq ? GuardFact::Subject::caller
                                                                   : GuardFact::Subject::self_address;
            on_jump.cand = p.cand;
            on_jump.asserted = !p.negated;
            GuardFact on_fall = on_jump;
            on_fall.asserted = p.negated;

            if (take_jump && target_known) {
                State j = st;
                if (add_fact(j.facts, on_jump))
                    enqueue_jump(std::move(j), t);
            } else if (take_jump && !target.is_constant()) {
                result_.malformed_jump = true;
            }
            if (take_fall) {
                State f = std::move(st);
                if (add_fact(f.facts, on_fall))
                    enqueue_fallthrough(std::move(f), fallthrough_idx);
            }
            return;
        }

        if (take_jump) {
            if (target_known) {
                State j = st;
                enqueue_jump(std::move(j), t);
            } else if (!target.is_constant()) {
                result_.malformed_jump = true;
            }
        }
        if (take_fall)
            enqueue_fallthrough(std::move(st), fallthrough_idx);
    }
};

}  // namespace

InterpResult interpret(BytesView code, EntryMode entry, const InterpOptions& opts) {
    Machine m(code, entry, opts);
    return m.run();
}

}  // namespace upscan
