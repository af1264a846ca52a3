// agon: nano-operator vocabulary, width rules and evaluation semantics
// SPDX-License-Identifier: Apache-2.0

#ifndef AGON_NOP_HPP
#define AGON_NOP_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agon/bitvec.hpp"
#include "agon/machine_state.hpp"

namespace agon {

enum class NopCategory : std::uint8_t { Storage, Pc, Al };

enum class NopKind : std::uint16_t {
    REG_READ,
    REG_WRITE,
    MEM_READ,
    MEM_WRITE,
    INC_PC,
    UPDATE_PC,
    COND_UPDATE_PC,
    AND,
    OR,
    XOR,
    NOT,
    ADD,
    SUB,
    SIGNED_MUL,
    SLL,
    SRL,
    SRA,
    SLICE,
    CONCAT,
    SIGN_EXTEND,
    UNSIGN_EXTEND,
    CMP_GE_S,
    CMP_GE_U,
    CMP_GT_S,
    CMP_GT_U,
    CMP_LT_S,
    CMP_LT_U,
    CMP_LE_S,
    CMP_LE_U,
    CMP_NE,
    CMP_EQ,
    COND_ASSIGN,
    kBuiltinCount,
};

// How a bare integer literal bound to an operand slot gets its width.
enum class LiteralWidth : std::uint8_t {
    Forbidden,    // a literal makes the call ambiguous; compile error
    Minimal,      // smallest width holding the value (shift amounts)
    MatchPartner, // adopt the width of the paired non-literal operand
    Fixed,        // fixed width (register index, address, pc, data)
    FromStatic,   // width given by a static argument (CONCAT/EXTEND slots)
};

struct LiteralSlotRule {
    LiteralWidth mode = LiteralWidth::Forbidden;
    unsigned fixed_width = 0;  // for Fixed
    unsigned partner_slot = 0; // for MatchPartner
    unsigned static_index = 0; // for FromStatic
};

struct EvalResult {
    std::optional<BitVec> value;
    std::vector<Effect> effects;
};

/// Static description of one nOP kind. New kinds are registered with exactly
/// these pieces plus a timing-table row.
struct NopInfo {
    std::string name;
    NopCategory category = NopCategory::Al;
    unsigned operand_arity = 0;
    unsigned static_arity = 0;
    bool commutative = false;
    bool has_result = true;
    std::vector<LiteralSlotRule> literal_rules; // one per operand slot
    std::function<unsigned(const std::vector<unsigned>&, const std::vector<std::int64_t>&)>
        infer_width;
    std::function<EvalResult(const std::vector<BitVec>&, const std::vector<std::int64_t>&,
                             const MachineState*)>
        eval;
};

namespace detail {

inline void require_arity(const NopInfo& info, std::size_t operands, std::size_t statics) {
    if (operands != info.operand_arity)
        throw WidthError(info.name + " expects " + std::to_string(info.operand_arity) +
                         " operand(s), got " + std::to_string(operands));
    if (statics != info.static_arity)
        throw WidthError(info.name + " expects " + std::to_string(info.static_arity) +
                         " static argument(s), got " + std::to_string(statics));
}

inline void require_equal_widths(const std::string& name, unsigned a, unsigned b) {
    if (a != b)
        throw WidthError(name + ": operand widths " + std::to_string(a) + " and " +
                         std::to_string(b) + " differ; extend the narrower operand with "
                         "SIGN_EXTEND or UNSIGN_EXTEND first");
}

inline u128 sra_value(const BitVec& x, std::uint64_t amount) {
    unsigned w = x.width();
    bool neg = x.sign_bit();
    if (amount >= w) return neg ? mask_bits(w) : 0;
    u128 shifted = x.value() >> amount;
    if (neg) shifted |= mask_bits(w) & ~mask_bits(w - static_cast<unsigned>(amount));
    return shifted;
}

} // namespace detail

/// Registry of nOP kinds. Built-ins are installed on first use; extension
/// kinds may be added at runtime (plug-and-play).
class NopRegistry {
public:
    static NopRegistry& instance() {
        static NopRegistry reg;
        return reg;
    }

    const NopInfo& info(NopKind kind) const {
        auto it = table_.find(kind);
        if (it == table_.end())
            throw std::out_of_range("unknown nOP kind id " +
                                    std::to_string(static_cast<unsigned>(kind)));
        return it->second;
    }

    const NopInfo* find_by_name(const std::string& name) const {
        auto it = by_name_.find(name);
        return it == by_name_.end() ? nullptr : &table_.at(it->second);
    }

    std::optional<NopKind> kind_by_name(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    NopKind register_kind(NopInfo info) {
        NopKind id = next_id_;
        next_id_ = static_cast<NopKind>(static_cast<std::uint16_t>(next_id_) + 1);
        by_name_[info.name] = id;
        table_.emplace(id, std::move(info));
        return id;
    }

    std::vector<NopKind> all_kinds() const {
        std::vector<NopKind> out;
        for (const auto& [k, v] : table_) out.push_back(k);
        return out;
    }

private:
    NopRegistry() { install_builtins(); }

    void add(NopKind kind, NopInfo info) {
        by_name_[info.name] = kind;
        table_.emplace(kind, std::move(info));
    }

    void install_builtins();

    std::map<NopKind, NopInfo> table_;
    std::map<std::string, NopKind> by_name_;
    NopKind next_id_ = NopKind::kBuiltinCount;
};

inline void NopRegistry::install_builtins() {
    using W = std::vector<unsigned>;
    using S = std::vector<std::int64_t>;
    const LiteralSlotRule kReg{LiteralWidth::Fixed, 5, 0, 0};
    const LiteralSlotRule kAddr{LiteralWidth::Fixed, 64, 0, 0};
    const LiteralSlotRule kData64{LiteralWidth::Fixed, 64, 0, 0};
    const LiteralSlotRule kBit{LiteralWidth::Fixed, 1, 0, 0};
    const LiteralSlotRule kNo{LiteralWidth::Forbidden, 0, 0, 0};
    auto partner = [](unsigned slot) { return LiteralSlotRule{LiteralWidth::MatchPartner, 0, slot, 0}; };

    // --- Storage ---
    add(NopKind::REG_READ, NopInfo{
        "REG_READ", NopCategory::Storage, 1, 0, false, true, {kReg},
        [](const W& w, const S&) {
            if (w[0] != 5) throw WidthError("REG_READ index must be 5 bits, got " + std::to_string(w[0]));
            return 64u;
        },
        [](const std::vector<BitVec>& in, const S&, const MachineState* st) {
            return EvalResult{BitVec(st->read_reg(static_cast<unsigned>(in[0].to_u64())), 64), {}};
        }});
    add(NopKind::REG_WRITE, NopInfo{
        "REG_WRITE", NopCategory::Storage, 2, 0, false, false, {kReg, kData64},
        [](const W& w, const S&) {
            if (w[0] != 5) throw WidthError("REG_WRITE index must be 5 bits, got " + std::to_string(w[0]));
            if (w[1] != 64) throw WidthError("REG_WRITE value must be 64 bits, got " + std::to_string(w[1]));
            return 0u;
        },
        [](const std::vector<BitVec>& in, const S&, const MachineState*) {
            return EvalResult{std::nullopt,
                              {RegWriteEffect{static_cast<unsigned>(in[0].to_u64()), in[1]}}};
        }});
    add(NopKind::MEM_READ, NopInfo{
        "MEM_READ", NopCategory::Storage, 1, 1, false, true, {kAddr},
        [](const W& w, const S& s) {
            MachineState::check_access_size(static_cast<unsigned>(s[0]));
            if (w[0] != 64) throw WidthError("MEM_READ address must be 64 bits, got " + std::to_string(w[0]));
            return static_cast<unsigned>(8 * s[0]);
        },
        [](const std::vector<BitVec>& in, const S& s, const MachineState* st) {
            return EvalResult{st->read_mem(in[0].to_u64(), static_cast<unsigned>(s[0])), {}};
        }});
    add(NopKind::MEM_WRITE, NopInfo{
        "MEM_WRITE", NopCategory::Storage, 2, 1, false, false,
        {kAddr, LiteralSlotRule{LiteralWidth::FromStatic, 0, 0, 0}},
        [](const W& w, const S& s) {
            MachineState::check_access_size(static_cast<unsigned>(s[0]));
            if (w[0] != 64) throw WidthError("MEM_WRITE address must be 64 bits, got " + std::to_string(w[0]));
            if (w[1] != 8 * s[0])
                throw WidthError("MEM_WRITE of " + std::to_string(s[0]) + " byte(s) needs a " +
                                 std::to_string(8 * s[0]) + "-bit value, got " + std::to_string(w[1]));
            return 0u;
        },
        [](const std::vector<BitVec>& in, const S& s, const MachineState*) {
            return EvalResult{std::nullopt,
                              {MemWriteEffect{in[0].to_u64(), static_cast<unsigned>(s[0]), in[1]}}};
        }});

    // --- PC ---
    add(NopKind::INC_PC, NopInfo{
        "INC_PC", NopCategory::Pc, 1, 0, false, false, {kAddr},
        [](const W& w, const S&) {
            if (w[0] != 64) throw WidthError("INC_PC takes the 64-bit pc, got width " + std::to_string(w[0]));
            return 0u;
        },
        [](const std::vector<BitVec>& in, const S&, const MachineState*) {
            return EvalResult{std::nullopt, {PcUpdateEffect{BitVec(in[0].value() + 4, 64)}}};
        }});
    add(NopKind::UPDATE_PC, NopInfo{
        "UPDATE_PC", NopCategory::Pc, 1, 0, false, false, {kAddr},
        [](const W& w, const S&) {
            if (w[0] != 64) throw WidthError("UPDATE_PC target must be 64 bits, got " + std::to_string(w[0]));
            return 0u;
        },
        [](const std::vector<BitVec>& in, const S&, const MachineState*) {
            return EvalResult{std::nullopt, {PcUpdateEffect{in[0]}}};
        }});
    add(NopKind::COND_UPDATE_PC, NopInfo{
        "COND_UPDATE_PC", NopCategory::Pc, 3, 0, false, false, {kBit, kAddr, kAddr},
        [](const W& w, const S&) {
            if (w[0] != 1) throw WidthError("COND_UPDATE_PC condition must be 1 bit, got " + std::to_string(w[0]));
            if (w[1] != 64 || w[2] != 64)
                throw WidthError("COND_UPDATE_PC target and pc must be 64 bits");
            return 0u;
        },
        [](const std::vector<BitVec>& in, const S&, const MachineState*) {
            BitVec next = in[0].value() ? in[1] : BitVec(in[2].value() + 4, 64);
            return EvalResult{std::nullopt, {PcUpdateEffect{next}}};
        }});

    // --- AL: bitwise / arithmetic ---
    auto same_width = [](const char* name) {
        std::string n(name);
        return [n](const W& w, const S&) {
            detail::require_equal_widths(n, w[0], w[1]);
            return w[0];
        };
    };
    auto binop = [&](NopKind kind, const char* name, bool comm, auto fn) {
        add(kind, NopInfo{name, NopCategory::Al, 2, 0, comm, true,
                          {partner(1), partner(0)}, same_width(name),
                          [fn](const std::vector<BitVec>& in, const S&, const MachineState*) {
                              return EvalResult{BitVec(fn(in[0], in[1]), in[0].width()), {}};
                          }});
    };
    binop(NopKind::AND, "AND", true, [](const BitVec& a, const BitVec& b) { return a.value() & b.value(); });
    binop(NopKind::OR, "OR", true, [](const BitVec& a, const BitVec& b) { return a.value() | b.value(); });
    binop(NopKind::XOR, "XOR", true, [](const BitVec& a, const BitVec& b) { return a.value() ^ b.value(); });
    binop(NopKind::ADD, "ADD", true, [](const BitVec& a, const BitVec& b) { return a.value() + b.value(); });
    binop(NopKind::SUB, "SUB", false, [](const BitVec& a, const BitVec& b) { return a.value() - b.value(); });
    add(NopKind::NOT, NopInfo{
        "NOT", NopCategory::Al, 1, 0, false, true, {kNo},
        [](const W& w, const S&) { return w[0]; },
        [](const std::vector<BitVec>& in, const S&, const MachineState*) {
            return EvalResult{BitVec(~in[0].value(), in[0].width()), {}};
        }});
    add(NopKind::SIGNED_MUL, NopInfo{
        "SIGNED_MUL", NopCategory::Al, 2, 0, true, true, {partner(1), partner(0)},
        [](const W& w, const S&) {
            unsigned out = w[0] + w[1];
            if (out > kMaxBitVecWidth)
                throw WidthError("SIGNED_MUL result width " + std::to_string(out) + " exceeds 128");
            return out;
        },
        [](const std::vector<BitVec>& in, const S&, const MachineState*) {
            unsigned out = in[0].width() + in[1].width();
            // Unsigned wraparound of the sign-extended factors equals the
            // two's-complement product modulo 2^out.
            u128 a = static_cast<u128>(in[0].to_signed());
            u128 b = static_cast<u128>(in[1].to_signed());
            return EvalResult{BitVec(a * b, out), {}};
        }});

    // --- AL: shifts ---
    auto shift = [&](NopKind kind, const char* name, auto fn) {
        add(kind, NopInfo{name, NopCategory::Al, 2, 0, false, true,
                          {kNo, LiteralSlotRule{LiteralWidth::Minimal, 0, 0, 0}},
                          [](const W& w, const S&) { return w[0]; },
                          [fn](const std::vector<BitVec>& in, const S&, const MachineState*) {
                              std::uint64_t amt = in[1].width() > 64 ? 64 : in[1].to_u64();
                              if (in[1].width() > 64 && (in[1].value() >> 64) != 0) amt = 64 + 64;
                              return EvalResult{BitVec(fn(in[0], amt), in[0].width()), {}};
                          }});
    };
    shift(NopKind::SLL, "SLL", [](const BitVec& x, std::uint64_t amt) -> u128 {
        return amt >= x.width() ? u128{0} : x.value() << amt;
    });
    shift(NopKind::SRL, "SRL", [](const BitVec& x, std::uint64_t amt) -> u128 {
        return amt >= x.width() ? u128{0} : x.value() >> amt;
    });
    shift(NopKind::SRA, "SRA", [](const BitVec& x, std::uint64_t amt) -> u128 {
        return detail::sra_value(x, amt);
    });

    // --- AL: slice / concat / extend ---
    add(NopKind::SLICE, NopInfo{
        "SLICE", NopCategory::Al, 1, 2, false, true, {kNo},
        [](const W& w, const S& s) {
            std::int64_t hi = s[0], lo = s[1];
            if (lo < 0 || hi < lo)
                throw WidthError("SLICE bounds [" + std::to_string(hi) + ":" + std::to_string(lo) +
                                 "] invalid (need hi >= lo >= 0)");
            if (hi >= static_cast<std::int64_t>(w[0]))
                throw WidthError("SLICE hi bit " + std::to_string(hi) + " out of range for width " +
                                 std::to_string(w[0]));
            return static_cast<unsigned>(hi - lo + 1);
        },
        [](const std::vector<BitVec>& in, const S& s, const MachineState*) {
            unsigned hi = static_cast<unsigned>(s[0]), lo = static_cast<unsigned>(s[1]);
            return EvalResult{BitVec(in[0].value() >> lo, hi - lo + 1), {}};
        }});
    add(NopKind::CONCAT, NopInfo{
        "CONCAT", NopCategory::Al, 2, 2, false, true,
        {LiteralSlotRule{LiteralWidth::FromStatic, 0, 0, 0},
         LiteralSlotRule{LiteralWidth::FromStatic, 0, 0, 1}},
        [](const W& w, const S& s) {
            if (s[0] <= 0 || s[1] <= 0) throw WidthError("CONCAT declared widths must be positive");
            if (w[0] != static_cast<unsigned>(s[0]))
                throw WidthError("CONCAT first operand is " + std::to_string(w[0]) +
                                 " bits but declared " + std::to_string(s[0]));
            if (w[1] != static_cast<unsigned>(s[1]))
                throw WidthError("CONCAT second operand is " + std::to_string(w[1]) +
                                 " bits but declared " + std::to_string(s[1]));
            unsigned out = w[0] + w[1];
            if (out > kMaxBitVecWidth) throw WidthError("CONCAT result exceeds 128 bits");
            return out;
        },
        [](const std::vector<BitVec>& in, const S&, const MachineState*) {
            // First operand occupies the high bits.
            unsigned out = in[0].width() + in[1].width();
            return EvalResult{BitVec((in[0].value() << in[1].width()) | in[1].value(), out), {}};
        }});
    auto extend = [&](NopKind kind, const char* name, bool signed_ext) {
        add(kind, NopInfo{name, NopCategory::Al, 1, 2, false, true,
                          {LiteralSlotRule{LiteralWidth::FromStatic, 0, 0, 0}},
                          [name = std::string(name)](const W& w, const S& s) {
                              if (w[0] != static_cast<unsigned>(s[0]))
                                  throw WidthError(name + ": operand is " + std::to_string(w[0]) +
                                                   " bits but declared " + std::to_string(s[0]));
                              if (s[1] < s[0])
                                  throw WidthError(name + ": target width " + std::to_string(s[1]) +
                                                   " below source width " + std::to_string(s[0]));
                              if (s[1] > static_cast<std::int64_t>(kMaxBitVecWidth))
                                  throw WidthError(name + ": target width exceeds 128");
                              return static_cast<unsigned>(s[1]);
                          },
                          [signed_ext](const std::vector<BitVec>& in, const S& s, const MachineState*) {
                              unsigned target = static_cast<unsigned>(s[1]);
                              u128 v = in[0].value();
                              if (signed_ext && in[0].sign_bit())
                                  v |= mask_bits(target) & ~mask_bits(in[0].width());
                              return EvalResult{BitVec(v, target), {}};
                          }});
    };
    extend(NopKind::SIGN_EXTEND, "SIGN_EXTEND", true);
    extend(NopKind::UNSIGN_EXTEND, "UNSIGN_EXTEND", false);

    // --- AL: comparisons (1-bit results) ---
    auto cmp = [&](NopKind kind, const char* name, bool comm, auto fn) {
        std::string n(name);
        add(kind, NopInfo{name, NopCategory::Al, 2, 0, comm, true, {partner(1), partner(0)},
                          [n](const W& w, const S&) {
                              detail::require_equal_widths(n, w[0], w[1]);
                              return 1u;
                          },
                          [fn](const std::vector<BitVec>& in, const S&, const MachineState*) {
                              return EvalResult{BitVec::bit(fn(in[0], in[1])), {}};
                          }});
    };
    cmp(NopKind::CMP_GE_S, "CMP_GE_S", false, [](const BitVec& a, const BitVec& b) { return a.to_signed() >= b.to_signed(); });
    cmp(NopKind::CMP_GE_U, "CMP_GE_U", false, [](const BitVec& a, const BitVec& b) { return a.value() >= b.value(); });
    cmp(NopKind::CMP_GT_S, "CMP_GT_S", false, [](const BitVec& a, const BitVec& b) { return a.to_signed() > b.to_signed(); });
    cmp(NopKind::CMP_GT_U, "CMP_GT_U", false, [](const BitVec& a, const BitVec& b) { return a.value() > b.value(); });
    cmp(NopKind::CMP_LT_S, "CMP_LT_S", false, [](const BitVec& a, const BitVec& b) { return a.to_signed() < b.to_signed(); });
    cmp(NopKind::CMP_LT_U, "CMP_LT_U", false, [](const BitVec& a, const BitVec& b) { return a.value() < b.value(); });
    cmp(NopKind::CMP_LE_S, "CMP_LE_S", false, [](const BitVec& a, const BitVec& b) { return a.to_signed() <= b.to_signed(); });
    cmp(NopKind::CMP_LE_U, "CMP_LE_U", false, [](const BitVec& a, const BitVec& b) { return a.value() <= b.value(); });
    cmp(NopKind::CMP_NE, "CMP_NE", true, [](const BitVec& a, const BitVec& b) { return a.value() != b.value(); });
    cmp(NopKind::CMP_EQ, "CMP_EQ", true, [](const BitVec& a, const BitVec& b) { return a.value() == b.value(); });

    add(NopKind::COND_ASSIGN, NopInfo{
        "COND_ASSIGN", NopCategory::Al, 3, 0, false, true, {kBit, partner(2), partner(1)},
        [](const W& w, const S&) {
            if (w[0] != 1) throw WidthError("COND_ASSIGN condition must be 1 bit, got " + std::to_string(w[0]));
            detail::require_equal_widths("COND_ASSIGN", w[1], w[2]);
            return w[1];
        },
        [](const std::vector<BitVec>& in, const S&, const MachineState*) {
            return EvalResult{in[0].value() ? in[1] : in[2], {}};
        }});
}

/// Output width of `kind` for the given input widths and static arguments.
inline unsigned infer_width(NopKind kind, const std::vector<unsigned>& input_widths,
                            const std::vector<std::int64_t>& static_args = {}) {
    const NopInfo& info = NopRegistry::instance().info(kind);
    detail::require_arity(info, input_widths.size(), static_args.size());
    return info.infer_width(input_widths, static_args);
}

/// Evaluates one nOP. Pure AL kinds return a value and no effects; storage
/// reads return a value; writes and PC kinds return effects only.
inline EvalResult eval_nop(NopKind kind, const std::vector<BitVec>& inputs,
                           const std::vector<std::int64_t>& static_args = {},
                           const MachineState* state = nullptr) {
    const NopInfo& info = NopRegistry::instance().info(kind);
    detail::require_arity(info, inputs.size(), static_args.size());
    std::vector<unsigned> widths;
    widths.reserve(inputs.size());
    for (const auto& b : inputs) widths.push_back(b.width());
    info.infer_width(widths, static_args); // width check; may throw
    if (info.category == NopCategory::Storage && state == nullptr)
        throw std::invalid_argument(info.name + " needs a machine state");
    return info.eval(inputs, static_args, state);
}

inline NopCategory nop_category(NopKind kind) {
    return NopRegistry::instance().info(kind).category;
}

inline const std::string& nop_name(NopKind kind) {
    return NopRegistry::instance().info(kind).name;
}

} // namespace agon

#endif // AGON_NOP_HPP
