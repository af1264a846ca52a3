// agon: architectural machine state and instruction effect records
// SPDX-License-Identifier: Apache-2.0

#ifndef AGON_MACHINE_STATE_HPP
#define AGON_MACHINE_STATE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "agon/bitvec.hpp"

namespace agon {

class MemoryError : public std::runtime_error {
public:
    explicit MemoryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// PC + 32 x 64-bit registers + sparse little-endian byte memory.
/// x0 reads as zero and swallows writes.
struct MachineState {
    std::uint64_t pc = 0;
    std::array<std::uint64_t, 32> regs{};
    std::map<std::uint64_t, std::uint8_t> mem;

    std::uint64_t read_reg(unsigned idx) const { return idx == 0 ? 0 : regs.at(idx); }

    void write_reg(unsigned idx, std::uint64_t value) {
        if (idx == 0) return;
        regs.at(idx) = value;
    }

    static void check_access_size(unsigned nbytes) {
        if (nbytes != 1 && nbytes != 2 && nbytes != 4 && nbytes != 8)
            throw MemoryError("memory access size must be 1, 2, 4 or 8 bytes, got " +
                              std::to_string(nbytes));
    }

    BitVec read_mem(std::uint64_t addr, unsigned nbytes) const {
        check_access_size(nbytes);
        u128 v = 0;
        for (unsigned i = 0; i < nbytes; ++i) {
            auto it = mem.find(addr + i);
            std::uint8_t byte = it == mem.end() ? 0 : it->second;
            v |= u128{byte} << (8 * i);
        }
        return BitVec(v, 8 * nbytes);
    }

    void write_mem(std::uint64_t addr, unsigned nbytes, const BitVec& value) {
        check_access_size(nbytes);
        for (unsigned i = 0; i < nbytes; ++i)
            mem[addr + i] = static_cast<std::uint8_t>((value.value() >> (8 * i)) & 0xFF);
    }

    // Untouched memory is zero, so zero bytes do not distinguish states.
    bool operator==(const MachineState& o) const {
        if (pc != o.pc) return false;
        for (unsigned i = 1; i < 32; ++i)
            if (regs[i] != o.regs[i]) return false;
        auto next_nonzero = [](auto it, auto end) {
            while (it != end && it->second == 0) ++it;
            return it;
        };
        auto a = next_nonzero(mem.begin(), mem.end());
        auto b = next_nonzero(o.mem.begin(), o.mem.end());
        while (a != mem.end() && b != o.mem.end()) {
            if (a->first != b->first || a->second != b->second) return false;
            a = next_nonzero(++a, mem.end());
            b = next_nonzero(++b, o.mem.end());
        }
        return a == mem.end() && b == o.mem.end();
    }
};

struct RegWriteEffect {
    unsigned reg;
    BitVec value; // 64 bits
    bool operator==(const RegWriteEffect&) const = default;
};

struct MemWriteEffect {
    std::uint64_t addr;
    unsigned nbytes;
    BitVec value; // 8*nbytes bits
    bool operator==(const MemWriteEffect&) const = default;
};

struct PcUpdateEffect {
    BitVec target; // 64 bits
    bool operator==(const PcUpdateEffect&) const = default;
};

using Effect = std::variant<RegWriteEffect, MemWriteEffect, PcUpdateEffect>;

/// Ordered observable outputs of one instruction execution.
/// Exactly one PcUpdate, always last.
struct StateDelta {
    std::vector<Effect> effects;

    void apply(MachineState& st) const {
        for (const auto& e : effects) {
            if (const auto* rw = std::get_if<RegWriteEffect>(&e)) {
                st.write_reg(rw->reg, rw->value.to_u64());
            } else if (const auto* mw = std::get_if<MemWriteEffect>(&e)) {
                st.write_mem(mw->addr, mw->nbytes, mw->value);
            } else {
                st.pc = std::get<PcUpdateEffect>(e).target.to_u64();
            }
        }
    }

    std::uint64_t next_pc() const {
        for (auto it = effects.rbegin(); it != effects.rend(); ++it)
            if (const auto* pu = std::get_if<PcUpdateEffect>(&*it)) return pu->target.to_u64();
        throw std::logic_error("StateDelta has no PcUpdate");
    }

    bool operator==(const StateDelta&) const = default;

    std::string to_string() const {
        std::string out;
        for (const auto& e : effects) {
            if (const auto* rw = std::get_if<RegWriteEffect>(&e)) {
                out += "reg x" + std::to_string(rw->reg) + " <- " + rw->value.to_string() + "\n";
            } else if (const auto* mw = std::get_if<MemWriteEffect>(&e)) {
                out += "mem[" + u128_to_hex(mw->addr) + "]:" + std::to_string(mw->nbytes) +
                       " <- " + mw->value.to_string() + "\n";
            } else {
                out += "pc <- " + std::get<PcUpdateEffect>(e).target.to_string() + "\n";
            }
        }
        return out;
    }
};

} // namespace agon

#endif // AGON_MACHINE_STATE_HPP
