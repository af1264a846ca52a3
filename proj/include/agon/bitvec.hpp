// agon: fixed-width bit vector, the universal nOP operand type
// SPDX-License-Identifier: Apache-2.0

#ifndef AGON_BITVEC_HPP
#define AGON_BITVEC_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace agon {

using u128 = unsigned __int128;
using i128 = __int128;

class WidthError : public std::runtime_error {
public:
    explicit WidthError(const std::string& msg) : std::runtime_error(msg) {}
};

constexpr unsigned kMaxBitVecWidth = 128;

inline u128 mask_bits(unsigned width) {
    // width in 1..128
    if (width >= 128) return ~u128{0};
    return (u128{1} << width) - 1;
}

/// Value with an explicit bit width. The value is always masked to the width.
class BitVec {
public:
    BitVec() : value_(0), width_(1) {}

    BitVec(u128 value, unsigned width) : width_(width) {
        if (width == 0 || width > kMaxBitVecWidth)
            throw WidthError("BitVec width must be in 1..128, got " + std::to_string(width));
        value_ = value & mask_bits(width);
    }

    static BitVec from_u64(std::uint64_t value, unsigned width = 64) { return BitVec(value, width); }
    static BitVec bit(bool b) { return BitVec(b ? 1 : 0, 1); }

    u128 value() const { return value_; }
    unsigned width() const { return width_; }

    std::uint64_t to_u64() const { return static_cast<std::uint64_t>(value_); }

    // Two's-complement interpretation at this width.
    i128 to_signed() const {
        if (width_ < 128 && (value_ >> (width_ - 1)) & 1)
            return static_cast<i128>(value_ | ~mask_bits(width_));
        return static_cast<i128>(value_);
    }

    bool sign_bit() const { return ((value_ >> (width_ - 1)) & 1) != 0; }

    bool operator==(const BitVec& o) const { return width_ == o.width_ && value_ == o.value_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        unsigned nibbles = (width_ + 3) / 4;
        for (unsigned i = 0; i < nibbles; ++i) {
            unsigned shift = (nibbles - 1 - i) * 4;
            out.push_back(digits[static_cast<unsigned>((value_ >> shift) & 0xF)]);
        }
        return "0x" + out;
    }

    std::string to_string() const { return to_hex() + ":" + std::to_string(width_); }

private:
    u128 value_;
    unsigned width_;
};

inline std::string u128_to_hex(u128 v) {
    static const char* digits = "0123456789abcdef";
    if (v == 0) return "0x0";
    std::string out;
    while (v) {
        out.insert(out.begin(), digits[static_cast<unsigned>(v & 0xF)]);
        v >>= 4;
    }
    return "0x" + out;
}

// Parses 0x..., 0b... or decimal, optionally signed. Throws std::invalid_argument.
inline i128 parse_int128(const std::string& text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
    }
    if (i >= text.size()) throw std::invalid_argument("empty integer literal");
    int base = 10;
    if (text.size() - i > 2 && text[i] == '0' && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
        base = 16;
        i += 2;
    } else if (text.size() - i > 2 && text[i] == '0' && (text[i + 1] == 'b' || text[i + 1] == 'B')) {
        base = 2;
        i += 2;
    }
    u128 acc = 0;
    bool any = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '_') continue;
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = 10 + c - 'a';
        else if (c >= 'A' && c <= 'F') d = 10 + c - 'A';
        else throw std::invalid_argument("bad digit in integer literal: " + text);
        if (d >= base) throw std::invalid_argument("digit out of range for base: " + text);
        acc = acc * static_cast<unsigned>(base) + static_cast<unsigned>(d);
        any = true;
    }
    if (!any) throw std::invalid_argument("empty integer literal: " + text);
    i128 v = static_cast<i128>(acc);
    return neg ? -v : v;
}

} // namespace agon

#endif // AGON_BITVEC_HPP
