#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "certdel/errors.hpp"

namespace certdel {

// Dynamic bit string. Bit 0 is the leftmost bit in the "0110" text form and
// the least significant bit of the u64 and packed-byte forms.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n) : bits_(n, 0) {}

    static BitString from_string(std::string_view s) {
        BitString out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '0' && s[i] != '1') throw ParamError("bit string must contain only 0/1");
            out.bits_[i] = static_cast<std::uint8_t>(s[i] - '0');
        }
        return out;
    }

    static BitString from_u64(std::uint64_t value, std::size_t n) {
        if (n > 64) throw ParamError("from_u64 supports at most 64 bits");
        BitString out(n);
        for (std::size_t i = 0; i < n; ++i) out.bits_[i] = static_cast<std::uint8_t>((value >> i) & 1u);
        return out;
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    int operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, int v) { bits_[i] = static_cast<std::uint8_t>(v & 1); }
    void flip(std::size_t i) { bits_[i] ^= 1u; }

    BitString operator^(const BitString& other) const {
        if (size() != other.size()) throw LengthMismatch("xor of bit strings of different length");
        BitString out(size());
        for (std::size_t i = 0; i < size(); ++i) out.bits_[i] = bits_[i] ^ other.bits_[i];
        return out;
    }

    std::size_t hamming_weight() const {
        std::size_t w = 0;
        for (auto b : bits_) w += b;
        return w;
    }

    std::size_t hamming_distance(const BitString& other) const { return (*this ^ other).hamming_weight(); }

    // XOR of all bits.
    int parity() const {
        std::uint8_t p = 0;
        for (auto b : bits_) p ^= b;
        return p;
    }

    std::uint64_t to_u64() const {
        if (size() > 64) throw ParamError("to_u64 requires at most 64 bits");
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < size(); ++i) v |= static_cast<std::uint64_t>(bits_[i]) << i;
        return v;
    }

    BitString slice(std::size_t pos, std::size_t len) const {
        if (pos + len > size()) throw LengthMismatch("slice out of range");
        BitString out(len);
        for (std::size_t i = 0; i < len; ++i) out.bits_[i] = bits_[pos + i];
        return out;
    }

    void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

    void push_back(int v) { bits_.push_back(static_cast<std::uint8_t>(v & 1)); }

    // Packed little-endian bytes, bit i at byte i/8 position i%8; padding bits zero.
    std::vector<std::uint8_t> packed() const {
        std::vector<std::uint8_t> out((size() + 7) / 8, 0);
        for (std::size_t i = 0; i < size(); ++i)
            if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
        return out;
    }

    static BitString unpack(std::span<const std::uint8_t> bytes, std::size_t n) {
        if (bytes.size() != (n + 7) / 8) throw LengthMismatch("packed byte count does not match bit count");
        BitString out(n);
        for (std::size_t i = 0; i < n; ++i) out.bits_[i] = (bytes[i / 8] >> (i % 8)) & 1u;
        // reject nonzero padding so encodings stay canonical
        if (n % 8 != 0) {
            std::uint8_t pad = static_cast<std::uint8_t>(bytes[n / 8] >> (n % 8));
            if (pad != 0) throw LengthMismatch("nonzero padding bits in packed bit string");
        }
        return out;
    }

    std::string to_string() const {
        std::string s(size(), '0');
        for (std::size_t i = 0; i < size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
        return s;
    }

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        for (auto b : packed()) {
            s.push_back(digits[b >> 4]);
            s.push_back(digits[b & 0xf]);
        }
        return s;
    }

    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bits_;  // one bit per byte
};

inline BitString zeros(std::size_t n) { return BitString(n); }

inline BitString ones(std::size_t n) {
    BitString out(n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, 1);
    return out;
}

}  // namespace certdel
