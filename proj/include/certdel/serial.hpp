#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "certdel/bitstring.hpp"

namespace certdel {

// Raised by ByteReader on truncated or non-canonical input. Callers that
// implement a bottom-returning decode contract catch it at the boundary.
struct MalformedData : Error {
    using Error::Error;
};

// All multi-byte integers are little-endian. A bit-string field is a u32 bit
// count followed by the packed bytes (LSB-first within each byte, zero
// padding); see docs/FORMATS.md.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }

    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void raw(std::span<const std::uint8_t> bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }

    void bit_field(const BitString& bits) {
        u32(static_cast<std::uint32_t>(bits.size()));
        raw(bits.packed());
    }

    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
        return v;
    }

    std::span<const std::uint8_t> raw(std::size_t n) {
        need(n);
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    BitString bit_field() {
        std::uint32_t n = u32();
        auto bytes = raw((n + 7) / 8);
        try {
            return BitString::unpack(bytes, n);
        } catch (const LengthMismatch& e) {
            throw MalformedData(e.what());
        }
    }

    std::size_t remaining() const { return data_.size() - pos_; }

    void expect_end() const {
        if (pos_ != data_.size()) throw MalformedData("trailing bytes after message");
    }

private:
    void need(std::size_t n) const {
        if (pos_ + n > data_.size()) throw MalformedData("truncated message");
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace certdel
