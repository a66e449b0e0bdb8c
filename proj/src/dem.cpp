#include "certdel/dem.hpp"

#include <sodium.h>

#include "certdel/serial.hpp"

namespace certdel::dem {

namespace {

std::array<std::uint8_t, 32> stream_key_bytes(const BitString& key) {
    if (key.size() > kMaxStreamKeyBits) throw ParamError("stream key too long");
    std::array<std::uint8_t, 32> out{};
    auto packed = key.packed();
    std::copy(packed.begin(), packed.end(), out.begin());
    return out;
}

}  // namespace

BitString gen(const Params& params, Rng& rng) {
    params.validate();
    return rng.bits(params.key_len);
}

BitString keystream(const BitString& key, std::span<const std::uint8_t> nonce, std::size_t nbits) {
    if (nonce.size() != kNonceBytes) throw ParamError("nonce must have 12 bytes");
    auto key_bytes = stream_key_bytes(key);
    std::vector<std::uint8_t> buf((nbits + 7) / 8, 0);
    if (!buf.empty())
        crypto_stream_chacha20_ietf(buf.data(), buf.size(), nonce.data(), key_bytes.data());
    // clear padding so the unpacked form is canonical
    if (nbits % 8 != 0) buf.back() &= static_cast<std::uint8_t>((1u << (nbits % 8)) - 1);
    return BitString::unpack(buf, nbits);
}

Ciphertext encap(const Params& params, const BitString& key, const BitString& msg, Rng& rng) {
    params.validate();
    if (key.size() != params.key_len) throw LengthMismatch("key length differs from configuration");
    Ciphertext ct;
    ct.variant = params.variant;
    if (params.variant == Variant::Otp) {
        if (msg.size() > key.size()) throw LengthMismatch("one-time pad key shorter than the message");
        ct.payload = msg ^ key.slice(0, msg.size());
    } else {
        auto nonce = rng.bytes(kNonceBytes);
        std::copy(nonce.begin(), nonce.end(), ct.nonce.begin());
        ct.payload = msg ^ keystream(key, ct.nonce, msg.size());
    }
    return ct;
}

std::optional<BitString> decap(const Params& params, const BitString& key, const Ciphertext& ct) {
    params.validate();
    if (key.size() != params.key_len) throw LengthMismatch("key length differs from configuration");
    if (ct.variant != params.variant) return std::nullopt;
    if (params.variant == Variant::Otp) {
        if (ct.payload.size() > key.size()) return std::nullopt;
        return ct.payload ^ key.slice(0, ct.payload.size());
    }
    return ct.payload ^ keystream(key, ct.nonce, ct.payload.size());
}

std::vector<std::uint8_t> serialize(const Ciphertext& ct) {
    ByteWriter w;
    w.u8(static_cast<std::uint8_t>(ct.variant));
    if (ct.variant == Variant::Stream) w.raw(ct.nonce);
    w.bit_field(ct.payload);
    return w.take();
}

std::optional<Ciphertext> parse(std::span<const std::uint8_t> bytes) {
    try {
        ByteReader r(bytes);
        Ciphertext ct;
        std::uint8_t tag = r.u8();
        if (tag > 1) return std::nullopt;
        ct.variant = static_cast<Variant>(tag);
        if (ct.variant == Variant::Stream) {
            auto nonce = r.raw(kNonceBytes);
            std::copy(nonce.begin(), nonce.end(), ct.nonce.begin());
        }
        ct.payload = r.bit_field();
        r.expect_end();
        return ct;
    } catch (const MalformedData&) {
        return std::nullopt;
    }
}

}  // namespace certdel::dem
