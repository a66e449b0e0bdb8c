#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "certdel/bitstring.hpp"
#include "certdel/rng.hpp"

namespace certdel::dem {

enum class Variant : std::uint8_t {
    Otp = 0,     // message XOR key prefix; information-theoretic, one-time
    Stream = 1,  // message XOR ChaCha20 keystream under a fresh 12-byte nonce
};

inline constexpr std::size_t kNonceBytes = 12;
inline constexpr std::size_t kMaxStreamKeyBits = 256;

struct Params {
    Variant variant = Variant::Otp;
    std::size_t key_len = 16;

    void validate() const {
        if (key_len < 1) throw ParamError("key length must be at least 1");
        if (variant == Variant::Stream && key_len > kMaxStreamKeyBits)
            throw ParamError("stream keys longer than 256 bits are not supported");
    }
};

struct Ciphertext {
    Variant variant = Variant::Otp;
    BitString payload;
    std::array<std::uint8_t, kNonceBytes> nonce{};  // stream variant only

    bool operator==(const Ciphertext&) const = default;
};

// Uniform key of the configured length.
BitString gen(const Params& params, Rng& rng);

// Raw keystream bits for a key/nonce pair; exposed for test vectors.
BitString keystream(const BitString& key, std::span<const std::uint8_t> nonce, std::size_t nbits);

Ciphertext encap(const Params& params, const BitString& key, const BitString& msg, Rng& rng);

std::optional<BitString> decap(const Params& params, const BitString& key, const Ciphertext& ct);

// Wire form: 1-byte variant tag, 12-byte nonce for the stream variant, then
// the payload as a bit field.
std::vector<std::uint8_t> serialize(const Ciphertext& ct);
std::optional<Ciphertext> parse(std::span<const std::uint8_t> bytes);

}  // namespace certdel::dem
