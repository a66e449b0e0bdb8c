#pragma once

#include <optional>
#include <vector>

#include "certdel/demcd.hpp"
#include "certdel/ikem.hpp"

namespace certdel::phecd {

// Composed hybrid scheme: one key encapsulation establishes the data key,
// the payload carries one conjugate-coded unit per message bit. Setting
// per_bit_capsule runs a fresh encapsulation per message bit instead.
struct Params {
    ikem::Params ikem;
    dem::Variant dem_variant = dem::Variant::Stream;
    std::size_t lambda = 16;
    bool per_bit_capsule = false;

    dem::Params dem_params() const { return dem::Params{dem_variant, ikem.key_len}; }
    demcd::Params demcd_params() const { return demcd::Params{dem_params(), lambda}; }

    void validate(std::size_t msg_bits = 1) const {
        ikem.validate();
        demcd_params().validate();
        if (dem_variant == dem::Variant::Otp) {
            std::size_t bits_per_unit = per_bit_capsule ? 1 : msg_bits;
            if (ikem.key_len < (lambda + 1) * bits_per_unit)
                throw ParamError("one-time pad mode needs (lambda+1) key bits per message bit");
        }
    }
};

struct Ciphertext {
    std::vector<ikem::Capsule> capsules;  // one, or one per bit in per-bit mode
    std::vector<demcd::Ciphertext> payload;
};

struct EncResult {
    std::vector<demcd::VerificationKey> vks;
    Ciphertext ct;
    // encapsulated data keys, one per capsule; consumed by game
    // environments when a verified deletion releases the key
    std::vector<BitString> keys;
};

correlated::Triple keygen(const Params& params, Rng& rng);

EncResult enc(const BitString& x, const BitString& msg, const Params& params, Rng& rng);

std::optional<BitString> dec(const BitString& y, Ciphertext& ct, const Params& params, Rng& rng);

std::vector<demcd::Certificate> del(Ciphertext& ct, Rng& rng);

bool vrfy(const std::vector<demcd::VerificationKey>& vks,
          const std::vector<demcd::Certificate>& certs, demcd::VrfyMode mode);

// Classical parts only; the quantum registers never leave the process.
std::vector<std::uint8_t> serialize_classical(const Ciphertext& ct);
std::vector<std::uint8_t> serialize_vks(const std::vector<demcd::VerificationKey>& vks);
std::vector<std::uint8_t> serialize_certs(const std::vector<demcd::Certificate>& certs);

}  // namespace certdel::phecd
