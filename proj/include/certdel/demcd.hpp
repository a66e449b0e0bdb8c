#pragma once

#include <optional>
#include <vector>

#include "certdel/dem.hpp"
#include "certdel/qsim.hpp"

namespace certdel::demcd {

// Verification rule. BasisChecked accepts a certificate when it matches the
// encoded string on every Hadamard-encoded position; honest deletion then
// verifies with probability 1. Strict compares all positions and rejects
// honest deletions whenever the encoding basis has a computational position,
// so it is kept only behind a flag.
enum class VrfyMode : std::uint8_t {
    BasisChecked = 0,  // "default" on the command line
    Strict = 1,
};

struct Params {
    dem::Params dem;
    std::size_t lambda = 16;

    void validate() const {
        dem.validate();
        if (lambda < 1) throw ParamError("lambda must be at least 1");
    }

    // key bits consumed per message bit
    std::size_t key_bits_per_bit() const {
        return dem.variant == dem::Variant::Otp ? lambda + 1 : dem.key_len;
    }
};

struct VerificationKey {
    BitString x;
    BitString theta;
};

struct Certificate {
    BitString bits;

    bool operator==(const Certificate&) const = default;
};

// Hybrid one-bit ciphertext: a register of lambda conjugate-coded qubits and
// a classical encryption of (theta, masked bit). The register only exists
// inside a simulation process and is never serialized.
struct Ciphertext {
    qsim::Register qpart;
    dem::Ciphertext cpart;
};

struct EncapResult {
    VerificationKey vk;
    Ciphertext ct;
};

EncapResult encap(const Params& params, const BitString& key, int msg_bit, Rng& rng);

// Decrypts one bit; consumes the register. Returns nothing when the
// classical layer rejects; throws RegisterConsumed after deletion.
std::optional<int> decap(const Params& params, const BitString& key, Ciphertext& ct, Rng& rng);

// Hadamard-measures the register into a deletion certificate.
Certificate del(Ciphertext& ct, Rng& rng);

bool vrfy(const VerificationKey& vk, const Certificate& cert, VrfyMode mode);

// Per-bit application with fresh (x, theta) per bit. The one-time-pad
// variant consumes a disjoint key slice of lambda+1 bits per message bit;
// the stream variant reuses the key with a fresh nonce per bit.
struct MultiEncapResult {
    std::vector<VerificationKey> vks;
    std::vector<Ciphertext> cts;
};

MultiEncapResult encap_multi(const Params& params, const BitString& key, const BitString& msg,
                             Rng& rng);
std::optional<BitString> decap_multi(const Params& params, const BitString& key,
                                     std::vector<Ciphertext>& cts, Rng& rng);
std::vector<Certificate> del_multi(std::vector<Ciphertext>& cts, Rng& rng);
bool vrfy_multi(const std::vector<VerificationKey>& vks, const std::vector<Certificate>& certs,
                VrfyMode mode);

// Key slice used for message bit `index` (identity for the stream variant).
BitString key_slice(const Params& params, const BitString& key, std::size_t index);

std::vector<std::uint8_t> serialize_vk(const VerificationKey& vk);
std::optional<VerificationKey> parse_vk(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_cert(const Certificate& cert);
std::optional<Certificate> parse_cert(std::span<const std::uint8_t> bytes);

}  // namespace certdel::demcd
