#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "certdel/bitstring.hpp"
#include "certdel/correlated.hpp"
#include "certdel/rng.hpp"

namespace certdel::ikem {

// Concrete key encapsulation over the correlated source: syndrome
// reconciliation with a short random linear code, plus a field-multiplication
// hash whose output windows give the confirmation tag and the extracted key.
// The fresh per-encapsulation salt is the hash key, one field element of n
// bits; the tag occupies hash bits [0, check_len) and the key the next
// key_len bits.
struct Params {
    correlated::SourceSpec source;
    std::size_t key_len = 16;    // extracted key bits
    std::size_t recon_len = 16;  // syndrome bits
    std::size_t check_len = 8;   // confirmation tag bits
    int decode_radius = 2;
    std::uint64_t code_seed = 1;

    void validate() const;
};

struct Capsule {
    BitString salt;
    BitString recon;
    BitString tag;

    bool operator==(const Capsule&) const = default;
};

struct EncapResult {
    BitString key;
    Capsule ct;
};

// Joint hash output for a salt: confirmation tag and extracted key windows.
struct HashOutput {
    BitString tag;
    BitString key;
};

correlated::Triple gen(const Params& params, Rng& rng);

EncapResult encap(const BitString& x, const Params& params, Rng& rng);

std::optional<BitString> decap(const BitString& y, const Capsule& capsule, const Params& params);

// The confirmation/extraction hash on its own; exposed so game adversaries
// can recompute candidate keys from their side information.
HashOutput extract(const Params& params, const BitString& salt, const BitString& x);

// Exact statistical distance between (Z, capsule, key) and (Z, capsule,
// uniform), by exhaustive enumeration over the sender sample, the
// eavesdropper noise and the salt. Feasible only at tiny parameters
// (n <= 12, key_len <= 4).
double exact_key_distance(const Params& params);

std::vector<std::uint8_t> serialize_capsule(const Capsule& capsule);
std::optional<Capsule> parse_capsule(std::span<const std::uint8_t> bytes);

}  // namespace certdel::ikem
