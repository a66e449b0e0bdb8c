#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "certdel/bitstring.hpp"
#include "certdel/rng.hpp"

namespace certdel::gf2 {

// Polynomials over GF(2) packed into machine words, bit i = coefficient of x^i.

// Product of a and b reduced modulo x^degree + modulus_low, degree <= 64.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus_low, int degree);

// True when x^degree + low_bits is irreducible over GF(2).
bool is_irreducible(std::uint64_t low_bits, int degree);

// Low bits of the smallest (as an integer) irreducible polynomial of the
// given degree with constant term 1. Cached; deterministic.
std::uint64_t field_poly(int degree);

// Random syndrome code: r parity checks over n-bit words, decoded through a
// coset-leader table filled with error patterns of weight <= radius. Columns
// of the parity-check matrix are drawn from the seed (nonzero, and distinct
// while the space allows it).
class SyndromeCode {
public:
    SyndromeCode(std::size_t n, std::size_t r, std::uint64_t seed, int radius);

    std::size_t n() const { return n_; }
    std::size_t r() const { return r_; }

    std::uint32_t syndrome_word(std::uint64_t x) const;
    BitString syndrome(const BitString& x) const;

    // Minimum-weight error pattern recorded for the syndrome, if any was
    // reachable within the radius.
    std::optional<std::uint64_t> coset_leader(std::uint32_t syndrome) const;

private:
    std::size_t n_, r_;
    std::vector<std::uint32_t> columns_;
    std::vector<std::uint64_t> leaders_;  // kNoLeader when unfilled
    static constexpr std::uint64_t kNoLeader = ~std::uint64_t{0};
};

}  // namespace certdel::gf2
