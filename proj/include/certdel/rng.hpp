#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "certdel/bitstring.hpp"

namespace certdel {

inline constexpr std::uint64_t kGolden64 = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden64;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic random source. All distributions are hand-rolled on top of
// the standard-specified mt19937_64 output stream, so identical seeds give
// identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    int bit() { return static_cast<int>(next() >> 63); }

    BitString bits(std::size_t n) {
        BitString out(n);
        for (std::size_t i = 0; i < n; ++i) out.set(i, bit());
        return out;
    }

    std::uint8_t byte() { return static_cast<std::uint8_t>(next() >> 56); }

    std::vector<std::uint8_t> bytes(std::size_t n) {
        std::vector<std::uint8_t> out(n);
        for (auto& b : out) b = byte();
        return out;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw ParamError("below(0)");
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::mt19937_64 engine_;
};

// Derives an independent stream from a master seed and a label path by
// folding each label through splitmix64. Used to give every (game, arm,
// trial, role) its own reproducible stream.
inline Rng derive_rng(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = splitmix64(master);
    for (auto label : path) s = splitmix64(s ^ splitmix64(label));
    return Rng(s);
}

}  // namespace certdel
