#pragma once

#include "certdel/bitstring.hpp"
#include "certdel/rng.hpp"

namespace certdel::correlated {

// Binary-symmetric broadcast source: the sender's sample is uniform, the
// receiver and the eavesdropper see it through independent bit-flip channels
// with rates p_b and p_e.
struct SourceSpec {
    std::size_t n = 64;
    double p_b = 0.0;
    double p_e = 0.5;

    void validate() const {
        if (n < 1) throw ParamError("source length must be at least 1");
        if (p_b < 0 || p_b > 0.5) throw ParamError("p_b must lie in [0, 0.5]");
        if (p_e < 0 || p_e > 0.5) throw ParamError("p_e must lie in [0, 0.5]");
    }
};

struct Triple {
    BitString x, y, z;
};

inline Triple sample(const SourceSpec& spec, Rng& rng) {
    spec.validate();
    Triple t;
    t.x = rng.bits(spec.n);
    t.y = t.x;
    t.z = t.x;
    for (std::size_t i = 0; i < spec.n; ++i) {
        if (rng.bernoulli(spec.p_b)) t.y.flip(i);
        if (rng.bernoulli(spec.p_e)) t.z.flip(i);
    }
    return t;
}

}  // namespace certdel::correlated
