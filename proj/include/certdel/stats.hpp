#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "certdel/errors.hpp"

namespace certdel::stats {

// two-sided 99% normal quantile
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
    double lo = 0;
    double hi = 0;

    double half_width() const { return 0.5 * (hi - lo); }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

struct Proportion {
    long count = 0;
    long total = 0;

    double rate() const { return total == 0 ? 0.0 : double(count) / double(total); }
};

// Wilson score interval for a binomial proportion.
Interval wilson(long count, long total, double z = kZ99);

// Newcombe hybrid score interval for the difference p0 - p1 of independent
// proportions.
Interval newcombe_diff(const Proportion& a0, const Proportion& a1, double z = kZ99);

// Image of an interval under the absolute value.
Interval abs_interval(Interval signed_iv);

// Point estimate and 99% interval for |p0 - p1|.
struct Advantage {
    double value = 0;
    Interval ci;
};

Advantage advantage_estimate(const Proportion& a0, const Proportion& a1, double z = kZ99);

inline double binomial_sigma(double p, long n) {
    return n == 0 ? 0.0 : std::sqrt(p * (1 - p) / double(n));
}

}  // namespace certdel::stats
