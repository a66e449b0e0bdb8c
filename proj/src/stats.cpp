#include "certdel/stats.hpp"

#include <algorithm>
#include <cmath>

namespace certdel::stats {

Interval wilson(long count, long total, double z) {
    if (total <= 0) throw ParamError("interval needs at least one trial");
    if (count < 0 || count > total) throw ParamError("count out of range");
    double n = double(total);
    double p = double(count) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = (z / denom) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Interval newcombe_diff(const Proportion& a0, const Proportion& a1, double z) {
    Interval w0 = wilson(a0.count, a0.total, z);
    Interval w1 = wilson(a1.count, a1.total, z);
    double p0 = a0.rate(), p1 = a1.rate();
    double d = p0 - p1;
    double lo = d - std::sqrt((p0 - w0.lo) * (p0 - w0.lo) + (w1.hi - p1) * (w1.hi - p1));
    double hi = d + std::sqrt((w0.hi - p0) * (w0.hi - p0) + (p1 - w1.lo) * (p1 - w1.lo));
    return {std::max(-1.0, lo), std::min(1.0, hi)};
}

Interval abs_interval(Interval iv) {
    if (iv.lo <= 0.0 && 0.0 <= iv.hi) return {0.0, std::max(iv.hi, -iv.lo)};
    double a = std::abs(iv.lo), b = std::abs(iv.hi);
    return {std::min(a, b), std::max(a, b)};
}

Advantage advantage_estimate(const Proportion& a0, const Proportion& a1, double z) {
    Advantage out;
    out.value = std::abs(a0.rate() - a1.rate());
    out.ci = abs_interval(newcombe_diff(a0, a1, z));
    return out;
}

}  // namespace certdel::stats
