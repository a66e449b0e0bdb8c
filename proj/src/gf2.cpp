#include "certdel/gf2.hpp"

#include <bit>
#include <map>
#include <mutex>

namespace certdel::gf2 {

namespace {

using u128 = unsigned __int128;

int poly_degree(u128 f) {
    int d = -1;
    for (int i = 0; i < 128; ++i)
        if ((f >> i) & 1) d = i;
    return d;
}

u128 poly_mul(u128 a, std::uint64_t b) {
    u128 out = 0;
    for (int i = 0; i < 64; ++i)
        if ((b >> i) & 1) out ^= a << i;
    return out;
}

u128 poly_mod(u128 a, u128 f, int deg_f) {
    int da = poly_degree(a);
    while (da >= deg_f) {
        a ^= f << (da - deg_f);
        da = poly_degree(a);
    }
    return a;
}

u128 poly_gcd(u128 a, u128 b) {
    while (b != 0) {
        int db = poly_degree(b);
        a = poly_mod(a, b, db);
        std::swap(a, b);
    }
    return a;
}

// (a * b) mod f for residues of degree < deg_f <= 64
std::uint64_t residue_mul(std::uint64_t a, std::uint64_t b, u128 f, int deg_f) {
    u128 prod = poly_mul(static_cast<u128>(a), b);
    return static_cast<std::uint64_t>(poly_mod(prod, f, deg_f));
}

// x^(2^k) mod f via repeated squaring
std::uint64_t frobenius_power(int k, u128 f, int deg_f) {
    std::uint64_t v = 2;  // the polynomial x
    for (int i = 0; i < k; ++i) v = residue_mul(v, v, f, deg_f);
    return v;
}

std::vector<int> prime_factors(int n) {
    std::vector<int> out;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus_low, int degree) {
    u128 f = (static_cast<u128>(1) << degree) | modulus_low;
    return residue_mul(a, b, f, degree);
}

bool is_irreducible(std::uint64_t low_bits, int degree) {
    if (degree < 1) return false;
    if ((low_bits & 1) == 0) return false;  // reducible: divisible by x
    if (degree < 64 && low_bits >= (std::uint64_t{1} << degree)) return false;
    u128 f = (static_cast<u128>(1) << degree) | low_bits;
    std::uint64_t x_residue = static_cast<std::uint64_t>(poly_mod(2, f, degree));
    // x^(2^n) == x (mod f)
    if (frobenius_power(degree, f, degree) != x_residue) return false;
    for (int p : prime_factors(degree)) {
        std::uint64_t v = frobenius_power(degree / p, f, degree);
        if (poly_gcd(static_cast<u128>(v ^ x_residue), f) != 1) return false;
    }
    return true;
}

std::uint64_t field_poly(int degree) {
    if (degree < 1 || degree > 64) throw ParamError("field degree must lie in [1, 64]");
    static std::map<int, std::uint64_t> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto it = cache.find(degree);
    if (it != cache.end()) return it->second;
    for (std::uint64_t low = 1; degree == 64 || low < (std::uint64_t{1} << degree); low += 2) {
        if (is_irreducible(low, degree)) {
            cache[degree] = low;
            return low;
        }
    }
    throw ParamError("no irreducible polynomial found");  // unreachable for degree >= 1
}

SyndromeCode::SyndromeCode(std::size_t n, std::size_t r, std::uint64_t seed, int radius)
    : n_(n), r_(r) {
    if (n < 1 || n > 64) throw ParamError("code length must lie in [1, 64]");
    if (r < 1 || r >= n || r > 20) throw ParamError("syndrome length must lie in [1, min(n-1, 20)]");
    if (radius < 0 || static_cast<std::size_t>(radius) > n) throw ParamError("bad decode radius");

    Rng rng(seed);
    std::uint32_t mask = (r == 32) ? ~0u : ((1u << r) - 1);
    bool want_distinct = n <= (std::size_t{1} << r) - 1;
    std::vector<bool> used(std::size_t{1} << r, false);
    columns_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t col;
        do {
            col = static_cast<std::uint32_t>(rng.next()) & mask;
        } while (col == 0 || (want_distinct && used[col]));
        used[col] = true;
        columns_[i] = col;
    }

    // coset-leader table: enumerate error patterns by increasing weight so
    // the first writer is a minimum-weight representative
    leaders_.assign(std::size_t{1} << r, kNoLeader);
    leaders_[0] = 0;
    std::vector<std::size_t> idx;
    for (int w = 1; w <= radius && static_cast<std::size_t>(w) <= n_; ++w) {
        idx.resize(w);
        for (int i = 0; i < w; ++i) idx[i] = i;
        while (true) {
            std::uint64_t pattern = 0;
            std::uint32_t syn = 0;
            for (int i = 0; i < w; ++i) {
                pattern |= std::uint64_t{1} << idx[i];
                syn ^= columns_[idx[i]];
            }
            if (leaders_[syn] == kNoLeader) leaders_[syn] = pattern;
            // next combination
            int j = w - 1;
            while (j >= 0 && idx[j] == n_ - static_cast<std::size_t>(w - j)) --j;
            if (j < 0) break;
            ++idx[j];
            for (int k = j + 1; k < w; ++k) idx[k] = idx[k - 1] + 1;
        }
    }
}

std::uint32_t SyndromeCode::syndrome_word(std::uint64_t x) const {
    std::uint32_t s = 0;
    while (x != 0) {
        int i = std::countr_zero(x);
        s ^= columns_[i];
        x &= x - 1;
    }
    return s;
}

BitString SyndromeCode::syndrome(const BitString& x) const {
    if (x.size() != n_) throw LengthMismatch("syndrome input length differs from code length");
    return BitString::from_u64(syndrome_word(x.to_u64()), r_);
}

std::optional<std::uint64_t> SyndromeCode::coset_leader(std::uint32_t syndrome) const {
    std::uint64_t leader = leaders_[syndrome];
    if (leader == kNoLeader) return std::nullopt;
    return leader;
}

}  // namespace certdel::gf2
