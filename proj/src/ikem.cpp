#include "certdel/ikem.hpp"

#include <bit>
#include <cmath>
#include <future>
#include <map>
#include <memory>
#include <mutex>

#include "certdel/gf2.hpp"
#include "certdel/serial.hpp"

namespace certdel::ikem {

namespace {

// Decode tables are deterministic in (n, r, seed, radius); share them across
// encap/decap calls and trials.
std::shared_ptr<const gf2::SyndromeCode> code_for(const Params& p) {
    using Key = std::tuple<std::size_t, std::size_t, std::uint64_t, int>;
    static std::map<Key, std::shared_ptr<const gf2::SyndromeCode>> cache;
    static std::mutex mutex;
    Key key{p.source.n, p.recon_len, p.code_seed, p.decode_radius};
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto code = std::make_shared<const gf2::SyndromeCode>(p.source.n, p.recon_len, p.code_seed,
                                                          p.decode_radius);
    cache[key] = code;
    return code;
}

HashOutput extract_words(const Params& p, std::uint64_t salt, std::uint64_t x) {
    std::size_t n = p.source.n;
    std::uint64_t prod = gf2::mulmod(salt, x, gf2::field_poly(static_cast<int>(n)),
                                     static_cast<int>(n));
    HashOutput out;
    out.tag = BitString::from_u64(prod & ((p.check_len == 64) ? ~0ull : ((1ull << p.check_len) - 1)),
                                  p.check_len);
    std::uint64_t key_bits = prod >> p.check_len;
    out.key = BitString::from_u64(
        p.key_len == 0 ? 0 : key_bits & ((p.key_len == 64) ? ~0ull : ((1ull << p.key_len) - 1)),
        p.key_len);
    return out;
}

}  // namespace

void Params::validate() const {
    source.validate();
    if (source.n > 64) throw ParamError("source length above 64 is not supported");
    if (check_len < 1) throw ParamError("confirmation tag needs at least 1 bit");
    if (key_len + check_len > source.n)
        throw ParamError("key and tag windows exceed the hash output width");
    if (recon_len < 1 || recon_len >= source.n || recon_len > 20)
        throw ParamError("reconciliation length must lie in [1, min(n-1, 20)]");
    if (decode_radius < 0 || static_cast<std::size_t>(decode_radius) > source.n)
        throw ParamError("bad decode radius");
}

correlated::Triple gen(const Params& params, Rng& rng) {
    params.validate();
    return correlated::sample(params.source, rng);
}

EncapResult encap(const BitString& x, const Params& params, Rng& rng) {
    if (x.size() != params.source.n) throw LengthMismatch("sample length differs from source length");
    auto code = code_for(params);
    EncapResult out;
    out.ct.salt = rng.bits(params.source.n);
    out.ct.recon = code->syndrome(x);
    HashOutput h = extract(params, out.ct.salt, x);
    out.ct.tag = std::move(h.tag);
    out.key = std::move(h.key);
    return out;
}

std::optional<BitString> decap(const BitString& y, const Capsule& capsule, const Params& params) {
    if (y.size() != params.source.n) throw LengthMismatch("sample length differs from source length");
    if (capsule.salt.size() != params.source.n || capsule.recon.size() != params.recon_len ||
        capsule.tag.size() != params.check_len)
        throw LengthMismatch("capsule field lengths do not match the parameters");
    auto code = code_for(params);

    std::uint32_t delta = code->syndrome_word(y.to_u64()) ^
                          static_cast<std::uint32_t>(capsule.recon.to_u64());
    auto leader = code->coset_leader(delta);
    if (!leader) return std::nullopt;
    BitString candidate = y ^ BitString::from_u64(*leader, params.source.n);
    HashOutput h = extract(params, capsule.salt, candidate);
    if (h.tag != capsule.tag) return std::nullopt;
    return h.key;
}

HashOutput extract(const Params& params, const BitString& salt, const BitString& x) {
    if (salt.size() != params.source.n || x.size() != params.source.n)
        throw LengthMismatch("hash inputs must have the source length");
    return extract_words(params, salt.to_u64(), x.to_u64());
}

double exact_key_distance(const Params& params) {
    params.validate();
    std::size_t n = params.source.n;
    if (n > 12 || params.key_len > 4)
        throw ParamError("exact enumeration requires n <= 12 and key_len <= 4");

    const std::size_t N = std::size_t{1} << n;
    const std::size_t l = params.key_len, c = params.check_len, r = params.recon_len;
    const std::size_t key_space = std::size_t{1} << l;
    const std::size_t group_count = std::size_t{1} << (r + c);
    const double p_e = params.source.p_e;
    auto code = code_for(params);
    const std::uint64_t poly = gf2::field_poly(static_cast<int>(n));

    // P(z | x) depends only on the Hamming distance
    std::vector<double> flip_weight(n + 1);
    for (std::size_t d = 0; d <= n; ++d)
        flip_weight[d] = std::pow(p_e, double(d)) * std::pow(1.0 - p_e, double(n - d));

    std::vector<std::uint32_t> recon_of(N);
    for (std::size_t x = 0; x < N; ++x) recon_of[x] = code->syndrome_word(x);

    const double sample_weight = 1.0 / double(N);  // P(x), and also P(salt)

    // One salt's contribution: for each z, bucket P(x)P(z|x) by
    // (recon, tag, key) and accumulate |P(cell) - P(group)/2^l| over cells.
    auto run_chunk = [&](std::size_t salt_begin, std::size_t salt_end) {
        std::vector<std::uint32_t> cell_of(N);
        std::vector<double> acc(group_count << l, 0.0);
        std::vector<std::uint32_t> stamp(group_count << l, 0);
        std::vector<double> group_sum(group_count, 0.0);
        std::vector<std::uint32_t> group_cells(group_count, 0);
        std::vector<std::uint32_t> group_stamp(group_count, 0);
        std::vector<std::uint32_t> touched(N);
        std::uint32_t epoch = 0;

        double total = 0.0;
        for (std::size_t salt = salt_begin; salt < salt_end; ++salt) {
            for (std::size_t x = 0; x < N; ++x) {
                std::uint64_t prod = gf2::mulmod(salt, x, poly, static_cast<int>(n));
                std::uint32_t tag = static_cast<std::uint32_t>(prod & ((1ull << c) - 1));
                std::uint32_t key = static_cast<std::uint32_t>((prod >> c) & (key_space - 1));
                cell_of[x] = ((recon_of[x] << c | tag) << l) | key;
            }
            for (std::size_t z = 0; z < N; ++z) {
                ++epoch;
                std::size_t touched_count = 0;
                for (std::size_t x = 0; x < N; ++x) {
                    double w = sample_weight * flip_weight[std::popcount(x ^ z)];
                    std::uint32_t cell = cell_of[x];
                    if (stamp[cell] != epoch) {
                        stamp[cell] = epoch;
                        acc[cell] = 0.0;
                        touched[touched_count++] = cell;
                    }
                    acc[cell] += w;
                }
                // group sums over the key index
                for (std::size_t t = 0; t < touched_count; ++t) {
                    std::uint32_t g = touched[t] >> l;
                    if (group_stamp[g] != epoch) {
                        group_stamp[g] = epoch;
                        group_sum[g] = 0.0;
                        group_cells[g] = 0;
                    }
                    group_sum[g] += acc[touched[t]];
                    ++group_cells[g];
                }
                for (std::size_t t = 0; t < touched_count; ++t) {
                    std::uint32_t g = touched[t] >> l;
                    double uniform_share = group_sum[g] / double(key_space);
                    total += std::abs(acc[touched[t]] - uniform_share);
                    // untouched key cells of this group each miss uniform_share;
                    // account for them once, from the group's first cell
                    if (group_cells[g] != 0) {
                        total += double(key_space - group_cells[g]) * uniform_share;
                        group_cells[g] = 0;
                    }
                }
            }
        }
        return total;
    };

    // fixed chunking keeps the floating-point reduction order stable
    const std::size_t chunks = 8;
    std::vector<std::future<double>> futures;
    for (std::size_t i = 0; i < chunks; ++i) {
        std::size_t begin = N * i / chunks, end = N * (i + 1) / chunks;
        futures.push_back(std::async(std::launch::async, run_chunk, begin, end));
    }
    double total = 0.0;
    for (auto& f : futures) total += f.get();
    return 0.5 * sample_weight * total;
}

std::vector<std::uint8_t> serialize_capsule(const Capsule& capsule) {
    ByteWriter w;
    w.bit_field(capsule.salt);
    w.bit_field(capsule.recon);
    w.bit_field(capsule.tag);
    return w.take();
}

std::optional<Capsule> parse_capsule(std::span<const std::uint8_t> bytes) {
    try {
        ByteReader r(bytes);
        Capsule c;
        c.salt = r.bit_field();
        c.recon = r.bit_field();
        c.tag = r.bit_field();
        r.expect_end();
        return c;
    } catch (const MalformedData&) {
        return std::nullopt;
    }
}

}  // namespace certdel::ikem
