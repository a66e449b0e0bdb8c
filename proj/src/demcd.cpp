#include "certdel/demcd.hpp"

#include "certdel/serial.hpp"

namespace certdel::demcd {

namespace {

int mask_bit(const BitString& x, const BitString& theta) {
    int m = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (theta[i] == 0) m ^= x[i];
    return m;
}

}  // namespace

EncapResult encap(const Params& params, const BitString& key, int msg_bit, Rng& rng) {
    params.validate();
    BitString x = rng.bits(params.lambda);
    BitString theta = rng.bits(params.lambda);

    BitString plain = theta;
    plain.push_back((msg_bit & 1) ^ mask_bit(x, theta));

    EncapResult out{VerificationKey{x, theta},
                    Ciphertext{qsim::prepare_bb84(x, theta), dem::encap(params.dem, key, plain, rng)}};
    return out;
}

std::optional<int> decap(const Params& params, const BitString& key, Ciphertext& ct, Rng& rng) {
    params.validate();
    auto plain = dem::decap(params.dem, key, ct.cpart);
    if (!plain || plain->size() != params.lambda + 1) return std::nullopt;
    BitString theta = plain->slice(0, params.lambda);
    int masked = (*plain)[params.lambda];

    // with the right key every basis matches and the measurement is
    // deterministic; a wrong key decrypts to a garbage theta and yields coins
    BitString x = qsim::measure(ct.qpart, theta, rng);
    return masked ^ mask_bit(x, theta);
}

Certificate del(Ciphertext& ct, Rng& rng) {
    BitString hadamard = ones(ct.qpart.num_qubits());
    return Certificate{qsim::measure(ct.qpart, hadamard, rng)};
}

bool vrfy(const VerificationKey& vk, const Certificate& cert, VrfyMode mode) {
    if (vk.x.size() != vk.theta.size() || cert.bits.size() != vk.x.size())
        throw LengthMismatch("verification key and certificate lengths differ");
    for (std::size_t i = 0; i < cert.bits.size(); ++i) {
        bool checked = mode == VrfyMode::Strict || vk.theta[i] == 1;
        if (checked && cert.bits[i] != vk.x[i]) return false;
    }
    return true;
}

BitString key_slice(const Params& params, const BitString& key, std::size_t index) {
    if (params.dem.variant != dem::Variant::Otp) return key;
    std::size_t per = params.lambda + 1;
    if ((index + 1) * per > key.size())
        throw LengthMismatch("one-time pad key too short for this message bit");
    return key.slice(index * per, per);
}

MultiEncapResult encap_multi(const Params& params, const BitString& key, const BitString& msg,
                             Rng& rng) {
    MultiEncapResult out;
    Params per_bit = params;
    per_bit.dem.key_len = params.key_bits_per_bit();
    for (std::size_t j = 0; j < msg.size(); ++j) {
        auto one = encap(per_bit, key_slice(params, key, j), msg[j], rng);
        out.vks.push_back(std::move(one.vk));
        out.cts.push_back(std::move(one.ct));
    }
    return out;
}

std::optional<BitString> decap_multi(const Params& params, const BitString& key,
                                     std::vector<Ciphertext>& cts, Rng& rng) {
    BitString msg(cts.size());
    Params per_bit = params;
    per_bit.dem.key_len = params.key_bits_per_bit();
    for (std::size_t j = 0; j < cts.size(); ++j) {
        auto bit = decap(per_bit, key_slice(params, key, j), cts[j], rng);
        if (!bit) return std::nullopt;
        msg.set(j, *bit);
    }
    return msg;
}

std::vector<Certificate> del_multi(std::vector<Ciphertext>& cts, Rng& rng) {
    std::vector<Certificate> certs;
    certs.reserve(cts.size());
    for (auto& ct : cts) certs.push_back(del(ct, rng));
    return certs;
}

bool vrfy_multi(const std::vector<VerificationKey>& vks, const std::vector<Certificate>& certs,
                VrfyMode mode) {
    if (vks.size() != certs.size()) throw LengthMismatch("certificate count differs from key count");
    for (std::size_t j = 0; j < vks.size(); ++j)
        if (!vrfy(vks[j], certs[j], mode)) return false;
    return true;
}

std::vector<std::uint8_t> serialize_vk(const VerificationKey& vk) {
    ByteWriter w;
    w.bit_field(vk.x);
    w.bit_field(vk.theta);
    return w.take();
}

std::optional<VerificationKey> parse_vk(std::span<const std::uint8_t> bytes) {
    try {
        ByteReader r(bytes);
        VerificationKey vk;
        vk.x = r.bit_field();
        vk.theta = r.bit_field();
        r.expect_end();
        return vk;
    } catch (const MalformedData&) {
        return std::nullopt;
    }
}

std::vector<std::uint8_t> serialize_cert(const Certificate& cert) {
    ByteWriter w;
    w.bit_field(cert.bits);
    return w.take();
}

std::optional<Certificate> parse_cert(std::span<const std::uint8_t> bytes) {
    try {
        ByteReader r(bytes);
        Certificate cert{r.bit_field()};
        r.expect_end();
        return cert;
    } catch (const MalformedData&) {
        return std::nullopt;
    }
}

}  // namespace certdel::demcd
