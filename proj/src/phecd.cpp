#include "certdel/phecd.hpp"

#include "certdel/serial.hpp"

namespace certdel::phecd {

correlated::Triple keygen(const Params& params, Rng& rng) {
    params.validate();
    return ikem::gen(params.ikem, rng);
}

EncResult enc(const BitString& x, const BitString& msg, const Params& params, Rng& rng) {
    params.validate(msg.size());
    EncResult out;
    demcd::Params unit = params.demcd_params();

    if (!params.per_bit_capsule) {
        auto encap = ikem::encap(x, params.ikem, rng);
        out.ct.capsules.push_back(std::move(encap.ct));
        out.keys.push_back(encap.key);
        auto payload = demcd::encap_multi(unit, encap.key, msg, rng);
        out.vks = std::move(payload.vks);
        out.ct.payload = std::move(payload.cts);
        return out;
    }

    for (std::size_t j = 0; j < msg.size(); ++j) {
        auto encap = ikem::encap(x, params.ikem, rng);
        demcd::Params per_bit = unit;
        per_bit.dem.key_len = unit.key_bits_per_bit();
        auto one = demcd::encap(per_bit, demcd::key_slice(unit, encap.key, 0), msg[j], rng);
        out.ct.capsules.push_back(std::move(encap.ct));
        out.keys.push_back(std::move(encap.key));
        out.vks.push_back(std::move(one.vk));
        out.ct.payload.push_back(std::move(one.ct));
    }
    return out;
}

std::optional<BitString> dec(const BitString& y, Ciphertext& ct, const Params& params, Rng& rng) {
    params.validate(ct.payload.size());
    demcd::Params unit = params.demcd_params();

    if (!params.per_bit_capsule) {
        if (ct.capsules.size() != 1) throw LengthMismatch("expected a single capsule");
        auto key = ikem::decap(y, ct.capsules[0], params.ikem);
        if (!key) return std::nullopt;
        return demcd::decap_multi(unit, *key, ct.payload, rng);
    }

    if (ct.capsules.size() != ct.payload.size())
        throw LengthMismatch("per-bit mode needs one capsule per payload unit");
    BitString msg(ct.payload.size());
    for (std::size_t j = 0; j < ct.payload.size(); ++j) {
        auto key = ikem::decap(y, ct.capsules[j], params.ikem);
        if (!key) return std::nullopt;
        demcd::Params per_bit = unit;
        per_bit.dem.key_len = unit.key_bits_per_bit();
        auto bit = demcd::decap(per_bit, demcd::key_slice(unit, *key, 0), ct.payload[j], rng);
        if (!bit) return std::nullopt;
        msg.set(j, *bit);
    }
    return msg;
}

std::vector<demcd::Certificate> del(Ciphertext& ct, Rng& rng) {
    return demcd::del_multi(ct.payload, rng);
}

bool vrfy(const std::vector<demcd::VerificationKey>& vks,
          const std::vector<demcd::Certificate>& certs, demcd::VrfyMode mode) {
    return demcd::vrfy_multi(vks, certs, mode);
}

std::vector<std::uint8_t> serialize_classical(const Ciphertext& ct) {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(ct.capsules.size()));
    for (const auto& capsule : ct.capsules) {
        auto bytes = ikem::serialize_capsule(capsule);
        w.u32(static_cast<std::uint32_t>(bytes.size()));
        w.raw(bytes);
    }
    w.u32(static_cast<std::uint32_t>(ct.payload.size()));
    for (const auto& unit : ct.payload) {
        auto bytes = dem::serialize(unit.cpart);
        w.u32(static_cast<std::uint32_t>(bytes.size()));
        w.raw(bytes);
    }
    return w.take();
}

std::vector<std::uint8_t> serialize_vks(const std::vector<demcd::VerificationKey>& vks) {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(vks.size()));
    for (const auto& vk : vks) {
        auto bytes = demcd::serialize_vk(vk);
        w.u32(static_cast<std::uint32_t>(bytes.size()));
        w.raw(bytes);
    }
    return w.take();
}

std::vector<std::uint8_t> serialize_certs(const std::vector<demcd::Certificate>& certs) {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(certs.size()));
    for (const auto& cert : certs) {
        auto bytes = demcd::serialize_cert(cert);
        w.u32(static_cast<std::uint32_t>(bytes.size()));
        w.raw(bytes);
    }
    return w.take();
}

}  // namespace certdel::phecd
