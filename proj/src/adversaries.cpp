#include "certdel/adversaries.hpp"

namespace certdel::games {

namespace {

constexpr std::size_t kDistinguisherMsgBits = 128;

std::size_t dem_msg_bits(const dem::Params& params) {
    if (params.variant == dem::Variant::Otp) return std::min(params.key_len, kDistinguisherMsgBits);
    return kDistinguisherMsgBits;
}

BitString alternating(std::size_t n) {
    BitString out(n);
    for (std::size_t i = 1; i < n; i += 2) out.set(i, 1);
    return out;
}

// --- indistinguishability strategies ---------------------------------------

struct CoinKey : KeyDistinguisher {
    int stage2(const ikem::Capsule&, const BitString&, Rng& rng) override { return rng.bit(); }
};

struct ConstantKey : KeyDistinguisher {
    int stage2(const ikem::Capsule&, const BitString&, Rng&) override { return 1; }
};

// Recomputes the extraction hash on the eavesdropper sample and votes "real"
// on a match. At p_e = 0 this recovers the key outright.
struct KeyRecovery : KeyDistinguisher {
    explicit KeyRecovery(ikem::Params params) : params(std::move(params)) {}

    void stage1(const BitString& side_info, EncapOracle&, Rng&) override { z = side_info; }

    int stage2(const ikem::Capsule& challenge, const BitString& key, Rng&) override {
        return ikem::extract(params, challenge.salt, z).key == key ? 1 : 0;
    }

    ikem::Params params;
    BitString z;
};

struct CoinDem : DemDistinguisher {
    explicit CoinDem(std::size_t bits) : bits(bits) {}
    std::pair<BitString, BitString> choose_messages(Rng&) override {
        return {zeros(bits), ones(bits)};
    }
    int stage2(const dem::Ciphertext&, Rng& rng) override { return rng.bit(); }
    std::size_t bits;
};

struct ConstantDem : DemDistinguisher {
    explicit ConstantDem(std::size_t bits) : bits(bits) {}
    std::pair<BitString, BitString> choose_messages(Rng&) override {
        return {zeros(bits), ones(bits)};
    }
    int stage2(const dem::Ciphertext&, Rng&) override { return 1; }
    std::size_t bits;
};

struct BitFrequency : DemDistinguisher {
    explicit BitFrequency(std::size_t bits) : bits(bits) {}
    std::pair<BitString, BitString> choose_messages(Rng&) override {
        return {zeros(bits), ones(bits)};
    }
    int stage2(const dem::Ciphertext& ct, Rng&) override {
        return 2 * ct.payload.hamming_weight() > ct.payload.size() ? 1 : 0;
    }
    std::size_t bits;
};

struct XorCorrelation : DemDistinguisher {
    explicit XorCorrelation(std::size_t bits) : bits(bits) {}
    std::pair<BitString, BitString> choose_messages(Rng&) override {
        return {zeros(bits), alternating(bits)};
    }
    int stage2(const dem::Ciphertext& ct, Rng&) override {
        std::size_t flips = 0;
        for (std::size_t i = 0; i + 1 < ct.payload.size(); ++i)
            flips += ct.payload[i] ^ ct.payload[i + 1];
        return 2 * flips > ct.payload.size() - 1 ? 1 : 0;
    }
    std::size_t bits;
};

struct CoinHybrid : HybridDistinguisher {
    std::pair<BitString, BitString> choose_messages(Rng&) override {
        return {BitString::from_string("0"), BitString::from_string("1")};
    }
    int stage2(phecd::Ciphertext, Rng& rng) override { return rng.bit(); }
};

struct ConstantHybrid : HybridDistinguisher {
    std::pair<BitString, BitString> choose_messages(Rng&) override {
        return {BitString::from_string("0"), BitString::from_string("1")};
    }
    int stage2(phecd::Ciphertext, Rng&) override { return 1; }
};

// Recovers a candidate key from the side information and decrypts the
// challenge with it, quantum part included.
struct KeyRecoveryHybrid : HybridDistinguisher {
    explicit KeyRecoveryHybrid(phecd::Params p) : params(std::move(p)) {}

    void stage1(const BitString& side_info, EncOracle&, Rng&) override { z = side_info; }

    std::pair<BitString, BitString> choose_messages(Rng&) override {
        return {BitString::from_string("0"), BitString::from_string("1")};
    }

    int stage2(phecd::Ciphertext ct, Rng& rng) override {
        BitString key = ikem::extract(params.ikem, ct.capsules[0].salt, z).key;
        demcd::Params base = params.demcd_params();
        demcd::Params unit = base;
        unit.dem.key_len = base.key_bits_per_bit();
        auto bit = demcd::decap(unit, demcd::key_slice(base, key, 0), ct.payload[0], rng);
        return bit ? *bit : rng.bit();
    }

    phecd::Params params;
    BitString z;
};

// --- deletion strategies ----------------------------------------------------

// Deletes per protocol and keeps nothing, so the released key tells it
// nothing; the baseline both for correctness and for the exact analysis.
struct HonestDeleter : DeletionAdversary {
    explicit HonestDeleter(int fixed_guess = -1) : fixed_guess(fixed_guess) {}

    demcd::Certificate produce_certificate(DeletionChallenge challenge, Rng& rng) override {
        return demcd::del(challenge.c2, rng);
    }

    int stage2(const std::optional<BitString>&, Rng& rng) override {
        return fixed_guess < 0 ? rng.bit() : fixed_guess;
    }

    int fixed_guess;
};

// Shared second stage for strategies that keep the classical part: decrypt
// it once the key arrives and unmask with whatever the measurements gave.
struct RecordKeeper : DeletionAdversary {
    explicit RecordKeeper(demcd::Params base) : base(std::move(base)) {
        unit = this->base;
        unit.dem.key_len = this->base.key_bits_per_bit();
    }

    std::optional<std::pair<BitString, int>> decrypt(const std::optional<BitString>& key) const {
        if (!key) return std::nullopt;
        auto plain = dem::decap(unit.dem, demcd::key_slice(base, *key, 0), cpart);
        if (!plain || plain->size() != unit.lambda + 1) return std::nullopt;
        return std::pair{plain->slice(0, unit.lambda), (*plain)[unit.lambda]};
    }

    demcd::Params base, unit;
    dem::Ciphertext cpart;
};

// Measures every qubit in one fixed basis and submits the outcomes; guesses
// by parity over the computational positions of the decrypted basis string.
struct MeasureAll : RecordKeeper {
    MeasureAll(demcd::Params base, qsim::Basis basis) : RecordKeeper(std::move(base)), basis(basis) {}

    demcd::Certificate produce_certificate(DeletionChallenge challenge, Rng& rng) override {
        std::vector<qsim::Basis> bases(challenge.c2.qpart.num_qubits(), basis);
        outcomes = qsim::measure(challenge.c2.qpart, bases, rng);
        cpart = std::move(challenge.c2.cpart);
        return demcd::Certificate{outcomes};
    }

    int stage2(const std::optional<BitString>& key, Rng& rng) override {
        auto plain = decrypt(key);
        if (!plain) return rng.bit();
        auto& [theta, masked] = *plain;
        int parity = masked;
        for (std::size_t i = 0; i < theta.size(); ++i)
            if (theta[i] == 0) parity ^= outcomes[i];
        return parity;
    }

    qsim::Basis basis;
    BitString outcomes;
};

// Measures each qubit in a coin-flipped conjugate basis; can unmask only
// when every computational position happened to be measured computationally.
struct InterceptResend : RecordKeeper {
    using RecordKeeper::RecordKeeper;

    demcd::Certificate produce_certificate(DeletionChallenge challenge, Rng& rng) override {
        choices = rng.bits(challenge.c2.qpart.num_qubits());
        outcomes = qsim::measure(challenge.c2.qpart, choices, rng);
        cpart = std::move(challenge.c2.cpart);
        return demcd::Certificate{outcomes};
    }

    int stage2(const std::optional<BitString>& key, Rng& rng) override {
        auto plain = decrypt(key);
        if (!plain) return rng.bit();
        auto& [theta, masked] = *plain;
        int parity = masked;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            if (theta[i] != 0) continue;
            if (choices[i] != 0) return rng.bit();  // that position is lost
            parity ^= outcomes[i];
        }
        return parity;
    }

    BitString choices;
    BitString outcomes;
};

// Submits a fixed certificate without touching the register, then decrypts
// for real once the key arrives.
struct WithholdDecrypt : RecordKeeper {
    using RecordKeeper::RecordKeeper;

    demcd::Certificate produce_certificate(DeletionChallenge challenge, Rng&) override {
        kept.emplace(std::move(challenge.c2));
        return demcd::Certificate{zeros(kept->qpart.num_qubits())};
    }

    int stage2(const std::optional<BitString>& key, Rng& rng) override {
        if (!key) return rng.bit();
        auto bit = demcd::decap(unit, demcd::key_slice(base, *key, 0), *kept, rng);
        return bit ? *bit : rng.bit();
    }

    std::optional<demcd::Ciphertext> kept;
};

// Discards the register unmeasured and submits a uniform certificate; wins
// only in the branch where the mask is empty.
struct RandomCert : RecordKeeper {
    using RecordKeeper::RecordKeeper;

    demcd::Certificate produce_certificate(DeletionChallenge challenge, Rng& rng) override {
        cpart = std::move(challenge.c2.cpart);
        return demcd::Certificate{rng.bits(challenge.c2.qpart.num_qubits())};
    }

    int stage2(const std::optional<BitString>& key, Rng& rng) override {
        auto plain = decrypt(key);
        if (!plain) return rng.bit();
        auto& [theta, masked] = *plain;
        if (theta.hamming_weight() == theta.size()) return masked;  // empty mask
        return rng.bit();
    }
};

}  // namespace

const std::vector<StrategyInfo>& builtin_adversaries() {
    using enum GameId;
    static const std::vector<StrategyInfo> catalog = {
        {"random-guess", "flips a coin; deletes honestly when asked for a certificate",
         {Ikind, IndOtDem, IndQeCpa, EvCdDemcd, EvQeCd}},
        {"constant-one", "always answers 1; deletes honestly when asked for a certificate",
         {Ikind, IndOtDem, IndQeCpa, EvCdDemcd, EvQeCd}},
        {"eve-knows-x", "recomputes the extraction hash on the eavesdropper sample",
         {Ikind, IndQeCpa}},
        {"bit-frequency", "majority vote on ciphertext bits", {IndOtDem}},
        {"xor-correlation", "adjacent-bit transition counter", {IndOtDem}},
        {"honest-deleter", "Hadamard-measures everything and keeps nothing",
         {EvCdDemcd, EvQeCd}},
        {"measure-computational", "measures every qubit computationally and keeps the record",
         {EvCdDemcd, EvQeCd}},
        {"breidbart", "measures every qubit in the intermediate basis", {EvCdDemcd, EvQeCd}},
        {"intercept-resend", "measures each qubit in a random conjugate basis",
         {EvCdDemcd, EvQeCd}},
        {"withhold-decrypt", "submits a fixed certificate and keeps the register",
         {EvCdDemcd, EvQeCd}},
        {"random-cert", "submits a uniform certificate and discards the register",
         {EvCdDemcd, EvQeCd}},
    };
    return catalog;
}

const StrategyInfo* find_adversary(const std::string& name) {
    for (const auto& info : builtin_adversaries())
        if (info.name == name) return &info;
    return nullptr;
}

KeyDistinguisherFactory make_key_distinguisher(const std::string& name, const ikem::Params& params) {
    if (name == "random-guess") return [] { return std::make_unique<CoinKey>(); };
    if (name == "constant-one") return [] { return std::make_unique<ConstantKey>(); };
    if (name == "eve-knows-x")
        return [params] { return std::make_unique<KeyRecovery>(params); };
    return nullptr;
}

DemDistinguisherFactory make_dem_distinguisher(const std::string& name, const dem::Params& params) {
    std::size_t bits = dem_msg_bits(params);
    if (name == "random-guess") return [bits] { return std::make_unique<CoinDem>(bits); };
    if (name == "constant-one") return [bits] { return std::make_unique<ConstantDem>(bits); };
    if (name == "bit-frequency") return [bits] { return std::make_unique<BitFrequency>(bits); };
    if (name == "xor-correlation") return [bits] { return std::make_unique<XorCorrelation>(bits); };
    return nullptr;
}

HybridDistinguisherFactory make_hybrid_distinguisher(const std::string& name,
                                                     const phecd::Params& params) {
    if (name == "random-guess") return [] { return std::make_unique<CoinHybrid>(); };
    if (name == "constant-one") return [] { return std::make_unique<ConstantHybrid>(); };
    if (name == "eve-knows-x")
        return [params] { return std::make_unique<KeyRecoveryHybrid>(params); };
    return nullptr;
}

DeletionAdversaryFactory make_deletion_adversary(const std::string& name,
                                                 const demcd::Params& base) {
    if (name == "random-guess" || name == "honest-deleter")
        return [] { return std::make_unique<HonestDeleter>(); };
    if (name == "constant-one") return [] { return std::make_unique<HonestDeleter>(1); };
    if (name == "measure-computational")
        return [base] { return std::make_unique<MeasureAll>(base, qsim::Basis::Computational); };
    if (name == "breidbart")
        return [base] { return std::make_unique<MeasureAll>(base, qsim::Basis::Intermediate); };
    if (name == "intercept-resend")
        return [base] { return std::make_unique<InterceptResend>(base); };
    if (name == "withhold-decrypt")
        return [base] { return std::make_unique<WithholdDecrypt>(base); };
    if (name == "random-cert") return [base] { return std::make_unique<RandomCert>(base); };
    return nullptr;
}

}  // namespace certdel::games
