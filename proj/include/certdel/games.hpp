#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "certdel/phecd.hpp"
#include "certdel/stats.hpp"

namespace certdel::games {

enum class GameId : std::uint8_t {
    Ikind = 0,     // key indistinguishability of the encapsulation
    IndOtDem = 1,  // one-time message indistinguishability of the data layer
    IndQeCpa = 2,  // message indistinguishability of the composed scheme
    EvCdDemcd = 3, // certified-deletion experiment on the data layer
    EvQeCd = 4,    // certified-deletion experiment on the composed scheme
};

const char* game_name(GameId id);
std::optional<GameId> parse_game(const std::string& name);

struct GameConfig {
    long trials = 10000;  // per arm
    int q_e = 0;
    std::uint64_t seed = 0;
    demcd::VrfyMode vrfy = demcd::VrfyMode::BasisChecked;

    void validate() const {
        if (trials < 1) throw ParamError("trials must be at least 1");
        if (q_e < 0) throw ParamError("query budget must be non-negative");
    }
};

// Distinguishing result of a two-arm run. In the deletion games the guess
// proportions are conditioned on an accepted certificate and the acceptance
// proportions are reported alongside.
struct Estimate {
    stats::Proportion guess1_arm0, guess1_arm1;
    double advantage = 0;
    stats::Interval ci;
    std::optional<stats::Proportion> accept_arm0, accept_arm1;
    long aborted = 0;

    std::optional<double> acceptance() const {
        if (!accept_arm0) return std::nullopt;
        long total = accept_arm0->total + accept_arm1->total;
        return total == 0 ? 0.0
                          : double(accept_arm0->count + accept_arm1->count) / double(total);
    }
};

// Point estimate and score interval from per-arm counts.
Estimate estimate(const stats::Proportion& arm0, const stats::Proportion& arm1);

// Budgeted encapsulation oracle handed to the first adversary stage.
class EncapOracle {
public:
    EncapOracle(const ikem::Params& params, const BitString& x, int budget, Rng& rng)
        : params_(params), x_(x), remaining_(budget), rng_(rng) {}

    ikem::EncapResult query() {
        if (remaining_ <= 0) throw QueryBudgetExceeded();
        --remaining_;
        return ikem::encap(x_, params_, rng_);
    }

    int remaining() const { return remaining_; }

private:
    const ikem::Params& params_;
    const BitString& x_;
    int remaining_;
    Rng& rng_;
};

// Budgeted encryption oracle for the composed scheme; answers carry the
// verification keys and ciphertext of the queried message, never the key.
class EncOracle {
public:
    struct Answer {
        std::vector<demcd::VerificationKey> vks;
        phecd::Ciphertext ct;
    };

    EncOracle(const phecd::Params& params, const BitString& x, int budget, Rng& rng)
        : params_(params), x_(x), remaining_(budget), rng_(rng) {}

    Answer query(const BitString& msg) {
        if (remaining_ <= 0) throw QueryBudgetExceeded();
        --remaining_;
        auto enc = phecd::enc(x_, msg, params_, rng_);
        return Answer{std::move(enc.vks), std::move(enc.ct)};
    }

    int remaining() const { return remaining_; }

private:
    const phecd::Params& params_;
    const BitString& x_;
    int remaining_;
    Rng& rng_;
};

// Two-stage adversaries. Each instance runs one trial; the handoff state
// between the stages lives in the object. The stage-2 signatures are the
// only channel back from the challenger, so an adversary can never see the
// parties' samples or the challenge bit.

class KeyDistinguisher {
public:
    virtual ~KeyDistinguisher() = default;
    virtual void stage1(const BitString& z, EncapOracle& oracle, Rng& rng) {}
    virtual int stage2(const ikem::Capsule& challenge, const BitString& key, Rng& rng) = 0;
};

class DemDistinguisher {
public:
    virtual ~DemDistinguisher() = default;
    virtual std::pair<BitString, BitString> choose_messages(Rng& rng) = 0;
    virtual int stage2(const dem::Ciphertext& challenge, Rng& rng) = 0;
};

class HybridDistinguisher {
public:
    virtual ~HybridDistinguisher() = default;
    virtual void stage1(const BitString& z, EncOracle& oracle, Rng& rng) {}
    virtual std::pair<BitString, BitString> choose_messages(Rng& rng) = 0;
    virtual int stage2(phecd::Ciphertext challenge, Rng& rng) = 0;
};

struct DeletionChallenge {
    BitString z;                          // empty in the data-layer game
    std::vector<ikem::Capsule> capsules;  // empty in the data-layer game
    demcd::Ciphertext c2;
};

class DeletionAdversary {
public:
    virtual ~DeletionAdversary() = default;
    virtual void stage1(const BitString& z, EncOracle* oracle, Rng& rng) {}
    virtual std::pair<int, int> choose_messages(Rng& rng) { return {0, 1}; }
    virtual demcd::Certificate produce_certificate(DeletionChallenge challenge, Rng& rng) = 0;
    // released_key is the establishment key on acceptance, nothing otherwise
    virtual int stage2(const std::optional<BitString>& released_key, Rng& rng) = 0;
};

using KeyDistinguisherFactory = std::function<std::unique_ptr<KeyDistinguisher>()>;
using DemDistinguisherFactory = std::function<std::unique_ptr<DemDistinguisher>()>;
using HybridDistinguisherFactory = std::function<std::unique_ptr<HybridDistinguisher>()>;
using DeletionAdversaryFactory = std::function<std::unique_ptr<DeletionAdversary>()>;

Estimate run_ikind(const ikem::Params& params, const KeyDistinguisherFactory& make,
                   const GameConfig& cfg);
Estimate run_ind_ot_dem(const dem::Params& params, const DemDistinguisherFactory& make,
                        const GameConfig& cfg);
Estimate run_ind_qe_cpa(const phecd::Params& params, const HybridDistinguisherFactory& make,
                        const GameConfig& cfg, std::size_t msg_bits = 1);
Estimate run_ev_cd_demcd(const demcd::Params& params, const DeletionAdversaryFactory& make,
                         const GameConfig& cfg);
Estimate run_ev_qe_cd(const phecd::Params& params, const DeletionAdversaryFactory& make,
                      const GameConfig& cfg);

}  // namespace certdel::games
