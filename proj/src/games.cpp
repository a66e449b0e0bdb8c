#include "certdel/games.hpp"

namespace certdel::games {

namespace {

// stream roles within a trial
enum Role : std::uint64_t { kSource = 0, kChallenger = 1, kAdversary = 2, kOracle = 3 };

Rng trial_rng(const GameConfig& cfg, GameId gid, int arm, long trial, Role role) {
    return derive_rng(cfg.seed, {static_cast<std::uint64_t>(gid), static_cast<std::uint64_t>(arm),
                                 static_cast<std::uint64_t>(trial), role});
}

void finalize(Estimate& est) {
    auto adv = stats::advantage_estimate(est.guess1_arm0, est.guess1_arm1);
    est.advantage = adv.value;
    est.ci = adv.ci;
}

}  // namespace

const char* game_name(GameId id) {
    switch (id) {
        case GameId::Ikind: return "ikind";
        case GameId::IndOtDem: return "ind-ot-dem";
        case GameId::IndQeCpa: return "ind-qe-cpa";
        case GameId::EvCdDemcd: return "ev-cd-demcd";
        case GameId::EvQeCd: return "ev-qe-cd";
    }
    return "?";
}

std::optional<GameId> parse_game(const std::string& name) {
    for (GameId id : {GameId::Ikind, GameId::IndOtDem, GameId::IndQeCpa, GameId::EvCdDemcd,
                      GameId::EvQeCd})
        if (name == game_name(id)) return id;
    return std::nullopt;
}

Estimate estimate(const stats::Proportion& arm0, const stats::Proportion& arm1) {
    if (arm0.total < 1 || arm1.total < 1) throw ParamError("estimate needs at least one trial per arm");
    Estimate est;
    est.guess1_arm0 = arm0;
    est.guess1_arm1 = arm1;
    finalize(est);
    return est;
}

Estimate run_ikind(const ikem::Params& params, const KeyDistinguisherFactory& make,
                   const GameConfig& cfg) {
    params.validate();
    cfg.validate();
    Estimate est;
    for (int b : {0, 1}) {
        auto& arm = b == 0 ? est.guess1_arm0 : est.guess1_arm1;
        for (long t = 0; t < cfg.trials; ++t) {
            Rng src = trial_rng(cfg, GameId::Ikind, b, t, kSource);
            Rng chal = trial_rng(cfg, GameId::Ikind, b, t, kChallenger);
            Rng adv_rng = trial_rng(cfg, GameId::Ikind, b, t, kAdversary);
            Rng oracle_rng = trial_rng(cfg, GameId::Ikind, b, t, kOracle);

            auto triple = ikem::gen(params, src);
            auto adversary = make();
            EncapOracle oracle(params, triple.x, cfg.q_e, oracle_rng);
            try {
                adversary->stage1(triple.z, oracle, adv_rng);
            } catch (const QueryBudgetExceeded&) {
                ++est.aborted;
                continue;
            }
            auto challenge = ikem::encap(triple.x, params, chal);
            BitString key = b == 0 ? challenge.key : chal.bits(params.key_len);
            int guess = adversary->stage2(challenge.ct, key, adv_rng);
            ++arm.total;
            arm.count += guess == 1;
        }
    }
    finalize(est);
    return est;
}

Estimate run_ind_ot_dem(const dem::Params& params, const DemDistinguisherFactory& make,
                        const GameConfig& cfg) {
    params.validate();
    cfg.validate();
    Estimate est;
    for (int b : {0, 1}) {
        auto& arm = b == 0 ? est.guess1_arm0 : est.guess1_arm1;
        for (long t = 0; t < cfg.trials; ++t) {
            Rng chal = trial_rng(cfg, GameId::IndOtDem, b, t, kChallenger);
            Rng adv_rng = trial_rng(cfg, GameId::IndOtDem, b, t, kAdversary);

            BitString key = dem::gen(params, chal);
            auto adversary = make();
            auto [m0, m1] = adversary->choose_messages(adv_rng);
            if (m0.size() != m1.size()) throw ParamError("challenge messages must share a length");
            auto challenge = dem::encap(params, key, b == 0 ? m0 : m1, chal);
            int guess = adversary->stage2(challenge, adv_rng);
            ++arm.total;
            arm.count += guess == 1;
        }
    }
    finalize(est);
    return est;
}

Estimate run_ind_qe_cpa(const phecd::Params& params, const HybridDistinguisherFactory& make,
                        const GameConfig& cfg, std::size_t msg_bits) {
    params.validate(msg_bits);
    cfg.validate();
    Estimate est;
    for (int b : {0, 1}) {
        auto& arm = b == 0 ? est.guess1_arm0 : est.guess1_arm1;
        for (long t = 0; t < cfg.trials; ++t) {
            Rng src = trial_rng(cfg, GameId::IndQeCpa, b, t, kSource);
            Rng chal = trial_rng(cfg, GameId::IndQeCpa, b, t, kChallenger);
            Rng adv_rng = trial_rng(cfg, GameId::IndQeCpa, b, t, kAdversary);
            Rng oracle_rng = trial_rng(cfg, GameId::IndQeCpa, b, t, kOracle);

            auto triple = phecd::keygen(params, src);
            auto adversary = make();
            EncOracle oracle(params, triple.x, cfg.q_e, oracle_rng);
            try {
                adversary->stage1(triple.z, oracle, adv_rng);
            } catch (const QueryBudgetExceeded&) {
                ++est.aborted;
                continue;
            }
            auto [m0, m1] = adversary->choose_messages(adv_rng);
            if (m0.size() != m1.size() || m0.size() != msg_bits)
                throw ParamError("challenge messages must have the configured length");
            auto enc = phecd::enc(triple.x, b == 0 ? m0 : m1, params, chal);
            int guess = adversary->stage2(std::move(enc.ct), adv_rng);
            ++arm.total;
            arm.count += guess == 1;
        }
    }
    finalize(est);
    return est;
}

namespace {

// Shared deletion-experiment loop. `encrypt` returns the verification keys,
// the challenge handed to the adversary and the key released on acceptance.
struct DeletionRound {
    std::vector<demcd::VerificationKey> vks;
    DeletionChallenge challenge;
    BitString key;
};

template <typename EncryptFn, typename Stage1Fn>
Estimate run_deletion(GameId gid, const GameConfig& cfg, const DeletionAdversaryFactory& make,
                      demcd::VrfyMode mode, EncryptFn encrypt, Stage1Fn stage1) {
    Estimate est;
    est.accept_arm0.emplace();
    est.accept_arm1.emplace();
    for (int b : {0, 1}) {
        auto& arm = b == 0 ? est.guess1_arm0 : est.guess1_arm1;
        auto& acc = b == 0 ? *est.accept_arm0 : *est.accept_arm1;
        for (long t = 0; t < cfg.trials; ++t) {
            Rng src = trial_rng(cfg, gid, b, t, kSource);
            Rng chal = trial_rng(cfg, gid, b, t, kChallenger);
            Rng adv_rng = trial_rng(cfg, gid, b, t, kAdversary);
            Rng oracle_rng = trial_rng(cfg, gid, b, t, kOracle);

            auto adversary = make();
            try {
                stage1(*adversary, src, oracle_rng, adv_rng);
            } catch (const QueryBudgetExceeded&) {
                ++est.aborted;
                continue;
            }
            auto [m0, m1] = adversary->choose_messages(adv_rng);
            DeletionRound round = encrypt((b == 0 ? m0 : m1) & 1, src, chal);
            auto cert = adversary->produce_certificate(std::move(round.challenge), adv_rng);
            bool accepted = demcd::vrfy_multi(round.vks, {cert}, mode);
            ++acc.total;
            if (accepted) {
                ++acc.count;
                int guess = adversary->stage2(round.key, adv_rng);
                ++arm.total;
                arm.count += guess == 1;
            } else {
                adversary->stage2(std::nullopt, adv_rng);
            }
        }
    }
    finalize(est);
    return est;
}

}  // namespace

Estimate run_ev_cd_demcd(const demcd::Params& params, const DeletionAdversaryFactory& make,
                         const GameConfig& cfg) {
    params.validate();
    cfg.validate();
    demcd::Params unit = params;
    unit.dem.key_len = params.key_bits_per_bit();

    auto encrypt = [&](int m, Rng&, Rng& chal) {
        BitString key = dem::gen(params.dem, chal);
        auto enc = demcd::encap(unit, demcd::key_slice(params, key, 0), m, chal);
        return DeletionRound{{enc.vk}, DeletionChallenge{{}, {}, std::move(enc.ct)}, std::move(key)};
    };
    auto stage1 = [](DeletionAdversary&, Rng&, Rng&, Rng&) {};
    return run_deletion(GameId::EvCdDemcd, cfg, make, cfg.vrfy, encrypt, stage1);
}

Estimate run_ev_qe_cd(const phecd::Params& params, const DeletionAdversaryFactory& make,
                      const GameConfig& cfg) {
    params.validate(1);
    cfg.validate();

    struct TrialState {
        correlated::Triple triple;
    };
    auto state = std::make_shared<TrialState>();

    auto stage1 = [&, state](DeletionAdversary& adversary, Rng& src, Rng& oracle_rng, Rng& adv_rng) {
        state->triple = phecd::keygen(params, src);
        EncOracle oracle(params, state->triple.x, cfg.q_e, oracle_rng);
        adversary.stage1(state->triple.z, &oracle, adv_rng);
    };
    auto encrypt = [&, state](int m, Rng&, Rng& chal) {
        BitString msg(1);
        msg.set(0, m);
        auto enc = phecd::enc(state->triple.x, msg, params, chal);
        return DeletionRound{std::move(enc.vks),
                             DeletionChallenge{state->triple.z, std::move(enc.ct.capsules),
                                               std::move(enc.ct.payload[0])},
                             std::move(enc.keys[0])};
    };
    return run_deletion(GameId::EvQeCd, cfg, make, cfg.vrfy, encrypt, stage1);
}

}  // namespace certdel::games
