#include "certdel/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "certdel/qsim.hpp"

namespace certdel::oracle {

namespace {

// cos^2(pi/8): intermediate-basis agreement probability for every
// conjugate-coding state
const double kIntermediateMatch = (2.0 + std::sqrt(2.0)) / 4.0;

int bit_of(std::size_t word, std::size_t i) { return static_cast<int>((word >> i) & 1); }

void check_strategy(const Strategy& s, std::size_t lambda) {
    if (lambda < 1 || lambda > kMaxOracleQubits)
        throw ParamError("exact analysis supports 1 to 3 qubits");
    if (s.actions.size() != lambda) throw ParamError("strategy needs one action per qubit");
    if (s.cert_source == CertSource::Outcomes)
        for (auto a : s.actions)
            if (a == QubitAction::Skip || a == QubitAction::Discard)
                throw ParamError("outcome certificates require measuring every qubit");
}

// P(outcome = encoded bit) for a measured qubit, given the encoding basis.
double match_probability(QubitAction action, int theta) {
    switch (action) {
        case QubitAction::MeasureComputational: return theta == 0 ? 1.0 : 0.5;
        case QubitAction::MeasureHadamard: return theta == 1 ? 1.0 : 0.5;
        case QubitAction::MeasureIntermediate: return kIntermediateMatch;
        case QubitAction::MeasureConjugateCoin: return 0.75;
        default: throw ParamError("unmeasured qubit has no outcome");
    }
}

struct ViewLabel {
    int theta = -1;
    int masked_bit = -1;
    int cert = -1;
    int outcomes = -1;
    int coins = -1;

    auto operator<=>(const ViewLabel&) const = default;
};

// Unnormalized post-verification blocks for the two challenge bits, keyed by
// the retained classical view.
struct Enumeration {
    std::map<ViewLabel, std::pair<qsim::CMatrix, qsim::CMatrix>> blocks;
    double accepted_weight = 0;
    std::size_t residual_dim = 1;
};

Enumeration enumerate_strategy(const Strategy& s, std::size_t lambda, demcd::VrfyMode mode) {
    check_strategy(s, lambda);
    const std::size_t states = std::size_t{1} << lambda;

    std::vector<std::size_t> coin_positions, measured_positions, skip_positions;
    for (std::size_t i = 0; i < lambda; ++i) {
        switch (s.actions[i]) {
            case QubitAction::MeasureConjugateCoin: coin_positions.push_back(i); break;
            case QubitAction::Skip: skip_positions.push_back(i); break;
            case QubitAction::Discard: break;
            default: break;
        }
        if (s.actions[i] != QubitAction::Skip && s.actions[i] != QubitAction::Discard)
            measured_positions.push_back(i);
    }

    Enumeration out;
    out.residual_dim = std::size_t{1} << skip_positions.size();
    const std::size_t coin_space = std::size_t{1} << coin_positions.size();
    const std::size_t outcome_space = std::size_t{1} << measured_positions.size();
    const std::size_t cert_space = s.cert_source == CertSource::Uniform ? states : 1;
    const double base_weight = 1.0 / (double(states) * double(states) * double(coin_space) *
                                      double(cert_space));

    for (std::size_t theta = 0; theta < states; ++theta) {
        for (std::size_t coins = 0; coins < coin_space; ++coins) {
            // resolve the coin-flipped bases for this branch
            std::vector<QubitAction> bases(s.actions);
            for (std::size_t k = 0; k < coin_positions.size(); ++k)
                bases[coin_positions[k]] = bit_of(coins, k) ? QubitAction::MeasureHadamard
                                                            : QubitAction::MeasureComputational;
            for (std::size_t x = 0; x < states; ++x) {
                int parity = 0;
                for (std::size_t i = 0; i < lambda; ++i)
                    if (bit_of(theta, i) == 0) parity ^= bit_of(x, i);

                for (std::size_t y = 0; y < outcome_space; ++y) {
                    double p_y = 1.0;
                    for (std::size_t k = 0; k < measured_positions.size(); ++k) {
                        std::size_t i = measured_positions[k];
                        double match = match_probability(bases[i], bit_of(theta, i));
                        p_y *= bit_of(y, k) == bit_of(x, i) ? match : 1.0 - match;
                    }
                    if (p_y == 0.0) continue;

                    for (std::size_t cert_draw = 0; cert_draw < cert_space; ++cert_draw) {
                        std::size_t cert = 0;
                        switch (s.cert_source) {
                            case CertSource::Outcomes:
                                for (std::size_t k = 0; k < measured_positions.size(); ++k)
                                    cert |= std::size_t(bit_of(y, k)) << measured_positions[k];
                                break;
                            case CertSource::FixedZero: cert = 0; break;
                            case CertSource::Uniform: cert = cert_draw; break;
                        }

                        bool accepted = true;
                        for (std::size_t i = 0; i < lambda && accepted; ++i) {
                            bool checked = mode == demcd::VrfyMode::Strict || bit_of(theta, i) == 1;
                            if (checked && bit_of(cert, i) != bit_of(x, i)) accepted = false;
                        }
                        if (!accepted) continue;

                        double w = base_weight * p_y;
                        out.accepted_weight += w;

                        ViewLabel label;
                        if (s.retains_record) {
                            label.theta = static_cast<int>(theta);
                            label.cert = static_cast<int>(cert);
                            if (!measured_positions.empty()) label.outcomes = static_cast<int>(y);
                            if (!coin_positions.empty()) label.coins = static_cast<int>(coins);
                        }

                        qsim::CMatrix residual = qsim::CMatrix::Identity(1, 1);
                        for (std::size_t i : skip_positions) {
                            qsim::CVector psi = qsim::bb84_state(bit_of(x, i), bit_of(theta, i));
                            residual = qsim::kron(residual, qsim::CMatrix(psi * psi.adjoint()));
                        }

                        for (int b : {0, 1}) {
                            ViewLabel arm_label = label;
                            if (s.retains_record) arm_label.masked_bit = b ^ parity;
                            auto [it, inserted] = out.blocks.try_emplace(
                                arm_label,
                                qsim::CMatrix::Zero(out.residual_dim, out.residual_dim),
                                qsim::CMatrix::Zero(out.residual_dim, out.residual_dim));
                            auto& block = b == 0 ? it->second.first : it->second.second;
                            block += w * residual;
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

Strategy Strategy::uniform(std::string name, QubitAction action, CertSource cert,
                           bool retains_record, std::size_t lambda) {
    Strategy s;
    s.name = std::move(name);
    s.actions.assign(lambda, action);
    s.cert_source = cert;
    s.retains_record = retains_record;
    return s;
}

std::vector<Strategy> builtin_menu(std::size_t lambda) {
    using QA = QubitAction;
    using CS = CertSource;
    return {
        Strategy::uniform("honest-deleter", QA::MeasureHadamard, CS::Outcomes, false, lambda),
        Strategy::uniform("measure-computational", QA::MeasureComputational, CS::Outcomes, true,
                          lambda),
        Strategy::uniform("breidbart", QA::MeasureIntermediate, CS::Outcomes, true, lambda),
        Strategy::uniform("intercept-resend", QA::MeasureConjugateCoin, CS::Outcomes, true, lambda),
        Strategy::uniform("withhold-decrypt", QA::Skip, CS::FixedZero, true, lambda),
        Strategy::uniform("random-cert", QA::Discard, CS::Uniform, true, lambda),
    };
}

const Strategy* find_strategy(const std::vector<Strategy>& menu, const std::string& name) {
    for (const auto& s : menu)
        if (s.name == name) return &s;
    return nullptr;
}

double exact_cert_acceptance(const Strategy& strategy, std::size_t lambda, demcd::VrfyMode mode) {
    check_strategy(strategy, lambda);
    double acceptance = 1.0;
    for (std::size_t i = 0; i < lambda; ++i) {
        auto pass = [&](int theta) {
            switch (strategy.cert_source) {
                case CertSource::Outcomes: return match_probability(strategy.actions[i], theta);
                case CertSource::FixedZero:
                case CertSource::Uniform: return 0.5;
            }
            return 0.5;
        };
        double untested = mode == demcd::VrfyMode::Strict ? pass(0) : 1.0;
        acceptance *= 0.5 * untested + 0.5 * pass(1);
    }
    return acceptance;
}

double exact_cert_acceptance_enumerated(const Strategy& strategy, std::size_t lambda,
                                        demcd::VrfyMode mode) {
    return enumerate_strategy(strategy, lambda, mode).accepted_weight;
}

double exact_post_verification_distance(const Strategy& strategy, std::size_t lambda,
                                        demcd::VrfyMode mode, dem::Variant variant) {
    if (variant != dem::Variant::Otp)
        throw ParamError("exact distance requires the information-theoretic data layer");
    auto enumeration = enumerate_strategy(strategy, lambda, mode);
    if (enumeration.accepted_weight <= 0.0)
        throw ParamError("strategy is never accepted; conditional state undefined");

    // block-diagonal trace norm splits over the view labels
    double total = 0.0;
    for (const auto& [label, pair] : enumeration.blocks)
        total += qsim::trace_distance(pair.first, pair.second);
    return total / enumeration.accepted_weight;
}

std::vector<TradeoffRow> tradeoff_table(std::size_t lambda, demcd::VrfyMode mode) {
    std::vector<TradeoffRow> rows;
    for (const auto& s : builtin_menu(lambda)) {
        TradeoffRow row;
        row.strategy = s.name;
        row.lambda = lambda;
        row.acceptance = exact_cert_acceptance(s, lambda, mode);
        row.distance = exact_post_verification_distance(s, lambda, mode);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const TradeoffRow& a, const TradeoffRow& b) {
        if (a.acceptance != b.acceptance) return a.acceptance > b.acceptance;
        return a.strategy < b.strategy;
    });
    return rows;
}

double exact_ikem_sd(const ikem::Params& params) { return ikem::exact_key_distance(params); }

}  // namespace certdel::oracle
