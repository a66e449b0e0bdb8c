#pragma once

#include <string>
#include <vector>

#include "certdel/demcd.hpp"
#include "certdel/ikem.hpp"

namespace certdel::oracle {

inline constexpr std::size_t kMaxOracleQubits = 3;

// Per-qubit action of an adversary strategy against one conjugate-coded
// register. Skip keeps the qubit unmeasured in the residual state; Discard
// traces it out.
enum class QubitAction : std::uint8_t {
    MeasureComputational,
    MeasureHadamard,
    MeasureIntermediate,  // pi/8 basis
    MeasureConjugateCoin, // fresh coin chooses computational or Hadamard
    Skip,
    Discard,
};

enum class CertSource : std::uint8_t {
    Outcomes,   // submit the measurement outcomes (requires all qubits measured)
    FixedZero,  // submit the all-zero string
    Uniform,    // submit a fresh uniform string
};

struct Strategy {
    std::string name;
    std::vector<QubitAction> actions;  // one entry per qubit
    CertSource cert_source = CertSource::Outcomes;
    // Whether the adversary keeps its classical transcript (ciphertext,
    // outcomes, basis coins, certificate) for the unbounded stage. The
    // honest deleter keeps nothing, which is what deletion means for it.
    bool retains_record = true;

    static Strategy uniform(std::string name, QubitAction action, CertSource cert,
                            bool retains_record, std::size_t lambda);
};

// The six built-in strategies instantiated for a register size.
std::vector<Strategy> builtin_menu(std::size_t lambda);

const Strategy* find_strategy(const std::vector<Strategy>& menu, const std::string& name);

// Probability that the strategy's certificate verifies, averaged over the
// encoding and all measurement randomness. Closed-form per-qubit product.
double exact_cert_acceptance(const Strategy& strategy, std::size_t lambda, demcd::VrfyMode mode);

// Same quantity through the full branch enumeration; the two routes must
// agree and the tests pin that.
double exact_cert_acceptance_enumerated(const Strategy& strategy, std::size_t lambda,
                                        demcd::VrfyMode mode);

// Exact trace distance between the two post-verification joint states
// (retained classical view plus residual registers plus released key),
// conditioned on certificate acceptance. Information-theoretic data layer
// only, so the classical part reduces to the basis string and masked bit.
double exact_post_verification_distance(const Strategy& strategy, std::size_t lambda,
                                        demcd::VrfyMode mode,
                                        dem::Variant variant = dem::Variant::Otp);

struct TradeoffRow {
    std::string strategy;
    std::size_t lambda = 0;
    double acceptance = 0;
    double distance = 0;
};

// Rows for every menu strategy, sorted by acceptance descending.
std::vector<TradeoffRow> tradeoff_table(std::size_t lambda, demcd::VrfyMode mode);

// The key-distance enumeration surfaced under the oracle's roof.
double exact_ikem_sd(const ikem::Params& params);

}  // namespace certdel::oracle
