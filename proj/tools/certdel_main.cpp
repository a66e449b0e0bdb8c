#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "certdel/adversaries.hpp"
#include "certdel/oracle.hpp"

using nlohmann::json;
using namespace certdel;

namespace {

struct RunConfig {
    // source / encapsulation parameters
    std::size_t n = 64;
    double p_b = 0.01;
    double p_e = 0.25;
    std::size_t key_len = 16;
    std::size_t recon_len = 16;
    std::size_t check_len = 8;
    int decode_radius = 2;
    std::uint64_t code_seed = 1;
    // scheme parameters
    std::size_t lambda = 16;
    std::string dem = "stream";
    bool per_bit_capsule = false;
    std::string vrfy = "default";
    // run parameters
    std::string game;
    std::string adversary;
    long trials = 10000;
    int q_e = 0;
    std::uint64_t seed = 0;
    std::string message = "1011";
    std::string path = "decrypt";
    std::string out;
};

dem::Variant parse_variant(const std::string& s) {
    if (s == "otp") return dem::Variant::Otp;
    if (s == "stream") return dem::Variant::Stream;
    throw ParamError("dem must be 'otp' or 'stream'");
}

demcd::VrfyMode parse_vrfy(const std::string& s) {
    if (s == "default") return demcd::VrfyMode::BasisChecked;
    if (s == "strict") return demcd::VrfyMode::Strict;
    throw ParamError("vrfy must be 'default' or 'strict'");
}

ikem::Params ikem_params(const RunConfig& c) {
    ikem::Params p;
    p.source = correlated::SourceSpec{c.n, c.p_b, c.p_e};
    p.key_len = c.key_len;
    p.recon_len = c.recon_len;
    p.check_len = c.check_len;
    p.decode_radius = c.decode_radius;
    p.code_seed = c.code_seed;
    return p;
}

phecd::Params phecd_params(const RunConfig& c) {
    phecd::Params p;
    p.ikem = ikem_params(c);
    p.dem_variant = parse_variant(c.dem);
    p.lambda = c.lambda;
    p.per_bit_capsule = c.per_bit_capsule;
    return p;
}

json params_json(const RunConfig& c) {
    return json{{"n", c.n},
                {"p_b", c.p_b},
                {"p_e", c.p_e},
                {"key_len", c.key_len},
                {"recon_len", c.recon_len},
                {"check_len", c.check_len},
                {"decode_radius", c.decode_radius},
                {"code_seed", c.code_seed},
                {"lambda", c.lambda},
                {"dem", c.dem},
                {"per_bit_capsule", c.per_bit_capsule},
                {"vrfy", c.vrfy}};
}

// Configuration files carry the same keys as the flags; unknown keys are
// rejected before anything runs.
void apply_config_file(RunConfig& c, const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ParamError("cannot open config file: " + file);
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw ParamError("config file must hold a JSON object");

    auto number = [&](const json& v, const char* key) -> double {
        if (!v.is_number()) throw ParamError(std::string("config key '") + key + "' must be a number");
        return v.get<double>();
    };
    auto text = [&](const json& v, const char* key) -> std::string {
        if (!v.is_string()) throw ParamError(std::string("config key '") + key + "' must be a string");
        return v.get<std::string>();
    };

    for (auto& [key, value] : doc.items()) {
        if (key == "n") c.n = static_cast<std::size_t>(number(value, "n"));
        else if (key == "p_b") c.p_b = number(value, "p_b");
        else if (key == "p_e") c.p_e = number(value, "p_e");
        else if (key == "key_len") c.key_len = static_cast<std::size_t>(number(value, "key_len"));
        else if (key == "recon_len") c.recon_len = static_cast<std::size_t>(number(value, "recon_len"));
        else if (key == "check_len") c.check_len = static_cast<std::size_t>(number(value, "check_len"));
        else if (key == "decode_radius") c.decode_radius = static_cast<int>(number(value, "decode_radius"));
        else if (key == "code_seed") c.code_seed = static_cast<std::uint64_t>(number(value, "code_seed"));
        else if (key == "lambda") c.lambda = static_cast<std::size_t>(number(value, "lambda"));
        else if (key == "dem") c.dem = text(value, "dem");
        else if (key == "per_bit_capsule") {
            if (!value.is_boolean()) throw ParamError("config key 'per_bit_capsule' must be a boolean");
            c.per_bit_capsule = value.get<bool>();
        } else if (key == "vrfy") c.vrfy = text(value, "vrfy");
        else if (key == "game") c.game = text(value, "game");
        else if (key == "adversary") c.adversary = text(value, "adversary");
        else if (key == "trials") c.trials = static_cast<long>(number(value, "trials"));
        else if (key == "q_e") c.q_e = static_cast<int>(number(value, "q_e"));
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(number(value, "seed"));
        else if (key == "message") c.message = text(value, "message");
        else if (key == "path") c.path = text(value, "path");
        else if (key == "out") c.out = text(value, "out");
        else throw ParamError("unknown config key: " + key);
    }
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParamError("cannot open output file: " + out_path);
    out << text;
}

// ---------------------------------------------------------------- demo ----

int cmd_demo(const RunConfig& cfg, bool pretty) {
    auto params = phecd_params(cfg);
    BitString msg = BitString::from_string(cfg.message);
    params.validate(msg.size());
    demcd::VrfyMode mode = parse_vrfy(cfg.vrfy);

    Rng rng = derive_rng(cfg.seed, {0x64656d6f});  // "demo" stream
    json steps = json::array();

    auto triple = phecd::keygen(params, rng);
    steps.push_back({{"step", "keygen"},
                     {"x", triple.x.hex()},
                     {"y", triple.y.hex()},
                     {"z", triple.z.hex()}});

    auto enc = phecd::enc(triple.x, msg, params, rng);
    json vks = json::array();
    for (const auto& vk : enc.vks) vks.push_back({{"x", vk.x.hex()}, {"theta", vk.theta.hex()}});
    steps.push_back({{"step", "enc"},
                     {"message", cfg.message},
                     {"classical_ct", BitString::unpack(phecd::serialize_classical(enc.ct),
                                                        8 * phecd::serialize_classical(enc.ct).size())
                                          .hex()},
                     {"quantum_part", std::to_string(enc.ct.payload.size()) + " register(s) of " +
                                          std::to_string(params.lambda) + " qubits"},
                     {"vks", vks}});

    bool run_dec = cfg.path == "decrypt" || cfg.path == "both";
    bool run_del = cfg.path == "delete" || cfg.path == "both";
    if (!run_dec && !run_del) throw ParamError("path must be decrypt, delete or both");

    if (run_dec) {
        auto decoded = phecd::dec(triple.y, enc.ct, params, rng);
        steps.push_back({{"step", "dec"},
                         {"recovered", decoded ? decoded->to_string() : "bottom"},
                         {"matches", decoded && *decoded == msg}});
        if (!decoded || *decoded != msg) {
            emit(cfg.out, json{{"command", "demo"}, {"steps", steps}}.dump(2) + "\n");
            std::cerr << "demo: decryption did not recover the message\n";
            return 1;
        }
    }
    if (run_del) {
        // on the 'both' path the registers were already consumed by dec and
        // this throws the consumed-register error
        auto certs = phecd::del(enc.ct, rng);
        json cert_list = json::array();
        for (const auto& cert : certs) cert_list.push_back(cert.bits.hex());
        bool ok = phecd::vrfy(enc.vks, certs, mode);
        steps.push_back({{"step", "del"}, {"certs", cert_list}});
        steps.push_back({{"step", "vrfy"}, {"result", ok ? "accept" : "reject"}});
    }

    json doc{{"command", "demo"}, {"params", params_json(cfg)}, {"seed", cfg.seed}, {"steps", steps}};
    if (pretty) {
        std::string text;
        for (const auto& step : steps) text += step.dump() + "\n";
        emit(cfg.out, text);
    } else {
        emit(cfg.out, doc.dump(2) + "\n");
    }
    return 0;
}

// ---------------------------------------------------------------- game ----

json estimate_json(const games::Estimate& est) {
    json arms{{"guess1_arm0", {{"count", est.guess1_arm0.count}, {"total", est.guess1_arm0.total}}},
              {"guess1_arm1", {{"count", est.guess1_arm1.count}, {"total", est.guess1_arm1.total}}}};
    if (est.accept_arm0) {
        arms["accept_arm0"] = {{"count", est.accept_arm0->count}, {"total", est.accept_arm0->total}};
        arms["accept_arm1"] = {{"count", est.accept_arm1->count}, {"total", est.accept_arm1->total}};
    }
    return arms;
}

int cmd_game(const RunConfig& cfg, bool csv, const std::string& config_echo) {
    if (cfg.game.empty() || cfg.adversary.empty()) {
        std::cerr << "game requires --name and --adversary (flags or config file)\n";
        return 2;
    }
    auto game = games::parse_game(cfg.game);
    if (!game) {
        std::cerr << "unknown game: " << cfg.game << "\n";
        return 2;
    }
    const auto* info = games::find_adversary(cfg.adversary);
    if (!info || !info->supports(*game)) {
        std::cerr << "unknown or incompatible adversary: " << cfg.adversary << "\n";
        return 2;
    }

    games::GameConfig gc;
    gc.trials = cfg.trials;
    gc.q_e = cfg.q_e;
    gc.seed = cfg.seed;
    gc.vrfy = parse_vrfy(cfg.vrfy);
    gc.validate();

    games::Estimate est;
    std::string scheme;
    switch (*game) {
        case games::GameId::Ikind: {
            auto params = ikem_params(cfg);
            est = games::run_ikind(params, games::make_key_distinguisher(cfg.adversary, params), gc);
            scheme = "ikem";
            break;
        }
        case games::GameId::IndOtDem: {
            dem::Params params{parse_variant(cfg.dem), cfg.key_len};
            est = games::run_ind_ot_dem(params, games::make_dem_distinguisher(cfg.adversary, params),
                                        gc);
            scheme = "dem-" + cfg.dem;
            break;
        }
        case games::GameId::IndQeCpa: {
            auto params = phecd_params(cfg);
            est = games::run_ind_qe_cpa(params,
                                        games::make_hybrid_distinguisher(cfg.adversary, params), gc);
            scheme = "phecd-" + cfg.dem;
            break;
        }
        case games::GameId::EvCdDemcd: {
            auto variant = parse_variant(cfg.dem);
            std::size_t key_len = variant == dem::Variant::Otp ? cfg.lambda + 1 : cfg.key_len;
            demcd::Params params{dem::Params{variant, key_len}, cfg.lambda};
            est = games::run_ev_cd_demcd(params,
                                         games::make_deletion_adversary(cfg.adversary, params), gc);
            scheme = "demcd-" + cfg.dem;
            break;
        }
        case games::GameId::EvQeCd: {
            auto params = phecd_params(cfg);
            est = games::run_ev_qe_cd(
                params, games::make_deletion_adversary(cfg.adversary, params.demcd_params()), gc);
            scheme = "phecd-" + cfg.dem;
            break;
        }
    }

    json record{{"game", cfg.game},
                {"scheme", scheme},
                {"params", params_json(cfg)},
                {"adversary", cfg.adversary},
                {"trials", cfg.trials},
                {"q_e", cfg.q_e},
                {"acceptance", nullptr},
                {"advantage", est.advantage},
                {"ci_low", est.ci.lo},
                {"ci_high", est.ci.hi},
                {"seed", cfg.seed},
                {"arms", estimate_json(est)},
                {"aborted", est.aborted}};
    if (auto acc = est.acceptance()) record["acceptance"] = *acc;
    if (!config_echo.empty()) record["config"] = config_echo;

    if (csv) {
        std::string acc = est.acceptance() ? std::to_string(*est.acceptance()) : "";
        std::string text = "game,scheme,adversary,trials,q_e,seed,acceptance,advantage,ci_low,ci_high\n";
        text += cfg.game + "," + scheme + "," + cfg.adversary + "," + std::to_string(cfg.trials) +
                "," + std::to_string(cfg.q_e) + "," + std::to_string(cfg.seed) + "," + acc + "," +
                std::to_string(est.advantage) + "," + std::to_string(est.ci.lo) + "," +
                std::to_string(est.ci.hi) + "\n";
        emit(cfg.out, text);
    } else {
        emit(cfg.out, record.dump(2) + "\n");
    }
    return 0;
}

// -------------------------------------------------------------- oracle ----

json tradeoff_json(std::size_t lambda, const std::string& vrfy) {
    auto rows = oracle::tradeoff_table(lambda, parse_vrfy(vrfy));
    json out{{"lambda", lambda}, {"vrfy", vrfy}, {"rows", json::array()}};
    for (const auto& row : rows)
        out["rows"].push_back({{"strategy", row.strategy},
                               {"lambda", row.lambda},
                               {"acceptance", row.acceptance},
                               {"distance", row.distance}});
    return out;
}

// Reference enumeration points frozen into the golden files.
json ikem_sd_reference_json() {
    json out = json::array();
    struct Point {
        std::size_t n, l, r, c;
        double p_e;
    };
    for (const Point& pt : {Point{8, 2, 3, 2, 0.0}, Point{8, 2, 3, 2, 0.25}, Point{8, 2, 3, 2, 0.5},
                            Point{10, 1, 3, 2, 0.25}}) {
        ikem::Params p;
        p.source = correlated::SourceSpec{pt.n, 0.0, pt.p_e};
        p.key_len = pt.l;
        p.recon_len = pt.r;
        p.check_len = pt.c;
        p.decode_radius = 1;
        p.code_seed = 1;
        out.push_back({{"n", pt.n},
                       {"key_len", pt.l},
                       {"recon_len", pt.r},
                       {"check_len", pt.c},
                       {"p_b", 0.0},
                       {"p_e", pt.p_e},
                       {"decode_radius", 1},
                       {"code_seed", 1},
                       {"sd", oracle::exact_ikem_sd(p)}});
    }
    return out;
}

int cmd_oracle(const RunConfig& cfg, std::size_t lambda, bool csv, bool regen_golden,
               const std::string& golden_dir, bool ikem_sd) {
    if (lambda < 1 || lambda > oracle::kMaxOracleQubits) {
        std::cerr << "oracle requires 1 <= lambda <= 3\n";
        return 2;
    }

    if (regen_golden) {
        {
            std::ofstream out(golden_dir + "/tradeoff_lambda3_default.json");
            if (!out) throw ParamError("cannot write golden files under " + golden_dir);
            out << tradeoff_json(3, "default").dump(2) << "\n";
        }
        {
            std::ofstream out(golden_dir + "/ikem_sd.json");
            out << ikem_sd_reference_json().dump(2) << "\n";
        }
        std::cout << "regenerated golden files under " << golden_dir << "\n";
        return 0;
    }

    if (ikem_sd) {
        auto params = ikem_params(cfg);
        double sd = oracle::exact_ikem_sd(params);
        json doc{{"params", params_json(cfg)}, {"sd", sd}};
        emit(cfg.out, doc.dump(2) + "\n");
        return 0;
    }

    if (csv) {
        std::string text = "strategy,lambda,acceptance,distance\n";
        for (const auto& row : oracle::tradeoff_table(lambda, parse_vrfy(cfg.vrfy)))
            text += row.strategy + "," + std::to_string(row.lambda) + "," +
                    std::to_string(row.acceptance) + "," + std::to_string(row.distance) + "\n";
        emit(cfg.out, text);
    } else {
        emit(cfg.out, tradeoff_json(lambda, cfg.vrfy).dump(2) + "\n");
    }
    return 0;
}

// ------------------------------------------------------------- formats ----

constexpr const char* kFormatsText = R"(Wire formats (all integers little-endian)

bit field          u32 bit count, then ceil(bits/8) packed bytes; bit i sits
                   in byte i/8 at position i%8; padding bits are zero.
capsule            bit_field salt (n bits), bit_field recon, bit_field tag.
data ciphertext    u8 variant (0 = otp, 1 = stream), stream adds a 12-byte
                   nonce, then the payload as a bit field.
verification key   bit_field x, bit_field theta.
certificate        bit_field.
hybrid ciphertext  u32 capsule count, each capsule length-prefixed (u32);
(classical parts)  u32 payload count, each data ciphertext length-prefixed.
                   The quantum registers exist only inside a simulation
                   process and are never serialized.
vk/cert lists      u32 count, each entry length-prefixed (u32).

JSON emitted by `game` and `oracle` follows docs/schemas/.
)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid encryption with certified deletion: demos, security games, exact oracle"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env_seed = std::getenv("CERTDEL_SEED")) cfg.seed = std::strtoull(env_seed, nullptr, 10);

    std::string config_file;
    bool pretty = false, csv = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_file, "JSON config file");
        cmd->add_option("--seed", cfg.seed, "random seed (default from CERTDEL_SEED)");
        cmd->add_option("--out", cfg.out, "output file (default stdout)");
        cmd->add_option("--lambda", cfg.lambda, "qubits per message bit");
        cmd->add_option("--dem", cfg.dem, "data layer variant: otp | stream");
        cmd->add_option("--vrfy", cfg.vrfy, "verification mode: default | strict");
        cmd->add_option("--n", cfg.n, "source sample length");
        cmd->add_option("--pb", cfg.p_b, "receiver flip rate");
        cmd->add_option("--pe", cfg.p_e, "eavesdropper flip rate");
        cmd->add_option("--key-len", cfg.key_len, "extracted key bits");
        cmd->add_option("--recon-len", cfg.recon_len, "reconciliation bits");
        cmd->add_option("--check-len", cfg.check_len, "confirmation tag bits");
        cmd->add_option("--decode-radius", cfg.decode_radius, "syndrome decoding radius");
        cmd->add_option("--code-seed", cfg.code_seed, "parity-check matrix seed");
        cmd->add_flag("--per-bit-capsule", cfg.per_bit_capsule, "fresh encapsulation per bit");
    };

    auto* demo = app.add_subcommand("demo", "run keygen -> enc -> {dec | del -> vrfy}");
    add_common(demo);
    demo->add_option("--message", cfg.message, "message bits, e.g. 1011");
    demo->add_option("--path", cfg.path, "decrypt | delete | both");
    demo->add_flag("--pretty", pretty, "line-oriented transcript instead of JSON");

    auto* game = app.add_subcommand("game", "run a security experiment");
    add_common(game);
    game->add_option("--name", cfg.game, "ikind | ind-ot-dem | ind-qe-cpa | ev-cd-demcd | ev-qe-cd");
    game->add_option("--adversary", cfg.adversary, "built-in strategy name");
    game->add_option("--trials", cfg.trials, "trials per arm");
    game->add_option("--qe", cfg.q_e, "oracle query budget");
    game->add_flag("--csv", csv, "CSV output");

    std::size_t oracle_lambda = 3;
    bool regen_golden = false, ikem_sd = false;
    std::string golden_dir = "data/golden";
    auto* orc = app.add_subcommand("oracle", "exact small-instance analysis");
    add_common(orc);
    orc->add_option("--oracle-lambda", oracle_lambda, "register size for the exact analysis (<= 3)");
    orc->add_flag("--csv", csv, "CSV output");
    orc->add_flag("--regen-golden", regen_golden, "rewrite the golden files");
    orc->add_option("--golden-dir", golden_dir, "directory for golden files");
    orc->add_flag("--ikem-sd", ikem_sd, "exact key statistical distance at tiny parameters");

    auto* formats = app.add_subcommand("formats", "print the wire formats");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!config_file.empty()) {
            apply_config_file(cfg, config_file);
            // flags win over the file
            std::vector<char*> args(argv, argv + argc);
            app.clear();
            app.parse(argc, argv);
        }
        if (demo->parsed()) return cmd_demo(cfg, pretty);
        if (game->parsed()) return cmd_game(cfg, csv, config_file);
        if (orc->parsed()) return cmd_oracle(cfg, oracle_lambda, csv, regen_golden, golden_dir, ikem_sd);
        if (formats->parsed()) {
            std::cout << kFormatsText;
            return 0;
        }
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
