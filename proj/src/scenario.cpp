#include "hidden/scenario.hpp"

#include "hidden/errors.hpp"
#include "hidden/numbers.hpp"

#include <ostream>

namespace hidden::proto {

namespace {

mpz_class opt_mpz(const njson& j, const char* key, const mpz_class& fallback) {
    return j.contains(key) ? dec_to_mpz(j.at(key)) : fallback;
}

AttackPlan parse_attack(const njson& j, std::uint64_t rounds) {
    AttackPlan plan;
    if (!j.contains("attack")) return plan;
    const njson& a = j.at("attack");
    std::string type = a.value("type", "none");
    if (type == "none") return plan;

    plan.at = a.contains("at") ? a.at("at").get<std::uint64_t>() : rounds;
    if (plan.at < 1 || plan.at > rounds)
        throw ConfigError("attack.at must be a round in [1, M]");

    if (type == "replay") {
        plan.type = AttackType::replay;
        if (!a.contains("from"))
            throw ConfigError("replay attack requires \"from\"");
        plan.replay_from = a.at("from").get<std::uint64_t>();
        if (plan.replay_from < 1 || plan.replay_from >= plan.at)
            throw ConfigError("replay.from must name an earlier round than attack.at");
    } else if (type == "tamper" || type == "tamper_ciphertext") {
        plan.type = AttackType::tamper;
        plan.target = a.value("target", "");
    } else if (type == "false_injection") {
        plan.type = AttackType::false_injection;
    } else if (type == "masquerade" || type == "masquerade_no_watermark") {
        plan.type = AttackType::masquerade;
    } else {
        throw ConfigError("unknown attack type: " + type);
    }
    return plan;
}

} // namespace

ScenarioConfig ScenarioConfig::from_json(const njson& j) {
    ScenarioConfig c;
    if (!j.contains("protocol"))
        throw ConfigError("config: \"protocol\" is required");
    c.protocol = j.at("protocol").get<std::string>();
    if (c.protocol != "eg" && c.protocol != "aggp")
        throw ConfigError("config: protocol must be \"eg\" or \"aggp\"");

    if (j.contains("seed")) {
        c.seed = j.at("seed").get<std::uint64_t>();
        c.seed_provided = true;
    }

    c.sensor_count = j.value("N", 1u);
    c.watermark_bits = j.value("B", 16u);
    c.rounds = j.value("M", std::uint64_t{1});
    if (c.sensor_count < 1) throw ConfigError("config: N must be at least 1");
    if (c.watermark_bits < 1) throw ConfigError("config: B must be at least 1");
    if (c.rounds < 1) throw ConfigError("config: M must be at least 1");
    if (c.protocol == "eg" && c.sensor_count != 1)
        throw ConfigError("config: the eg protocol runs a single sensor (N = 1)");

    if (!j.contains("data"))
        throw ConfigError("config: \"data\" is required");
    const njson& data = j.at("data");
    if (data.contains("inline")) {
        const njson& arr = data.at("inline");
        if (!arr.is_array() || arr.empty())
            throw ConfigError("config: data.inline must be a non-empty array");
        std::vector<std::vector<mpz_class>> rows;
        if (arr.front().is_array()) {
            for (const auto& row : arr) {
                std::vector<mpz_class> r;
                for (const auto& v : row) r.push_back(dec_to_mpz(v));
                rows.push_back(std::move(r));
            }
        } else if (c.sensor_count == 1) {
            for (const auto& v : arr) rows.push_back({dec_to_mpz(v)});
        } else if (c.rounds == 1) {
            std::vector<mpz_class> r;
            for (const auto& v : arr) r.push_back(dec_to_mpz(v));
            rows.push_back(std::move(r));
        } else {
            throw ConfigError("config: data.inline must be an array of per-round arrays");
        }
        if (rows.size() != c.rounds)
            throw ConfigError("config: data.inline must supply one row per round");
        bool first = true;
        for (const auto& row : rows) {
            if (row.size() != c.sensor_count)
                throw ConfigError("config: data.inline rows must have one value per sensor");
            for (const auto& v : row) {
                if (first || v < c.data_min) c.data_min = v;
                if (first || v > c.data_max) c.data_max = v;
                first = false;
            }
        }
        c.inline_data = std::move(rows);
    } else if (data.contains("uniform")) {
        c.data_min = dec_to_mpz(data.at("uniform").at("min"));
        c.data_max = dec_to_mpz(data.at("uniform").at("max"));
        if (c.data_min > c.data_max)
            throw ConfigError("config: data.uniform.min must not exceed max");
    } else {
        throw ConfigError("config: data must be {\"inline\": ...} or {\"uniform\": ...}");
    }

    if (j.contains("lambda")) c.fixed_lambda = parse_gaussian(j.at("lambda").get<std::string>());
    if (j.contains("lambda_bound")) c.lambda_bound = dec_to_mpz(j.at("lambda_bound"));
    c.data_offset = opt_mpz(j, "data_offset", 0);

    std::string lift = j.value("lift", "centered");
    if (lift == "centered")
        c.lift = LiftMode::centered;
    else if (lift == "canonical")
        c.lift = LiftMode::canonical;
    else
        throw ConfigError("config: lift must be \"centered\" or \"canonical\"");

    std::string tree = j.value("tree", "padded");
    if (tree == "padded")
        c.padded_tree = true;
    else if (tree == "unbalanced")
        c.padded_tree = false;
    else
        throw ConfigError("config: tree must be \"padded\" or \"unbalanced\"");

    if (c.protocol == "eg") {
        if (!j.contains("p"))
            throw ConfigError("config: eg protocol requires \"p\"");
        c.eg_p = dec_to_mpz(j.at("p"));
        if (j.contains("gamma")) c.eg_gamma = parse_gaussian(j.at("gamma").get<std::string>());
        if (j.contains("a")) c.eg_private_exponent = dec_to_mpz(j.at("a"));
        if (j.contains("order_factors"))
            for (const auto& f : j.at("order_factors")) c.eg_order_factors.push_back(dec_to_mpz(f));
    } else {
        if (j.contains("paillier_bits")) c.paillier_bits = j.at("paillier_bits").get<unsigned>();
        if (j.contains("paillier_p")) c.paillier_p = dec_to_mpz(j.at("paillier_p"));
        if (j.contains("paillier_q")) c.paillier_q = dec_to_mpz(j.at("paillier_q"));
        bool explicit_primes = c.paillier_p.has_value() && c.paillier_q.has_value();
        if (!explicit_primes && !c.paillier_bits)
            throw ConfigError("config: aggp requires paillier_bits or paillier_p/paillier_q");
    }

    c.attack = parse_attack(j, c.rounds);
    return c;
}

namespace {

// Per-round data matrix, either the inline table or uniform draws from a
// dedicated stream.
std::vector<std::vector<mpz_class>> make_data(const ScenarioConfig& cfg) {
    if (cfg.inline_data) return *cfg.inline_data;
    SeededRng rng(derive_subseed(cfg.seed, "data"));
    std::vector<std::vector<mpz_class>> rows(cfg.rounds);
    for (auto& row : rows) {
        row.reserve(cfg.sensor_count);
        for (unsigned jdx = 0; jdx < cfg.sensor_count; ++jdx)
            row.push_back(rng.in_range(cfg.data_min, cfg.data_max));
    }
    return rows;
}

WatermarkSchedule make_schedule(const ScenarioConfig& cfg) {
    SeededRng rng(derive_subseed(cfg.seed, "schedule"));
    return WatermarkSchedule(rng.bytes(32), cfg.watermark_bits, cfg.rounds);
}

mpz_class abs_data_reach(const ScenarioConfig& cfg) {
    mpz_class lo = abs(cfg.data_min + cfg.data_offset);
    mpz_class hi = abs(cfg.data_max + cfg.data_offset);
    return lo > hi ? lo : hi;
}

SimulationResult run_eg(const ScenarioConfig& cfg) {
    GModRing ring = [&] {
        try {
            return GModRing(*cfg.eg_p);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();

    std::vector<mpz_class> factors = cfg.eg_order_factors;
    if (factors.empty())
        for (const auto& kv : factorize(ring.order())) factors.push_back(kv.first);

    SeededRng keygen_rng(derive_subseed(cfg.seed, "keygen"));
    GaussianInt gamma = cfg.eg_gamma ? *cfg.eg_gamma
                                     : find_generator(ring, factors, keygen_rng);
    elgamal::KeyPair keys = [&] {
        try {
            return cfg.eg_private_exponent
                       ? elgamal::keygen_with_exponent(ring, gamma, factors,
                                                       *cfg.eg_private_exponent)
                       : elgamal::keygen(ring, gamma, factors, keygen_rng);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();

    EgParams params{keys.pub,
                    make_schedule(cfg),
                    cfg.fixed_lambda,
                    1,
                    cfg.data_min,
                    cfg.data_max,
                    cfg.data_offset,
                    cfg.lift};
    if (cfg.lambda_bound) {
        params.lambda_bound = *cfg.lambda_bound;
    } else if (!cfg.fixed_lambda) {
        // largest cap that keeps lambda*delta inside the centered box for
        // every watermark the schedule can emit
        mpz_class reach = abs_data_reach(cfg) + params.schedule.max_watermark();
        mpz_class cap = (ring.p() - 1) / (2 * reach);
        if (cap < 1)
            throw ConfigError("p is too small for the configured data range and B");
        params.lambda_bound = cap;
    }

    EgDataCollector dc(params, keys.priv, SeededRng(derive_subseed(cfg.seed, "dc")));
    EgSensor sensor(params, SeededRng(derive_subseed(cfg.seed, "sensor.1")));
    SeededRng attack_rng(derive_subseed(cfg.seed, "attack"));

    auto data = make_data(cfg);
    std::vector<elgamal::Ciphertext> response_history(cfg.rounds + 1);
    elgamal::Ciphertext seen_challenge;

    SimulationResult result;
    for (std::uint64_t k = 1; k <= cfg.rounds; ++k) {
        EgRoundHooks hooks;
        hooks.on_challenge = [&](const elgamal::Ciphertext& ct) {
            seen_challenge = ct;
            return ct;
        };
        hooks.on_response = [&](const elgamal::Ciphertext& ct) {
            response_history[k] = ct;
            if (cfg.attack.type == AttackType::none || cfg.attack.at != k) return ct;
            switch (cfg.attack.type) {
            case AttackType::replay:
                return response_history[cfg.attack.replay_from];
            case AttackType::tamper: {
                elgamal::Ciphertext out = ct;
                mpz_class delta = attack_rng.in_range(1, ring.p() - 1);
                std::string target = cfg.attack.target.empty() ? "psi2_re" : cfg.attack.target;
                if (target == "psi1_re")
                    out.psi1.re = (out.psi1.re + delta) % ring.p();
                else if (target == "psi1_im")
                    out.psi1.im = (out.psi1.im + delta) % ring.p();
                else if (target == "psi2_re")
                    out.psi2.re = (out.psi2.re + delta) % ring.p();
                else if (target == "psi2_im")
                    out.psi2.im = (out.psi2.im + delta) % ring.p();
                else
                    throw ConfigError("unknown eg tamper target: " + target);
                return out;
            }
            case AttackType::false_injection: {
                // fabricated ciphertext under the public key, no challenge use
                GaussianInt fake{attack_rng.below(ring.p()), attack_rng.below(ring.p())};
                if (fake.is_zero()) fake = GaussianInt(1, 1);
                mpz_class b = attack_rng.in_range(1, ring.order() - 1);
                return elgamal::encrypt(fake, b, keys.pub);
            }
            case AttackType::masquerade: {
                // protocol-shaped response with a guessed watermark
                mpz_class d_fake =
                    attack_rng.in_range(cfg.data_min, cfg.data_max) + cfg.data_offset;
                mpz_class w_fake = attack_rng.bits(cfg.watermark_bits);
                GaussianInt delta_fake{d_fake, w_fake};
                if (delta_fake.is_zero()) delta_fake = GaussianInt(1, 0);
                mpz_class b = attack_rng.in_range(1, ring.order() - 1);
                return elgamal::ct_mul(seen_challenge,
                                       elgamal::encrypt(delta_fake, b, keys.pub), ring);
            }
            default:
                return ct;
            }
        };

        result.rounds.push_back(eg_round(dc, sensor, data[k - 1][0], k, hooks));
        if (!result.rounds.back().verdict.accepted) result.all_accepted = false;
    }
    return result;
}

SimulationResult run_aggp(const ScenarioConfig& cfg) {
    SeededRng keygen_rng(derive_subseed(cfg.seed, "keygen"));
    paillier::KeyPair keys = [&] {
        try {
            if (cfg.paillier_p && cfg.paillier_q)
                return paillier::keygen(*cfg.paillier_p, *cfg.paillier_q);
            return paillier::keygen_random(*cfg.paillier_bits, keygen_rng);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }();
    const mpz_class& n = keys.pub.n;

    AggpParams params{keys.pub,
                      make_schedule(cfg),
                      cfg.fixed_lambda,
                      1,
                      cfg.data_min,
                      cfg.data_max,
                      cfg.sensor_count,
                      cfg.padded_tree,
                      &default_cipher()};
    if (cfg.lambda_bound) {
        params.lambda_bound = *cfg.lambda_bound;
    } else if (!cfg.fixed_lambda) {
        mpz_class reach = abs_data_reach(cfg) + params.schedule.max_watermark();
        mpz_class cap = (n - 1) / (2 * cfg.sensor_count * reach);
        if (cap < 1)
            throw ConfigError("n is too small for the configured data range, N and B");
        params.lambda_bound = cap;
    }

    AggpDataCollector dc(params, keys.priv, SeededRng(derive_subseed(cfg.seed, "dc")));
    std::vector<AggpSensor> sensors;
    sensors.reserve(cfg.sensor_count);
    for (unsigned jdx = 1; jdx <= cfg.sensor_count; ++jdx)
        sensors.emplace_back(jdx, params,
                             SeededRng(derive_subseed(cfg.seed, "sensor." + std::to_string(jdx))));

    aggp_setup(dc, sensors);
    SeededRng attack_rng(derive_subseed(cfg.seed, "attack"));

    auto data = make_data(cfg);
    std::vector<paillier::GaussCiphertext> final_history(cfg.rounds + 1);

    SimulationResult result;
    for (std::uint64_t k = 1; k <= cfg.rounds; ++k) {
        AggpRoundHooks hooks;
        hooks.on_challenge = [&](unsigned index, const Bytes& box) {
            if (cfg.attack.type == AttackType::tamper && cfg.attack.at == k &&
                cfg.attack.target == "challenge" && index == 1) {
                Bytes out = box;
                out[attack_rng.below(out.size()).get_ui()] ^= 0x01;
                return out;
            }
            return box;
        };
        hooks.on_final = [&](const paillier::GaussCiphertext& ct) {
            final_history[k] = ct;
            if (cfg.attack.type == AttackType::none || cfg.attack.at != k) return ct;
            switch (cfg.attack.type) {
            case AttackType::replay:
                return final_history[cfg.attack.replay_from];
            case AttackType::tamper: {
                std::string target = cfg.attack.target.empty() ? "cR" : cfg.attack.target;
                if (target == "challenge") return ct; // handled on the challenge leg
                paillier::GaussCiphertext out = ct;
                mpz_class delta = attack_rng.in_range(1, keys.pub.n2 - 1);
                if (target == "cR")
                    out.cR = (out.cR + delta) % keys.pub.n2;
                else if (target == "cI")
                    out.cI = (out.cI + delta) % keys.pub.n2;
                else
                    throw ConfigError("unknown aggp tamper target: " + target);
                return out;
            }
            case AttackType::false_injection: {
                mpz_class half = (n - 1) / 2;
                GaussianInt fake{attack_rng.below(n) - half, attack_rng.below(n) - half};
                return paillier::enc_gauss(fake, keys.pub, attack_rng);
            }
            case AttackType::masquerade: {
                // well-formed aggregate built without knowing lambda_k or w_k
                GaussianInt lambda_fake{attack_rng.in_range(1, params.lambda_bound),
                                        attack_rng.in_range(1, params.lambda_bound)};
                mpz_class s_fake = attack_rng.in_range(cfg.sensor_count * cfg.data_min,
                                                       cfg.sensor_count * cfg.data_max);
                mpz_class w_fake = attack_rng.bits(cfg.watermark_bits);
                GaussianInt sigma =
                    lambda_fake * GaussianInt{s_fake, cfg.sensor_count * w_fake};
                return paillier::enc_gauss(sigma, keys.pub, attack_rng);
            }
            default:
                return ct;
            }
        };

        result.rounds.push_back(aggp_round(dc, sensors, data[k - 1], k, hooks));
        if (!result.rounds.back().verdict.accepted) result.all_accepted = false;
    }
    return result;
}

} // namespace

SimulationResult run_scenario(const ScenarioConfig& config) {
    if (config.protocol == "eg") return run_eg(config);
    return run_aggp(config);
}

void write_transcript(const SimulationResult& result, std::ostream& os) {
    for (const auto& round : result.rounds)
        round.write_jsonl(os);
}

} // namespace hidden::proto
