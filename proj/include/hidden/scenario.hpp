#pragma once

#include "hidden/json_io.hpp"
#include "hidden/protocol.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hidden::proto {

enum class AttackType { none, replay, tamper, false_injection, masquerade };

struct AttackPlan {
    AttackType type = AttackType::none;
    std::uint64_t at = 0;          // round under attack (default: last)
    std::uint64_t replay_from = 0; // source round for replay
    std::string target;            // tamper component: psi1_re, psi1_im,
                                   // psi2_re, psi2_im (EG); cR, cI (AggP)
};

// Parsed form of the simulate config file. Exact key layout documented in
// the README; all integers accept plain numbers or decimal strings.
struct ScenarioConfig {
    std::string protocol; // "eg" | "aggp"
    std::uint64_t seed = 0;
    bool seed_provided = false;
    unsigned sensor_count = 1;
    unsigned watermark_bits = 16;
    std::uint64_t rounds = 1;

    // data source: either an inline per-round matrix or a uniform range
    std::optional<std::vector<std::vector<mpz_class>>> inline_data; // [round][sensor]
    mpz_class data_min;
    mpz_class data_max;

    std::optional<GaussianInt> fixed_lambda;
    std::optional<mpz_class> lambda_bound;
    mpz_class data_offset;
    LiftMode lift = LiftMode::centered;
    bool padded_tree = true;

    // eg parameters
    std::optional<mpz_class> eg_p;
    std::optional<GaussianInt> eg_gamma;
    std::optional<mpz_class> eg_private_exponent;
    std::vector<mpz_class> eg_order_factors; // optional; factored when absent

    // aggp parameters
    std::optional<unsigned> paillier_bits;
    std::optional<mpz_class> paillier_p;
    std::optional<mpz_class> paillier_q;

    AttackPlan attack;

    static ScenarioConfig from_json(const njson& j);
};

struct SimulationResult {
    std::vector<RoundTranscript> rounds;
    bool all_accepted = true;
};

// Deterministic in-process run of the configured protocol for M rounds,
// with the attack plan (if any) applied at its target round.
SimulationResult run_scenario(const ScenarioConfig& config);

void write_transcript(const SimulationResult& result, std::ostream& os);

} // namespace hidden::proto
