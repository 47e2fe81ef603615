#include "cli.hpp"

#include "hidden/elgamal.hpp"
#include "hidden/errors.hpp"
#include "hidden/gmod.hpp"
#include "hidden/json_io.hpp"
#include "hidden/numbers.hpp"
#include "hidden/paillier.hpp"
#include "hidden/rdh.hpp"
#include "hidden/rng.hpp"
#include "hidden/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace hidden::cli {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kRejected = 2;

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("HIDDEN_SEED");
    if (!v) return std::nullopt;
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("HIDDEN_SEED is not an unsigned integer");
    }
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (auto env = env_seed()) return *env;
    throw ConfigError("no seed: pass --seed or set HIDDEN_SEED");
}

struct KeygenArgs {
    std::string scheme;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string p, q, gamma, a, order_factors;
    unsigned bits = 0;
};

int cmd_keygen(const KeygenArgs& args, std::ostream& out) {
    std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);

    if (args.scheme == "eg") {
        mpz_class p;
        if (!args.p.empty()) {
            p = dec_to_mpz(njson(args.p));
        } else if (args.bits > 0) {
            if (args.bits > 96)
                throw ConfigError("random eg primes are supported up to 96 bits; for larger "
                                  "parameters pass --p with --order-factors");
            SeededRng rng(derive_subseed(require_seed(args.seed), "keygen.p"));
            do {
                p = rng.bits(args.bits - 1) | (mpz_class(1) << (args.bits - 1)) | 1;
            } while (!is_suitable_prime(p));
        } else {
            throw ConfigError("eg keygen needs --p or --bits");
        }

        GModRing ring = [&] {
            try {
                return GModRing(p);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }();

        std::vector<mpz_class> factors;
        if (!args.order_factors.empty()) {
            std::stringstream ss(args.order_factors);
            std::string item;
            while (std::getline(ss, item, ',')) {
                mpz_class f = dec_to_mpz(njson(item));
                if (!is_prime(f) || ring.order() % f != 0)
                    throw ConfigError("--order-factors: " + f.get_str() +
                                      " is not a prime factor of p^2-1");
                factors.push_back(f);
            }
        } else {
            if (mpz_sizeinbase(p.get_mpz_t(), 2) > 96)
                throw ConfigError("p too large to factor p^2-1 here; pass --order-factors");
            for (const auto& kv : factorize(ring.order())) factors.push_back(kv.first);
        }

        SeededRng rng(derive_subseed(require_seed(args.seed), "keygen"));
        GaussianInt gamma = args.gamma.empty() ? find_generator(ring, factors, rng)
                                               : parse_gaussian(args.gamma);
        elgamal::KeyPair keys = [&] {
            try {
                return args.a.empty()
                           ? elgamal::keygen(ring, gamma, factors, rng)
                           : elgamal::keygen_with_exponent(ring, gamma, factors,
                                                           dec_to_mpz(njson(args.a)));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }();

        save_json_file(dir / "eg_public.json", elgamal::public_key_to_json(keys.pub));
        save_json_file(dir / "eg_private.json", elgamal::private_key_to_json(keys.priv));
        out << "eg key pair written to " << dir.string() << "\n";
        out << "p = " << keys.pub.ring.p() << "\n";
        out << "gamma = " << to_string(keys.pub.gamma) << ", K = " << to_string(keys.pub.K)
            << "\n";
        out << "group order p^2-1 = " << keys.pub.ring.order() << "; largest prime factor has "
            << elgamal::largest_factor_bits(keys.pub) << " bits\n";
        return kOk;
    }

    if (args.scheme == "paillier") {
        paillier::KeyPair keys = [&] {
            try {
                if (!args.p.empty() && !args.q.empty())
                    return paillier::keygen(dec_to_mpz(njson(args.p)),
                                            dec_to_mpz(njson(args.q)));
                if (args.bits == 0)
                    throw ConfigError("paillier keygen needs --p/--q or --bits");
                SeededRng rng(derive_subseed(require_seed(args.seed), "keygen"));
                return paillier::keygen_random(args.bits, rng);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }();
        save_json_file(dir / "paillier_public.json", paillier::public_key_to_json(keys.pub));
        save_json_file(dir / "paillier_private.json", paillier::private_key_to_json(keys.priv));
        out << "paillier key pair written to " << dir.string() << "\n";
        out << "n = " << keys.pub.n << " (" << mpz_sizeinbase(keys.pub.n.get_mpz_t(), 2)
            << " bits), g = " << keys.pub.g << "\n";
        return kOk;
    }

    throw ConfigError("unknown scheme: " + args.scheme);
}

int cmd_simulate(const std::string& config_path, const std::string& transcript_path,
                 const std::optional<std::uint64_t>& seed_flag, std::ostream& out) {
    proto::ScenarioConfig cfg = proto::ScenarioConfig::from_json(load_json_file(config_path));
    if (seed_flag) {
        cfg.seed = *seed_flag;
        cfg.seed_provided = true;
    } else if (auto env = env_seed()) {
        cfg.seed = *env;
        cfg.seed_provided = true;
    }
    if (!cfg.seed_provided)
        throw ConfigError("no seed: set it in the config, pass --seed, or set HIDDEN_SEED");

    proto::SimulationResult result = proto::run_scenario(cfg);

    if (!transcript_path.empty()) {
        std::ofstream os(transcript_path, std::ios::binary);
        if (!os) throw ConfigError("cannot write transcript: " + transcript_path);
        proto::write_transcript(result, os);
    }

    for (const auto& round : result.rounds) {
        out << "round " << round.round << ": ";
        if (round.verdict.accepted)
            out << "accepted data=" << round.verdict.data
                << " watermark=" << round.verdict.watermark << "\n";
        else
            out << "rejected (" << round.verdict.reason << ")\n";
    }
    return result.all_accepted ? kOk : kRejected;
}

struct RoundReport {
    std::uint64_t round = 0;
    bool is_aggp = false;
    std::uint64_t challenge_count = 0;
    proto::RoundCounters counters;
    bool have_counters = false;
};

int cmd_counters(const std::string& transcript_path, std::ostream& out) {
    std::ifstream in(transcript_path);
    if (!in) throw ConfigError("cannot open transcript: " + transcript_path);

    std::vector<RoundReport> rounds;
    RoundReport current;
    bool any = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        njson rec;
        try {
            rec = njson::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("malformed transcript line: ") + e.what());
        }
        any = true;
        if (rec.contains("kind")) {
            std::string kind = rec.at("kind").get<std::string>();
            if (kind.rfind("aggp", 0) == 0) current.is_aggp = true;
            if (kind == "aggp_challenge") ++current.challenge_count;
        } else if (rec.contains("counters")) {
            current.round = rec.at("round").get<std::uint64_t>();
            current.counters = proto::RoundCounters::from_json(rec.at("counters"));
            current.have_counters = true;
            rounds.push_back(current);
            current = RoundReport{};
        }
    }
    if (!any || rounds.empty())
        throw ConfigError("transcript holds no completed rounds");

    bool all_ok = true;
    for (const auto& r : rounds) {
        const auto& c = r.counters;
        bool ok;
        out << "round " << r.round;
        if (r.is_aggp) {
            std::uint64_t n = r.challenge_count;
            ok = c.modexp_n2_sensor == 4 && c.modexp_n2_dc == 2 && c.messages_total == 2 * n;
            out << " [aggp N=" << n << "]: sensor modexp_n2=" << c.modexp_n2_sensor
                << " (expect 4), dc modexp_n2=" << c.modexp_n2_dc
                << " (expect 2), messages=" << c.messages_total << " (expect " << 2 * n << ")";
        } else {
            std::uint64_t s_eq = 4 * c.complex_modexp_sensor + c.int_modexp_sensor;
            std::uint64_t dc_eq = 4 * c.complex_modexp_dc + c.int_modexp_dc;
            ok = c.complex_modexp_sensor == 2 && c.int_modexp_sensor == 0 &&
                 c.complex_modexp_dc == 3 && c.int_modexp_dc == 1;
            out << " [eg]: sensor complex=" << c.complex_modexp_sensor
                << " int=" << c.int_modexp_sensor << " equiv=" << s_eq
                << " (expect 8), dc complex=" << c.complex_modexp_dc
                << " int=" << c.int_modexp_dc << " equiv=" << dc_eq << " (expect 13)";
        }
        out << (ok ? " -> ok" : " -> MISMATCH") << "\n";
        all_ok = all_ok && ok;
    }
    out << (all_ok ? "counters conform to the protocol cost model\n"
                   : "counters deviate from the protocol cost model\n");
    return all_ok ? kOk : kRejected;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"reversible watermarking and homomorphic encryption over Gaussian integers"};
    app.require_subcommand(1);

    KeygenArgs kg;
    auto* keygen = app.add_subcommand("keygen", "generate and store a key pair");
    keygen->add_option("--scheme", kg.scheme, "eg | paillier")->required();
    keygen->add_option("--out", kg.out_dir, "output directory")->required();
    keygen->add_option("--seed", kg.seed, "master seed (fallback: HIDDEN_SEED)");
    keygen->add_option("--p", kg.p, "explicit prime p");
    keygen->add_option("--q", kg.q, "explicit prime q (paillier)");
    keygen->add_option("--gamma", kg.gamma, "generator as a+bi (eg)");
    keygen->add_option("--a", kg.a, "explicit private exponent (eg)");
    keygen->add_option("--order-factors", kg.order_factors,
                       "comma-separated prime factors of p^2-1 (eg)");
    keygen->add_option("--bits", kg.bits, "random prime size in bits");

    std::string lambda_text, value_text;
    std::string data_text, watermark_text = "0", agg_n;
    auto* embed = app.add_subcommand("embed", "embed data and watermark under a key");
    embed->add_option("--lambda", lambda_text, "challenge factor a+bi")->required();
    embed->add_option("--data", data_text, "integer data")->required();
    embed->add_option("--watermark", watermark_text, "integer watermark (default 0)");

    auto* extract = app.add_subcommand("extract", "recover data and watermark");
    extract->add_option("--lambda", lambda_text, "challenge factor a+bi")->required();
    extract->add_option("--value", value_text, "embedded value x+yi")->required();
    extract->add_option("--aggregate-n", agg_n, "treat value as an aggregate of N devices");

    std::string config_path, transcript_path;
    std::optional<std::uint64_t> seed_flag;
    auto* simulate = app.add_subcommand("simulate", "run a protocol scenario");
    simulate->add_option("--config", config_path, "scenario config JSON")->required();
    simulate->add_option("--transcript", transcript_path, "JSONL transcript output path");
    simulate->add_option("--seed", seed_flag, "master seed (overrides config)");

    std::string counters_path;
    auto* counters = app.add_subcommand("counters", "audit a transcript's operation counts");
    counters->add_option("--transcript", counters_path, "JSONL transcript input")->required();

    std::vector<std::string> argv_copy = args;
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>("hidden"));
    for (auto& a : argv_copy) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(kg, out);
        if (embed->parsed()) {
            rdh::WatermarkKey key(parse_gaussian(lambda_text));
            GaussianInt marked = rdh::embed(dec_to_mpz(njson(data_text)),
                                            dec_to_mpz(njson(watermark_text)), key);
            out << gaussian_to_json(marked).dump() << "\n";
            return kOk;
        }
        if (extract->parsed()) {
            rdh::WatermarkKey key(parse_gaussian(lambda_text));
            GaussianInt value = parse_gaussian(value_text);
            if (agg_n.empty()) {
                rdh::Extracted e = rdh::extract(value, key);
                out << njson{{"data", to_dec(e.data)}, {"watermark", to_dec(e.watermark)}}.dump()
                    << "\n";
            } else {
                rdh::AggExtracted e =
                    rdh::extract_aggregate(value, key, dec_to_mpz(njson(agg_n)));
                out << njson{{"data", to_dec(e.sum)}, {"watermark", to_dec(e.watermark)}}.dump()
                    << "\n";
            }
            return kOk;
        }
        if (simulate->parsed())
            return cmd_simulate(config_path, transcript_path, seed_flag, out);
        if (counters->parsed()) return cmd_counters(counters_path, out);
    } catch (const IntegrityError& e) {
        err << "integrity error: " << e.what() << "\n";
        return kRejected;
    } catch (const AmbiguityError& e) {
        err << "ambiguity error: " << e.what() << "\n";
        return kRejected;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "out of range: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace hidden::cli
