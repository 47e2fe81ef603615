#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"

#include "hidden/json_io.hpp"
#include "hidden/rng.hpp"
#include "hidden/schedule.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using hidden::njson;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = hidden::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "hidden_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kEgScenario = R"({
  "protocol": "eg",
  "seed": 1234,
  "N": 1, "B": 16, "M": 2,
  "data": {"uniform": {"min": 0, "max": 100000}},
  "p": "11549574199944959411",
  "gamma": "8527195849335553776+4979658421178727928i",
  "order_factors": ["2","3","5","13","31","61","97","827","48281","4888579","2388249420997717"]
})";

} // namespace

TEST_CASE("keygen writes the toy elgamal key pair") {
    fs::path dir = fresh_dir("eg_keys");
    RunResult r = run_cli({"keygen", "--scheme", "eg", "--p", "23", "--gamma", "1+2i", "--a",
                           "7", "--out", dir.string(), "--seed", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("largest prime factor") != std::string::npos);

    njson pub = njson::parse(slurp(dir / "eg_public.json"));
    CHECK(pub.at("p") == "23");
    CHECK(pub.at("K").at("re") == "6");
    CHECK(pub.at("K").at("im") == "2");
    njson priv = njson::parse(slurp(dir / "eg_private.json"));
    CHECK(priv.at("a") == "7");
}

TEST_CASE("keygen writes a paillier key pair from explicit primes") {
    fs::path dir = fresh_dir("paillier_keys");
    RunResult r = run_cli(
        {"keygen", "--scheme", "paillier", "--p", "5", "--q", "7", "--out", dir.string()});
    REQUIRE(r.code == 0);
    njson pub = njson::parse(slurp(dir / "paillier_public.json"));
    CHECK(pub.at("n") == "35");
    CHECK(pub.at("g") == "36");
    njson priv = njson::parse(slurp(dir / "paillier_private.json"));
    CHECK(priv.at("L_P") == "12");
}

TEST_CASE("keygen argument validation") {
    fs::path dir = fresh_dir("bad_keys");
    CHECK(run_cli({"keygen", "--scheme", "eg", "--out", dir.string()}).code == 1);
    CHECK(run_cli({"keygen", "--scheme", "eg", "--p", "21", "--out", dir.string()}).code == 1);
    CHECK(run_cli({"keygen", "--scheme", "paillier", "--p", "7", "--q", "7", "--out",
                   dir.string()})
              .code == 1);
    CHECK(run_cli({"keygen", "--scheme", "nope", "--out", dir.string()}).code == 1);
    // random eg keygen without any seed source
    unsetenv("HIDDEN_SEED");
    CHECK(run_cli({"keygen", "--scheme", "eg", "--bits", "32", "--out", dir.string()}).code ==
          1);
}

TEST_CASE("HIDDEN_SEED env var stands in for --seed") {
    fs::path dir = fresh_dir("env_seed");
    setenv("HIDDEN_SEED", "99", 1);
    RunResult r = run_cli({"keygen", "--scheme", "eg", "--bits", "32", "--out", dir.string()});
    unsetenv("HIDDEN_SEED");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "eg_public.json"));
}

TEST_CASE("embed and extract round trip on the command line") {
    RunResult e = run_cli({"embed", "--lambda", "3+2i", "--data", "5", "--watermark", "4"});
    REQUIRE(e.code == 0);
    CHECK(e.out == "{\"re\":\"7\",\"im\":\"22\"}\n");

    RunResult x = run_cli({"extract", "--lambda", "3+2i", "--value", "7+22i"});
    REQUIRE(x.code == 0);
    CHECK(x.out == "{\"data\":\"5\",\"watermark\":\"4\"}\n");

    RunResult agg =
        run_cli({"extract", "--lambda", "3+2i", "--value", "66+96i", "--aggregate-n", "3"});
    REQUIRE(agg.code == 0);
    CHECK(agg.out == "{\"data\":\"30\",\"watermark\":\"4\"}\n");

    SUBCASE("non-divisible value exits with the rejection code") {
        RunResult bad = run_cli({"extract", "--lambda", "3+2i", "--value", "7+23i"});
        CHECK(bad.code == 2);
        CHECK(bad.err.find("integrity error") != std::string::npos);
    }
    SUBCASE("degenerate key is a usage error") {
        CHECK(run_cli({"embed", "--lambda", "3+0i", "--data", "5"}).code == 1);
    }
    SUBCASE("missing required flags") {
        CHECK(run_cli({"embed", "--data", "5"}).code == 1);
        CHECK(run_cli({"extract", "--lambda", "3+2i"}).code == 1);
    }
}

TEST_CASE("simulate drives scenarios and reports by exit code") {
    fs::path dir = fresh_dir("simulate");
    fs::path cfg = dir / "eg.json";
    std::ofstream(cfg) << kEgScenario;

    SUBCASE("honest scenario accepted") {
        fs::path transcript = dir / "t.jsonl";
        RunResult r = run_cli({"simulate", "--config", cfg.string(), "--transcript",
                               transcript.string()});
        CHECK(r.code == 0);
        CHECK(r.out.find("accepted") != std::string::npos);
        CHECK(fs::exists(transcript));
    }
    SUBCASE("attacked scenario rejected") {
        njson c = njson::parse(std::string(kEgScenario));
        c["attack"] = njson{{"type", "replay"}, {"from", 1}, {"at", 2}};
        fs::path bad_cfg = dir / "eg_replay.json";
        std::ofstream(bad_cfg) << c.dump();
        RunResult r = run_cli({"simulate", "--config", bad_cfg.string()});
        CHECK(r.code == 2);
        CHECK(r.out.find("rejected") != std::string::npos);
    }
    SUBCASE("malformed config is a usage error") {
        fs::path bad_cfg = dir / "bad.json";
        std::ofstream(bad_cfg) << "{\"protocol\": \"eg\"}";
        CHECK(run_cli({"simulate", "--config", bad_cfg.string()}).code == 1);
    }
    SUBCASE("missing config file") {
        CHECK(run_cli({"simulate", "--config", (dir / "nope.json").string()}).code == 1);
    }
    SUBCASE("config without seed needs --seed or the env var") {
        njson c = njson::parse(std::string(kEgScenario));
        c.erase("seed");
        fs::path ns_cfg = dir / "noseed.json";
        std::ofstream(ns_cfg) << c.dump();
        unsetenv("HIDDEN_SEED");
        CHECK(run_cli({"simulate", "--config", ns_cfg.string()}).code == 1);
        CHECK(run_cli({"simulate", "--config", ns_cfg.string(), "--seed", "7"}).code == 0);
    }
}

TEST_CASE("single-sensor aggregation degenerates to two messages") {
    fs::path dir = fresh_dir("aggp_n1");
    njson cfg{{"protocol", "aggp"},
              {"seed", 55},
              {"N", 1},
              {"B", 8},
              {"M", 1},
              {"data", njson{{"inline", njson::array({17})}}},
              {"paillier_bits", 128}};
    fs::path cfg_path = dir / "n1.json";
    std::ofstream(cfg_path) << cfg.dump();
    fs::path transcript = dir / "n1.jsonl";

    REQUIRE(run_cli({"simulate", "--config", cfg_path.string(), "--transcript",
                     transcript.string()})
                .code == 0);
    std::string text = slurp(transcript);
    CHECK(text.find("\"messages_total\":2") != std::string::npos);
    RunResult r = run_cli({"counters", "--transcript", transcript.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("messages=2 (expect 2)") != std::string::npos);
}

TEST_CASE("simulate reproduces the three-device aggregation example") {
    // find a master seed whose derived schedule emits w_1 = 4 at B = 4,
    // mirroring how the simulator fans out its seed
    std::uint64_t seed = 0;
    for (;; ++seed) {
        hidden::SeededRng rng(hidden::derive_subseed(seed, "schedule"));
        hidden::WatermarkSchedule sched(rng.bytes(32), 4, 1);
        if (sched.watermark_at(1) == 4) break;
    }

    njson cfg{{"protocol", "aggp"},
              {"seed", seed},
              {"N", 3},
              {"B", 4},
              {"M", 1},
              {"data", njson{{"inline", njson::array({njson::array({5, 8, 17})})}}},
              {"lambda", "3+2i"},
              {"paillier_bits", 128}};
    fs::path dir = fresh_dir("appendix");
    fs::path cfg_path = dir / "agg.json";
    std::ofstream(cfg_path) << cfg.dump();

    RunResult r = run_cli({"simulate", "--config", cfg_path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("accepted data=30 watermark=4") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical transcript files") {
    fs::path dir = fresh_dir("determinism");
    fs::path cfg = dir / "eg.json";
    std::ofstream(cfg) << kEgScenario;

    fs::path t1 = dir / "run1.jsonl", t2 = dir / "run2.jsonl";
    REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--transcript", t1.string()}).code ==
            0);
    REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--transcript", t2.string()}).code ==
            0);
    CHECK(slurp(t1) == slurp(t2));

    SUBCASE("an overriding seed changes the bytes") {
        fs::path t3 = dir / "run3.jsonl";
        REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--transcript", t3.string(),
                         "--seed", "4321"})
                    .code == 0);
        CHECK(slurp(t1) != slurp(t3));
    }
}

TEST_CASE("counters audits transcripts") {
    fs::path dir = fresh_dir("counters");
    fs::path cfg = dir / "eg.json";
    std::ofstream(cfg) << kEgScenario;
    fs::path transcript = dir / "t.jsonl";
    REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--transcript",
                     transcript.string()})
                .code == 0);

    RunResult r = run_cli({"counters", "--transcript", transcript.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("equiv=8 (expect 8)") != std::string::npos);
    CHECK(r.out.find("equiv=13 (expect 13)") != std::string::npos);
    CHECK(r.out.find("conform") != std::string::npos);

    SUBCASE("empty transcript is an error") {
        fs::path empty = dir / "empty.jsonl";
        std::ofstream(empty) << "";
        CHECK(run_cli({"counters", "--transcript", empty.string()}).code == 1);
    }
    SUBCASE("missing file is an error") {
        CHECK(run_cli({"counters", "--transcript", (dir / "nope.jsonl").string()}).code == 1);
    }
    SUBCASE("doctored counters are flagged") {
        std::string text = slurp(transcript);
        auto pos = text.find("\"complex_modexp_dc\":3");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, std::string("\"complex_modexp_dc\":3").size(),
                     "\"complex_modexp_dc\":9");
        fs::path doctored = dir / "doctored.jsonl";
        std::ofstream(doctored, std::ios::binary) << text;
        CHECK(run_cli({"counters", "--transcript", doctored.string()}).code == 2);
    }
}

TEST_CASE("usage errors") {
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({"embed", "--nope"}).code == 1);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("installed binary behaves like the in-process driver") {
    fs::path dir = fresh_dir("spawn");
    std::string cmd = std::string(HIDDEN_BIN) +
                      " embed --lambda 3+2i --data 5 --watermark 4 > " +
                      (dir / "out.txt").string();
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(slurp(dir / "out.txt") == "{\"re\":\"7\",\"im\":\"22\"}\n");

    std::string bad = std::string(HIDDEN_BIN) + " extract --lambda 3+2i --value 7+23i 2> " +
                      (dir / "err.txt").string();
    int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}
