#pragma once

#include "hidden/counters.hpp"
#include "hidden/json_io.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hidden::proto {

// One delivered message as seen on the wire (after any adversarial
// interference).
struct Message {
    std::uint64_t round = 0;
    std::string from;
    std::string to;
    std::string kind;
    njson payload;

    njson to_json() const;
};

// Per-round operation counts. Sensor counts are per sensor (the protocol
// asserts they are uniform across sensors); padding encryptions are kept
// apart so they never blur the per-sensor accounting.
struct RoundCounters {
    std::uint64_t complex_modexp_sensor = 0;
    std::uint64_t complex_modexp_dc = 0;
    std::uint64_t int_modexp_sensor = 0;
    std::uint64_t int_modexp_dc = 0;
    std::uint64_t modexp_n2_sensor = 0;
    std::uint64_t modexp_n2_dc = 0;
    std::uint64_t modexp_n2_padding = 0;
    std::uint64_t messages_total = 0;

    njson to_json() const;
    static RoundCounters from_json(const njson& j);
};

struct Verdict {
    bool accepted = false;
    mpz_class data;      // d_k or S_k when accepted
    mpz_class watermark; // w_k when accepted
    std::string reason;  // detection path when rejected

    static Verdict accept(mpz_class data, mpz_class watermark);
    static Verdict reject(std::string reason);

    njson to_json() const;
};

// Ordered record of one protocol round: every delivered message, the
// operation counters, and the final verdict.
struct RoundTranscript {
    std::uint64_t round = 0;
    std::vector<Message> messages;
    RoundCounters counters;
    Verdict verdict;

    // JSON Lines: one object per message, then {round, counters, verdict}.
    void write_jsonl(std::ostream& os) const;
};

} // namespace hidden::proto
