#include "hidden/transcript.hpp"

#include <ostream>

namespace hidden::proto {

njson Message::to_json() const {
    return njson{{"round", round}, {"from", from}, {"to", to}, {"kind", kind},
                 {"payload", payload}};
}

njson RoundCounters::to_json() const {
    return njson{{"complex_modexp_sensor", complex_modexp_sensor},
                 {"complex_modexp_dc", complex_modexp_dc},
                 {"int_modexp_sensor", int_modexp_sensor},
                 {"int_modexp_dc", int_modexp_dc},
                 {"modexp_n2_sensor", modexp_n2_sensor},
                 {"modexp_n2_dc", modexp_n2_dc},
                 {"modexp_n2_padding", modexp_n2_padding},
                 {"messages_total", messages_total}};
}

RoundCounters RoundCounters::from_json(const njson& j) {
    RoundCounters c;
    c.complex_modexp_sensor = j.at("complex_modexp_sensor").get<std::uint64_t>();
    c.complex_modexp_dc = j.at("complex_modexp_dc").get<std::uint64_t>();
    c.int_modexp_sensor = j.at("int_modexp_sensor").get<std::uint64_t>();
    c.int_modexp_dc = j.at("int_modexp_dc").get<std::uint64_t>();
    c.modexp_n2_sensor = j.at("modexp_n2_sensor").get<std::uint64_t>();
    c.modexp_n2_dc = j.at("modexp_n2_dc").get<std::uint64_t>();
    c.modexp_n2_padding = j.value("modexp_n2_padding", std::uint64_t{0});
    c.messages_total = j.at("messages_total").get<std::uint64_t>();
    return c;
}

Verdict Verdict::accept(mpz_class data, mpz_class watermark) {
    Verdict v;
    v.accepted = true;
    v.data = std::move(data);
    v.watermark = std::move(watermark);
    return v;
}

Verdict Verdict::reject(std::string reason) {
    Verdict v;
    v.accepted = false;
    v.reason = std::move(reason);
    return v;
}

njson Verdict::to_json() const {
    if (accepted)
        return njson{{"status", "accepted"}, {"data", to_dec(data)},
                     {"watermark", to_dec(watermark)}};
    return njson{{"status", "rejected"}, {"reason", reason}};
}

void RoundTranscript::write_jsonl(std::ostream& os) const {
    for (const auto& m : messages)
        os << m.to_json().dump() << '\n';
    njson final_record{{"round", round}, {"counters", counters.to_json()},
                       {"verdict", verdict.to_json()}};
    os << final_record.dump() << '\n';
}

} // namespace hidden::proto
