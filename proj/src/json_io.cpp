#include "hidden/json_io.hpp"

#include "hidden/errors.hpp"

#include <fstream>

namespace hidden {

std::string to_dec(const mpz_class& v) {
    return v.get_str();
}

mpz_class dec_to_mpz(const njson& field) {
    if (field.is_string()) {
        const auto& s = field.get_ref<const std::string&>();
        try {
            return mpz_class(s, 10);
        } catch (const std::invalid_argument&) {
            throw ConfigError("not a decimal integer: '" + s + "'");
        }
    }
    if (field.is_number_integer()) {
        if (field.is_number_unsigned())
            return mpz_class(std::to_string(field.get<std::uint64_t>()));
        return mpz_class(std::to_string(field.get<std::int64_t>()));
    }
    throw ConfigError("expected integer or decimal string, got: " + field.dump());
}

njson gaussian_to_json(const GaussianInt& z) {
    return njson{{"re", to_dec(z.re)}, {"im", to_dec(z.im)}};
}

GaussianInt gaussian_from_json(const njson& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw ConfigError("Gaussian integer JSON must carry \"re\" and \"im\"");
    return {dec_to_mpz(j.at("re")), dec_to_mpz(j.at("im"))};
}

njson load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open file: " + path.string());
    njson j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::filesystem::path& path, const njson& j) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write file: " + path.string());
    out << j.dump(2) << '\n';
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out += digits[b >> 4];
        out += digits[b & 0xf];
    }
    return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0)
        throw ConfigError("hex string has odd length");
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(hex[2 * i]), lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw ConfigError("invalid hex digit in '" + hex + "'");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

} // namespace hidden
