#pragma once

#include "hidden/gaussian.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hidden {

// Insertion-ordered JSON keeps serialized output stable byte for byte.
using njson = nlohmann::ordered_json;

// Decimal strings sidestep integer-width limits in JSON.
std::string to_dec(const mpz_class& v);
mpz_class dec_to_mpz(const njson& field);

// {"re": "<decimal>", "im": "<decimal>"}
njson gaussian_to_json(const GaussianInt& z);
GaussianInt gaussian_from_json(const njson& j);

njson load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const njson& j);

std::string to_hex(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> from_hex(const std::string& hex);

} // namespace hidden
