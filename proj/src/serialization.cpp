#include "logeuler/serialization.hpp"

#include <fstream>
#include <string>

namespace logeuler {

void to_json(nlohmann::json& j, const EosSpec& eos) {
  j = nlohmann::json{{"family", std::string(to_string(eos.family))},
                     {"A", eos.A},
                     {"K1", eos.K1},
                     {"K", eos.K},
                     {"c", eos.c}};
}

void from_json(const nlohmann::json& j, EosSpec& eos) {
  try {
    eos.family = family_from_string(j.at("family").get<std::string>());
    eos.A = j.at("A").get<double>();
    eos.K1 = j.at("K1").get<double>();
    eos.K = j.at("K").get<double>();
    eos.c = j.at("c").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad EOS object: ") + e.what());
  }
  eos.validate();
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
}

EosSpec load_eos_file(const std::filesystem::path& path) {
  return load_json_file(path).get<EosSpec>();
}

}  // namespace logeuler
