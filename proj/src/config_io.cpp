#include "ccring/config_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "ccring/errors.hpp"

namespace ccring {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_numbers(const std::string& value,
                                  const std::string& key) {
  std::vector<double> out;
  std::istringstream in(value);
  std::string token;
  while (in >> token) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(token, &pos));
      if (pos != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw precondition_error("config: bad number '" + token + "' for key '" +
                               key + "'");
    }
  }
  return out;
}

}  // namespace

SystemConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::vector<double>> fields;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw precondition_error("config: line " + std::to_string(lineno) +
                               " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (fields.count(key) != 0) {
      throw precondition_error("config: duplicate key '" + key + "'");
    }
    fields[key] = parse_numbers(value, key);
  }

  const std::set<std::string> known = {
      "n_sites",   "hop",        "g_atom",   "delta_cav", "rabi_ctrl",
      "delta_ctrl", "rabi_tgt",  "delta_tgt", "gamma",     "kappa",
      "n_max"};
  for (const auto& [key, _] : fields) {
    if (known.count(key) == 0) {
      throw precondition_error("config: unknown key '" + key + "'");
    }
  }

  auto scalar = [&](const std::string& key, bool required,
                    double fallback) -> double {
    auto it = fields.find(key);
    if (it == fields.end()) {
      if (required) throw precondition_error("config: missing key '" + key + "'");
      return fallback;
    }
    if (it->second.size() != 1) {
      throw precondition_error("config: key '" + key + "' wants one number");
    }
    return it->second.front();
  };
  auto sequence = [&](const std::string& key) -> std::vector<double> {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw precondition_error("config: missing key '" + key + "'");
    }
    return it->second;
  };

  SystemConfig cfg;
  cfg.n_sites = static_cast<int>(scalar("n_sites", true, 0));
  cfg.hop = scalar("hop", true, 0);
  cfg.g_atom = sequence("g_atom");
  cfg.delta_cav = sequence("delta_cav");
  cfg.rabi_ctrl = sequence("rabi_ctrl");
  cfg.delta_ctrl = sequence("delta_ctrl");
  cfg.rabi_tgt = sequence("rabi_tgt");
  cfg.delta_tgt = sequence("delta_tgt");
  cfg.gamma = scalar("gamma", false, 0.0);
  cfg.kappa = scalar("kappa", false, 0.0);
  cfg.n_max = static_cast<int>(scalar("n_max", false, 1));
  return cfg;
}

SystemConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw precondition_error("config: cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace ccring
