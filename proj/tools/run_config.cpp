#include "run_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

#include "zorich/error.hpp"

namespace zorich::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("config: '" + key + "' expects a number, got '" + value + "'");
}

template <class Int>
Int parse_int(const std::string& key, const std::string& value) {
  Int v{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw UsageError("config: '" + key + "' expects an integer, got '" + value + "'");
  }
  return v;
}

}  // namespace

double RunConfig::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) throw UsageError("unknown tolerance '" + name + "'");
  return it->second;
}

void apply_setting(RunConfig& config, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "lambda") {
    config.lambda = parse_double(key, value);
  } else if (key == "lambda_fraction") {
    config.lambda_fraction = parse_double(key, value);
  } else if (key == "L_samples") {
    config.L_samples = parse_int<std::uint64_t>(key, value);
  } else if (key == "seed") {
    config.seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "depth") {
    config.depth = parse_int<int>(key, value);
    if (config.depth < 1) throw UsageError("config: depth must be >= 1");
  } else if (key == "output_dir") {
    if (value.empty()) throw UsageError("config: output_dir must not be empty");
    config.output_dir = value;
  } else if (key == "floor_budget") {
    config.floor_budget = parse_int<int>(key, value);
  } else if (key.rfind("tol.", 0) == 0 && key.size() > 4) {
    const std::string name = key.substr(4);
    if (!config.tolerances.count(name)) throw UsageError("config: unknown tolerance '" + name + "'");
    const double v = parse_double(key, value);
    if (!(v > 0.0)) throw UsageError("config: " + key + " must be positive");
    config.tolerances[name] = v;
  } else {
    throw UsageError("config: unknown key '" + key + "'");
  }
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    apply_setting(config, body.substr(0, eq), body.substr(eq + 1));
  }
}

void apply_environment(RunConfig& config) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') config.output_dir = dir;
}

}  // namespace zorich::cli
