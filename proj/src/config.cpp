// Copyright 2026 The SEPT Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sept/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sept {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad value '" + value + "' for key '" + key + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("bad boolean '" + value + "' for key '" + key + "'");
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "dim",          "layers",         "perturbed_layers", "lambda",
      "beta",         "tau",            "rho",              "k",
      "c",            "lr",             "batch_size",       "warmup_epochs",
      "max_epochs",   "seed",           "exclude_self",     "self_discrimination",
      "use_friend",   "use_sharing",    "enabled_views",    "val_fraction",
      "patience",     "top_n",          "dense_adam",       "ratings_path",
      "trust_path",   "rating_threshold", "ratings_header", "trust_header",
      "folds",        "fold"};
  return keys;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  auto& t = config.training;
  if (key == "dim") t.dim = parse_number<Index>(key, value);
  else if (key == "layers") t.layers = parse_number<int>(key, value);
  else if (key == "perturbed_layers") t.perturbed_layers = parse_number<int>(key, value);
  else if (key == "lambda") t.lambda = parse_number<double>(key, value);
  else if (key == "beta") t.beta = parse_number<double>(key, value);
  else if (key == "tau") t.tau = parse_number<double>(key, value);
  else if (key == "rho") t.rho = parse_number<double>(key, value);
  else if (key == "k") t.k = parse_number<Index>(key, value);
  else if (key == "c") t.c = parse_number<Index>(key, value);
  else if (key == "lr") t.lr = parse_number<double>(key, value);
  else if (key == "batch_size") t.batch_size = parse_number<Index>(key, value);
  else if (key == "warmup_epochs") t.warmup_epochs = parse_number<int>(key, value);
  else if (key == "max_epochs") t.max_epochs = parse_number<int>(key, value);
  else if (key == "seed") t.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "exclude_self") t.exclude_self = parse_bool(key, value);
  else if (key == "self_discrimination") t.self_discrimination = parse_bool(key, value);
  else if (key == "use_friend") t.use_friend = parse_bool(key, value);
  else if (key == "use_sharing") t.use_sharing = parse_bool(key, value);
  else if (key == "enabled_views") {
    t.use_friend = t.use_sharing = false;
    std::istringstream in(value);
    for (std::string v; std::getline(in, v, ',');) {
      v = trim(v);
      if (v == "friend") t.use_friend = true;
      else if (v == "sharing") t.use_sharing = true;
      else if (v != "none" && !v.empty()) {
        throw ConfigError("enabled_views accepts friend, sharing or none, got '" + v + "'");
      }
    }
  } else if (key == "val_fraction") t.val_fraction = parse_number<double>(key, value);
  else if (key == "patience") t.patience = parse_number<int>(key, value);
  else if (key == "top_n") t.top_n = parse_number<Index>(key, value);
  else if (key == "dense_adam") t.dense_adam = parse_bool(key, value);
  else if (key == "ratings_path") config.ratings_path = value;
  else if (key == "trust_path") config.trust_path = value;
  else if (key == "rating_threshold") {
    if (value.empty() || value == "none") config.rating_threshold.reset();
    else config.rating_threshold = parse_number<double>(key, value);
  } else if (key == "ratings_header") config.ratings_header = parse_bool(key, value);
  else if (key == "trust_header") config.trust_header = parse_bool(key, value);
  else if (key == "folds") config.folds = parse_number<Index>(key, value);
  else if (key == "fold") config.fold = parse_number<Index>(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  apply_setting(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  RunConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  const auto base = path.parent_path();
  if (!config.ratings_path.empty() && config.ratings_path.is_relative()) {
    config.ratings_path = base / config.ratings_path;
  }
  if (!config.trust_path.empty() && config.trust_path.is_relative()) {
    config.trust_path = base / config.trust_path;
  }
  return config;
}

std::string dump_config(const RunConfig& config) {
  const auto& t = config.training;
  const auto b = [](bool v) { return v ? "true" : "false"; };
  std::ostringstream out;
  out << "dim = " << t.dim << '\n'
      << "layers = " << t.layers << '\n'
      << "perturbed_layers = " << t.perturbed_layers << '\n'
      << "lambda = " << fmt_double(t.lambda) << '\n'
      << "beta = " << fmt_double(t.beta) << '\n'
      << "tau = " << fmt_double(t.tau) << '\n'
      << "rho = " << fmt_double(t.rho) << '\n'
      << "k = " << t.k << '\n'
      << "c = " << t.c << '\n'
      << "lr = " << fmt_double(t.lr) << '\n'
      << "batch_size = " << t.batch_size << '\n'
      << "warmup_epochs = " << t.warmup_epochs << '\n'
      << "max_epochs = " << t.max_epochs << '\n'
      << "seed = " << t.seed << '\n'
      << "exclude_self = " << b(t.exclude_self) << '\n'
      << "self_discrimination = " << b(t.self_discrimination) << '\n'
      << "use_friend = " << b(t.use_friend) << '\n'
      << "use_sharing = " << b(t.use_sharing) << '\n'
      << "val_fraction = " << fmt_double(t.val_fraction) << '\n'
      << "patience = " << t.patience << '\n'
      << "top_n = " << t.top_n << '\n'
      << "dense_adam = " << b(t.dense_adam) << '\n'
      << "ratings_path = " << config.ratings_path.string() << '\n'
      << "trust_path = " << config.trust_path.string() << '\n'
      << "rating_threshold = "
      << (config.rating_threshold ? fmt_double(*config.rating_threshold) : "none") << '\n'
      << "ratings_header = " << b(config.ratings_header) << '\n'
      << "trust_header = " << b(config.trust_header) << '\n'
      << "folds = " << config.folds << '\n'
      << "fold = " << config.fold << '\n';
  return out.str();
}

}  // namespace sept
