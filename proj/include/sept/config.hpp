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

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sept/training.hpp"

namespace sept {

// Unknown key or unparsable value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a run needs: hyperparameters plus dataset location.
struct RunConfig {
  TrainingConfig training;
  std::filesystem::path ratings_path;
  std::filesystem::path trust_path;  // empty: no social network
  std::optional<double> rating_threshold;
  bool ratings_header = false;
  bool trust_header = false;
  Index folds = 5;
  Index fold = 0;  // fold trained by `train`
};

// Flat `key = value` lines; `#` starts a comment. Relative dataset paths are
// resolved against the config file's directory.
RunConfig load_config(const std::filesystem::path& path);

void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
// Accepts "key=value".
void apply_override(RunConfig& config, const std::string& assignment);

const std::vector<std::string>& config_keys();

// The effective configuration in the same format load_config reads.
std::string dump_config(const RunConfig& config);

}  // namespace sept
