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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sept {

enum class Command { train, evaluate, ablate, sweep };

struct RunSpec {
  Command command = Command::train;
  std::filesystem::path config_path;
  std::vector<std::string> overrides;  // key=value, applied after the config file
  std::filesystem::path output_dir = "out";
  std::optional<std::uint64_t> seed;

  // ablate: "views" (with drop), "sd", "nd" or "lightgcn"
  std::string ablate_mode;
  std::vector<std::string> drop;  // friend and/or sharing

  // sweep: one config key and its values; "..." continues an arithmetic
  // progression, e.g. 0,0.1,...,0.8
  std::string sweep_param;
  std::vector<std::string> sweep_values;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int bad_config = 2;
inline constexpr int missing_dataset = 3;
}  // namespace exit_code

// Executes one command, writing every artifact under spec.output_dir.
// Progress and errors go to `log`.
int run(const RunSpec& spec, std::ostream& log);

// Expands "..." in a sweep value list.
std::vector<std::string> expand_values(const std::vector<std::string>& values);

}  // namespace sept
