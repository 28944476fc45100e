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

#include <iostream>

#include "CLI11.hpp"
#include "sept/cli.hpp"
#include "sept/runtime.hpp"

namespace {

void add_common(CLI::App* cmd, sept::RunSpec& spec) {
  cmd->add_option("--config", spec.config_path, "key=value configuration file");
  cmd->add_option("--set", spec.overrides, "override a config key (key=value), repeatable");
  cmd->add_option("--out", spec.output_dir, "output directory")->capture_default_str();
  cmd->add_option("--seed", spec.seed, "random seed (overrides the config)");
}

}  // namespace

int main(int argc, char** argv) {
  sept::retain_large_allocations();
  CLI::App app{"Social recommender with self-supervised co-training over three graph views"};
  app.require_subcommand(1);
  sept::RunSpec spec;

  auto* train = app.add_subcommand("train", "train on one fold, write log, checkpoint and report");
  auto* evaluate = app.add_subcommand("evaluate", "k-fold cross-validation report");
  auto* ablate = app.add_subcommand("ablate", "cross-validate an ablated variant");
  auto* sweep = app.add_subcommand("sweep", "cross-validate a grid over one parameter");
  for (auto* cmd : {train, evaluate, ablate, sweep}) add_common(cmd, spec);
  ablate->add_option("--mode", spec.ablate_mode, "views | sd | nd | lightgcn")->required();
  ablate->add_option("--drop", spec.drop, "views to detach with --mode views (friend, sharing)")
      ->delimiter(',');
  sweep->add_option("--param", spec.sweep_param, "config key to vary")->required();
  sweep->add_option("--values", spec.sweep_values, "comma list; '...' continues a progression")
      ->delimiter(',')
      ->required();

  CLI11_PARSE(app, argc, argv);
  if (train->parsed()) spec.command = sept::Command::train;
  if (evaluate->parsed()) spec.command = sept::Command::evaluate;
  if (ablate->parsed()) spec.command = sept::Command::ablate;
  if (sweep->parsed()) spec.command = sept::Command::sweep;
  return sept::run(spec, std::cerr);
}
