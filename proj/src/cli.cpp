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

#include "sept/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "sept/config.hpp"

namespace sept {
namespace {

namespace fs = std::filesystem;

class MissingDataset : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct Dataset {
  InteractionGraph graph;
  SocialNetwork social;
};

Dataset load_dataset(const RunConfig& config) {
  if (config.ratings_path.empty()) throw ConfigError("ratings_path is not set");
  if (!fs::exists(config.ratings_path)) {
    throw MissingDataset("ratings file not found: " + config.ratings_path.string());
  }
  if (!config.trust_path.empty() && !fs::exists(config.trust_path)) {
    throw MissingDataset("trust file not found: " + config.trust_path.string());
  }
  Dataset d;
  d.graph = load_interactions(config.ratings_path, config.rating_threshold,
                              {.skip_header = config.ratings_header});
  d.social = config.trust_path.empty()
                 ? SocialNetwork{SparseMatrix(d.graph.num_users(), d.graph.num_users())}
                 : load_social(config.trust_path, d.graph.users, {.skip_header = config.trust_header});
  return d;
}

RunConfig resolve_config(const RunSpec& spec) {
  RunConfig config = spec.config_path.empty() ? RunConfig{} : load_config(spec.config_path);
  if (spec.command == Command::ablate) {
    if (spec.ablate_mode == "views") {
      if (spec.drop.empty()) throw ConfigError("ablate --mode views needs --drop");
      for (const auto& v : spec.drop) {
        if (v == "friend") config.training.use_friend = false;
        else if (v == "sharing") config.training.use_sharing = false;
        else throw ConfigError("--drop accepts friend or sharing, got '" + v + "'");
      }
    } else if (spec.ablate_mode == "sd") {
      config.training.self_discrimination = true;
    } else if (spec.ablate_mode == "nd") {
      config.training.exclude_self = true;
      config.training.beta = 0.001;
    } else if (spec.ablate_mode == "lightgcn") {
      config.training.beta = 0.0;
    } else {
      throw ConfigError("unknown ablation mode '" + spec.ablate_mode + "'");
    }
  }
  for (const auto& o : spec.overrides) apply_override(config, o);
  if (spec.seed) config.training.seed = *spec.seed;
  config.training.validate();
  return config;
}

// Cross-validates and writes the report plus one training log per fold.
EvalReport run_cv(const RunConfig& config, const Dataset& data, const fs::path& dir,
                  std::ostream& log) {
  fs::create_directories(dir);
  write_file(dir / "config.txt", dump_config(config));
  const TrainFn trainer = [&](const TrainingConfig& tc, const InteractionGraph& g,
                              const SocialNetwork& s, Index fold) {
    log << "  fold " << fold << " ..." << std::flush;
    auto result = train(tc, g, s);
    write_file(dir / ("fold" + std::to_string(fold) + "_log.tsv"), format_log(result.log));
    log << " best epoch " << result.best_epoch << '\n';
    return std::move(result.embeddings);
  };
  const auto report = cross_validate(config.training, data.graph, data.social, config.folds, trainer);
  write_file(dir / "report.tsv", format_report(report));
  return report;
}

int run_train(const RunConfig& config, const Dataset& data, const fs::path& dir,
              std::ostream& log) {
  fs::create_directories(dir);
  write_file(dir / "config.txt", dump_config(config));
  const auto folds = kfold_split(data.graph, config.folds, config.training.seed);
  if (config.fold >= folds.size()) throw ConfigError("fold index out of range");
  const auto& fold = folds[config.fold];
  auto result = train(config.training, fold.train, data.social);
  write_file(dir / "train_log.tsv", format_log(result.log));
  save_checkpoint(result.embeddings, dir / "checkpoint.bin");
  const auto reps = recommend_representations(result.embeddings, fold.train, config.training.layers);
  const auto m = evaluate(reps.users, reps.items, fold.train, fold.test, config.training.top_n);
  EvalReport report;
  report.n = config.training.top_n;
  report.per_fold.push_back({100.0 * m.precision, 100.0 * m.recall, 100.0 * m.ndcg});
  report.mean = report.per_fold.front();
  write_file(dir / "report.tsv", format_report(report));
  log << format_report(report);
  return exit_code::ok;
}

std::string ablation_name(const RunSpec& spec) {
  if (spec.ablate_mode != "views") return spec.ablate_mode;
  std::string name = "drop";
  for (const auto& d : spec.drop) name += "_" + d;
  return name;
}

}  // namespace

std::vector<std::string> expand_values(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] != "...") {
      out.push_back(values[k]);
      continue;
    }
    if (out.size() < 2 || k + 1 >= values.size()) {
      throw ConfigError("'...' needs two values before it and one after");
    }
    const double a = std::stod(out[out.size() - 2]);
    const double b = std::stod(out.back());
    const double last = std::stod(values[k + 1]);
    const double step = b - a;
    if (!(step > 0.0) || last < b) throw ConfigError("'...' needs an increasing progression");
    for (int i = 2;; ++i) {
      const double v = a + step * i;
      if (v >= last - 1e-9 * std::abs(step)) break;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out.emplace_back(buf);
    }
  }
  return out;
}

int run(const RunSpec& spec, std::ostream& log) {
  try {
    const RunConfig config = resolve_config(spec);
    if (spec.command == Command::sweep) {
      if (spec.sweep_param.empty() || spec.sweep_values.empty()) {
        throw ConfigError("sweep needs --param and --values");
      }
      const auto values = expand_values(spec.sweep_values);
      // Reject unknown keys before any data is read.
      RunConfig probe = config;
      for (const auto& v : values) apply_setting(probe, spec.sweep_param, v);
      const Dataset data = load_dataset(config);
      std::string summary = "value\tprecision\trecall\tndcg\n";
      for (const auto& v : values) {
        RunConfig point = config;
        apply_setting(point, spec.sweep_param, v);
        point.training.validate();
        log << spec.sweep_param << " = " << v << '\n';
        const auto report =
            run_cv(point, data, spec.output_dir / ("sweep_" + spec.sweep_param + "_" + v), log);
        char buf[128];
        std::snprintf(buf, sizeof buf, "\t%.3f\t%.3f\t%.3f\n", report.mean.precision,
                      report.mean.recall, report.mean.ndcg);
        summary += v + buf;
      }
      fs::create_directories(spec.output_dir);
      write_file(spec.output_dir / ("sweep_" + spec.sweep_param + ".tsv"), summary);
      return exit_code::ok;
    }
    const Dataset data = load_dataset(config);
    switch (spec.command) {
      case Command::train:
        return run_train(config, data, spec.output_dir, log);
      case Command::evaluate:
        log << format_report(run_cv(config, data, spec.output_dir, log));
        return exit_code::ok;
      case Command::ablate:
        log << format_report(
            run_cv(config, data, spec.output_dir / ("ablate_" + ablation_name(spec)), log));
        return exit_code::ok;
      case Command::sweep:
        break;
    }
    return exit_code::ok;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_code::bad_config;
  } catch (const DomainError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_code::bad_config;
  } catch (const MissingDataset& e) {
    log << "dataset error: " << e.what() << '\n';
    return exit_code::missing_dataset;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
}

}  // namespace sept
