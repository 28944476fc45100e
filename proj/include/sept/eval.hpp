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

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sept/data.hpp"

namespace sept {

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double ndcg = 0.0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

// Top-n items for `user` by P_u . Q_i, skipping `exclude` (sorted item ids).
// Ties go to the smaller item index. Shorter than n when few items remain.
std::vector<Index> rank_items(const Matrix& users, const Matrix& items, Index user,
                              std::span<const Index> exclude, Index n);

// Precision = hits/n, recall = hits/|relevant|, NDCG with binary gains and a
// log2 discount, ideal DCG over min(n, |relevant|) hits. Values in [0, 1].
Metrics metrics_at_n(std::span<const Index> recommended, std::span<const Index> relevant, Index n);

// Macro-average over users with at least one held-out item. Each user's
// ranking excludes the items they have in `train`.
Metrics evaluate(const Matrix& users, const Matrix& items, const InteractionGraph& train,
                 std::span<const Interaction> held_out, Index n);

// Percent-scaled metrics per fold plus their arithmetic mean.
struct EvalReport {
  Index n = 10;
  std::vector<Metrics> per_fold;
  Metrics mean;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Delimited table, one row per fold and a final `mean` row, three decimals.
void write_report(const EvalReport& report, std::ostream& out);
std::string format_report(const EvalReport& report);

}  // namespace sept
