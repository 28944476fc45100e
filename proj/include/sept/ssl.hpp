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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sept/common.hpp"

namespace sept {

enum class ViewTag { preference, friends, sharing };

std::string_view to_string(ViewTag view);

// Pseudo-labels for one view over one batch. Indices in `positives` and
// `masked` are local to `candidate_indices`; `candidate_indices` holds user
// ids (rows of the perturbed-graph representation).
struct LabelSet {
  ViewTag view = ViewTag::preference;
  std::vector<Index> candidate_indices;
  std::vector<std::vector<Index>> positives;  // one list per batch user
  // Candidates that take no part in a user's loss (neither positive nor
  // negative). Empty, or one list per batch user.
  std::vector<std::vector<Index>> masked;
};

// Cosine similarity; zero when either vector has zero norm.
double cosine(const Eigen::Ref<const RowVector>& a, const Eigen::Ref<const RowVector>& b);

Vector softmax(const Vector& logits);

// 1/2 softmax(cos(candidates, a)) + 1/2 softmax(cos(candidates, b)).
Vector label_probabilities(const Eigen::Ref<const RowVector>& z_a,
                           const Eigen::Ref<const RowVector>& z_b, const Matrix& candidates);

// Mean of softmax(cos(candidates, z)) over every labeler representation.
Vector label_probabilities(std::span<const RowVector> labelers, const Matrix& candidates);

// Indices of the min(K, size) largest probabilities in descending order,
// ties to the smaller index. `skip` is never returned.
std::vector<Index> top_k(const Vector& probs, Index k, std::optional<Index> skip = std::nullopt);

// Row-wise softmax(cos(reps_b, candidates)): one distribution per row of reps.
Matrix cosine_softmax(const Matrix& reps, const Matrix& candidates);

// Labels from per-user candidate distributions (batch x candidates), e.g. a
// mean of cosine_softmax outputs.
LabelSet label_from_probabilities(ViewTag view, const Matrix& probs,
                                  std::span<const Index> candidate_users,
                                  std::span<const Index> batch_users, Index k, bool exclude_self);

// Tri-training labeling. labelers[v] holds one row per batch user from
// another view's encoder. When exclude_self is set, a user's own candidate
// row can be neither positive nor negative.
LabelSet label_view(ViewTag view, std::span<const Matrix> labelers, const Matrix& candidates,
                    std::span<const Index> candidate_users, std::span<const Index> batch_users,
                    Index k, bool exclude_self);

// Self-discrimination labels: the single positive of every batch user is its
// own perturbed row. Candidates are `sampled` plus the batch users; batch
// users outside `sampled` are masked for everyone but themselves.
LabelSet self_labels(ViewTag view, std::span<const Index> sampled,
                     std::span<const Index> batch_users);

struct InfoNceResult {
  double loss = 0.0;
  Matrix grad_z;           // batch x d
  Matrix grad_candidates;  // c x d
};

// Neighbor-discrimination InfoNCE summed over batch users:
//   sum_u -log( sum_pos exp(cos/tau) / sum_{pos + neg} exp(cos/tau) )
// with negatives = candidates that are neither positive nor masked.
InfoNceResult infonce(const Matrix& z_view, const Matrix& candidates, const LabelSet& labels,
                      double tau);

}  // namespace sept
