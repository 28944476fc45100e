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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sept/data.hpp"
#include "sept/encoder.hpp"
#include "sept/eval.hpp"
#include "sept/rng.hpp"
#include "sept/ssl.hpp"
#include "sept/views.hpp"

namespace sept {

struct TrainingConfig {
  Index dim = 50;
  int layers = 2;
  // Layer count of the perturbed-graph encoder; negative means `layers`.
  int perturbed_layers = -1;
  double lambda = 0.001;
  double beta = 0.005;
  double tau = 0.1;
  double rho = 0.3;
  Index k = 10;
  Index c = 1000;
  double lr = 0.001;
  Index batch_size = 2000;
  int warmup_epochs = 10;
  int max_epochs = 200;
  std::uint64_t seed = 0;
  bool exclude_self = false;
  // Positives are the user's own perturbed row only.
  bool self_discrimination = false;
  bool use_friend = true;
  bool use_sharing = true;
  // Fraction of training interactions held out for early stopping; 0 disables it.
  double val_fraction = 0.05;
  int patience = 10;
  Index top_n = 10;
  bool dense_adam = false;

  int encoder_layers_perturbed() const { return perturbed_layers < 0 ? layers : perturbed_layers; }
  // Throws DomainError on an invalid combination.
  void validate() const;
};

struct BprTriple {
  Index user;
  Index pos;
  Index neg;
};
using BprBatch = std::vector<BprTriple>;

// Positive pairs uniform over interactions; one negative per pair drawn
// uniformly from the user's non-interacted items.
BprBatch sample_bpr_batch(const InteractionGraph& g, Index batch_size, Rng& rng);

struct BprResult {
  double loss = 0.0;      // ranking + regularization
  double reg_loss = 0.0;
  Matrix grad_users;      // m x d, w.r.t. P
  Matrix grad_items;      // n x d, w.r.t. Q
  Matrix grad_embeddings; // (m+n) x d, w.r.t. E (regularization only)
};

// sum over triples of -log sigmoid(P_u.Q_i - P_u.Q_j), plus lambda times the
// squared norms of the distinct E rows (u, m+i, m+j) the batch touches.
BprResult bpr_loss(const Matrix& users, const Matrix& items, const Matrix& embeddings,
                   const BprBatch& batch, double lambda);

struct AdamState {
  Matrix first;
  Matrix second;
  std::int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Sparse mode only touches rows whose gradient is nonzero.
  bool dense = false;

  AdamState() = default;
  AdamState(Index rows, Index cols, bool dense_updates = false)
      : first(Matrix::Zero(rows, cols)), second(Matrix::Zero(rows, cols)), dense(dense_updates) {}
};

void adam_step(Matrix& params, const Matrix& grads, AdamState& state, double lr);

// Encoder outputs for one parameter state. Absent views are left empty.
struct Encodings {
  EncodedView preference;
  EncodedView friends;
  EncodedView sharing;
  EncodedView perturbed;
};

// Views that participate in the self-supervised task.
std::vector<ViewTag> active_views(const TrainingConfig& config);

Encodings encode_all(const Matrix& embeddings, const ViewSet& views,
                     const SparseMatrix* perturbed, const TrainingConfig& config);

// Pseudo-labels for every active view. Each view is labeled by the other
// active views (only itself when it is alone).
std::vector<LabelSet> make_labels(const Encodings& enc, std::span<const Index> batch_users,
                                  std::span<const Index> sampled, const TrainingConfig& config);

struct JointLoss {
  double rec_loss = 0.0;
  double ssl_loss = 0.0;  // unweighted
  double total = 0.0;     // rec + beta * ssl
  Matrix grad;            // w.r.t. E
};

// L = L_rec + beta * sum_v InfoNCE_v with labels held fixed, and its gradient
// through every encoder into E. `labels` may be empty (BPR only).
JointLoss joint_objective(const Matrix& embeddings, Index num_users, const ViewSet& views,
                          const SparseMatrix* perturbed, const Encodings& enc,
                          const BprBatch& batch, std::span<const Index> batch_users,
                          std::span<const LabelSet> labels, const TrainingConfig& config);

// Distinct users of a batch in ascending order.
std::vector<Index> batch_users_of(const BprBatch& batch);

struct EpochLog {
  int epoch = 0;
  double rec_loss = 0.0;
  double ssl_loss = 0.0;
  std::optional<Metrics> validation;

  friend bool operator==(const EpochLog&, const EpochLog&) = default;
};

struct TrainResult {
  EmbeddingTable embeddings;
  std::vector<EpochLog> log;
  int best_epoch = 0;
};

// Called after each batch of the joint stage with the labels it used.
using LabelObserver = std::function<void(int epoch, Index batch, std::span<const LabelSet>)>;

// Warm-up with BPR only for config.warmup_epochs, then joint optimization of
// the recommendation and self-supervised losses. With val_fraction > 0 the
// best validation checkpoint is returned.
TrainResult train(const TrainingConfig& config, const InteractionGraph& g, const SocialNetwork& s,
                  const LabelObserver& observer = {});

// User and item representations of the preference encoder.
struct Representations {
  Matrix users;
  Matrix items;
};
Representations recommend_representations(const EmbeddingTable& table, const InteractionGraph& g,
                                          int layers);

// One line per epoch: epoch, rec_loss, ssl_loss, val_precision, val_recall, val_ndcg.
std::string format_log(std::span<const EpochLog> log);

using TrainFn =
    std::function<EmbeddingTable(const TrainingConfig&, const InteractionGraph&,
                                 const SocialNetwork&, Index fold)>;

// k-fold cross-validation: trains on each fold's training split, evaluates on
// its held-out split and reports percentages.
EvalReport cross_validate(const TrainingConfig& config, const InteractionGraph& g,
                          const SocialNetwork& s, Index k, const TrainFn& trainer = {});

// Adds the fold id to errors escaping a fold's training.
class FoldError : public std::runtime_error {
 public:
  FoldError(Index fold, const std::string& what)
      : std::runtime_error("fold " + std::to_string(fold) + ": " + what), fold_(fold) {}
  Index fold() const { return fold_; }

 private:
  Index fold_;
};

}  // namespace sept
