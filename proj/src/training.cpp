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

#include "sept/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sept {
namespace {

// -log(sigmoid(x)) without overflow.
double neg_log_sigmoid(double x) {
  return x >= 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

Matrix gather_rows(const Matrix& x, std::span<const Index> rows) {
  Matrix out(rows.size(), x.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.row(k) = x.row(rows[k]);
  return out;
}

void scatter_add_rows(Matrix& dst, std::span<const Index> rows, const Matrix& src, double scale) {
  for (std::size_t k = 0; k < rows.size(); ++k) dst.row(rows[k]) += scale * src.row(k);
}

const EncodedView& encoded(const Encodings& enc, ViewTag v) {
  switch (v) {
    case ViewTag::friends: return enc.friends;
    case ViewTag::sharing: return enc.sharing;
    case ViewTag::preference: break;
  }
  return enc.preference;
}

}  // namespace

void TrainingConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("invalid training config: ") + what);
  };
  require(dim > 0, "dim must be positive");
  require(layers >= 0, "layers must be non-negative");
  require(lambda >= 0.0, "lambda must be non-negative");
  require(beta >= 0.0, "beta must be non-negative");
  require(tau > 0.0, "tau must be positive");
  require(rho >= 0.0 && rho < 1.0, "rho must lie in [0, 1)");
  require(k >= 1, "k must be at least 1");
  require(c >= 1, "c must be at least 1");
  require(k <= c, "k must not exceed c");
  require(lr > 0.0, "lr must be positive");
  require(batch_size >= 1, "batch_size must be positive");
  require(warmup_epochs >= 0, "warmup_epochs must be non-negative");
  require(max_epochs >= 0, "max_epochs must be non-negative");
  require(val_fraction >= 0.0 && val_fraction < 1.0, "val_fraction must lie in [0, 1)");
  require(patience >= 1, "patience must be positive");
  require(top_n >= 1, "top_n must be positive");
}

BprBatch sample_bpr_batch(const InteractionGraph& g, Index batch_size, Rng& rng) {
  const Index nnz = g.num_interactions();
  const Index n = g.num_items();
  if (nnz == 0) throw DatasetError("sample_bpr_batch: no interactions");
  const auto offsets = g.r.row_offsets();
  const auto cols = g.r.col_indices();
  bool any_open = false;
  for (Index u = 0; u < g.num_users() && !any_open; ++u) {
    const Index deg = offsets[u + 1] - offsets[u];
    any_open = deg > 0 && deg < n;
  }
  if (!any_open) throw DatasetError("sample_bpr_batch: every user interacted with every item");

  BprBatch batch;
  batch.reserve(batch_size);
  while (batch.size() < batch_size) {
    const Index k = rng.uniform_index(nnz);
    const Index u =
        static_cast<Index>(std::upper_bound(offsets.begin() + 1, offsets.end(), k) -
                           (offsets.begin() + 1));
    if (offsets[u + 1] - offsets[u] == n) continue;  // no negative exists
    Index j = rng.uniform_index(n);
    while (g.has(u, j)) j = rng.uniform_index(n);
    batch.push_back({u, cols[k], j});
  }
  return batch;
}

BprResult bpr_loss(const Matrix& users, const Matrix& items, const Matrix& embeddings,
                   const BprBatch& batch, double lambda) {
  const auto m = static_cast<Index>(users.rows());
  const auto n = static_cast<Index>(items.rows());
  if (users.cols() != items.cols() || static_cast<Index>(embeddings.rows()) != m + n ||
      embeddings.cols() != users.cols()) {
    throw ShapeError("bpr_loss: P, Q and E shapes are inconsistent");
  }
  BprResult out;
  out.grad_users = Matrix::Zero(m, users.cols());
  out.grad_items = Matrix::Zero(n, users.cols());
  out.grad_embeddings = Matrix::Zero(m + n, users.cols());
  std::vector<Index> touched;
  touched.reserve(3 * batch.size());
  for (const auto& t : batch) {
    if (t.user >= m || t.pos >= n || t.neg >= n) {
      throw std::out_of_range("bpr_loss: triple index out of range");
    }
    const RowVector diff = items.row(t.pos) - items.row(t.neg);
    const double x = users.row(t.user).dot(diff);
    out.loss += neg_log_sigmoid(x);
    const double g = -1.0 / (1.0 + std::exp(x));  // d/dx of -log sigmoid(x)
    out.grad_users.row(t.user) += g * diff;
    out.grad_items.row(t.pos) += g * users.row(t.user);
    out.grad_items.row(t.neg) -= g * users.row(t.user);
    touched.push_back(t.user);
    touched.push_back(m + t.pos);
    touched.push_back(m + t.neg);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (const Index r : touched) {
    out.reg_loss += lambda * embeddings.row(r).squaredNorm();
    out.grad_embeddings.row(r) = 2.0 * lambda * embeddings.row(r);
  }
  out.loss += out.reg_loss;
  return out;
}

void adam_step(Matrix& params, const Matrix& grads, AdamState& state, double lr) {
  if (params.rows() != grads.rows() || params.cols() != grads.cols() ||
      state.first.rows() != params.rows() || state.first.cols() != params.cols()) {
    throw ShapeError("adam_step: parameter, gradient and state shapes differ");
  }
  for (Eigen::Index r = 0; r < grads.rows(); ++r) {
    if (!grads.row(r).allFinite()) {
      std::ostringstream msg;
      msg << "adam_step: non-finite gradient in row " << r << " at step " << state.step + 1;
      throw NumericError(msg.str());
    }
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);
  for (Eigen::Index r = 0; r < grads.rows(); ++r) {
    const auto g = grads.row(r);
    if (!state.dense && (g.array() == 0.0).all()) continue;
    state.first.row(r) = state.beta1 * state.first.row(r) + (1.0 - state.beta1) * g;
    state.second.row(r) =
        state.beta2 * state.second.row(r) + (1.0 - state.beta2) * g.cwiseProduct(g);
    params.row(r).array() -= lr * (state.first.row(r).array() / bc1) /
                             ((state.second.row(r).array() / bc2).sqrt() + state.epsilon);
  }
}

std::vector<ViewTag> active_views(const TrainingConfig& config) {
  std::vector<ViewTag> v{ViewTag::preference};
  if (config.use_friend) v.push_back(ViewTag::friends);
  if (config.use_sharing) v.push_back(ViewTag::sharing);
  return v;
}

Encodings encode_all(const Matrix& embeddings, const ViewSet& views,
                     const SparseMatrix* perturbed, const TrainingConfig& config) {
  Encodings enc;
  enc.preference = encode(embeddings, views.preference, config.layers);
  // Auxiliary encoders only matter once there is an unlabeled example set.
  if (perturbed == nullptr) return enc;
  if (config.use_friend) enc.friends = encode(embeddings, views.friends, config.layers);
  if (config.use_sharing) enc.sharing = encode(embeddings, views.sharing, config.layers);
  enc.perturbed = encode(embeddings, *perturbed, config.encoder_layers_perturbed());
  return enc;
}

std::vector<LabelSet> make_labels(const Encodings& enc, std::span<const Index> batch_users,
                                  std::span<const Index> sampled, const TrainingConfig& config) {
  const auto views = active_views(config);
  std::vector<LabelSet> out;
  out.reserve(views.size());
  if (config.self_discrimination) {
    for (const auto v : views) out.push_back(self_labels(v, sampled, batch_users));
    return out;
  }
  const Matrix candidates = gather_rows(enc.perturbed.z, sampled);
  // Each view's distribution is shared by every view it labels.
  std::vector<Matrix> dists;
  dists.reserve(views.size());
  for (const auto v : views) {
    dists.push_back(cosine_softmax(gather_rows(encoded(enc, v).z, batch_users), candidates));
  }
  for (std::size_t a = 0; a < views.size(); ++a) {
    Matrix probs = Matrix::Zero(dists[a].rows(), dists[a].cols());
    double labelers = 0.0;
    for (std::size_t b = 0; b < views.size(); ++b) {
      if (b == a) continue;
      probs += dists[b];
      labelers += 1.0;
    }
    if (labelers == 0.0) {  // self-training
      probs = dists[a];
      labelers = 1.0;
    }
    probs /= labelers;
    out.push_back(label_from_probabilities(views[a], probs, sampled, batch_users, config.k,
                                           config.exclude_self));
  }
  return out;
}

JointLoss joint_objective(const Matrix& embeddings, Index num_users, const ViewSet& views,
                          const SparseMatrix* perturbed, const Encodings& enc,
                          const BprBatch& batch, std::span<const Index> batch_users,
                          std::span<const LabelSet> labels, const TrainingConfig& config) {
  const Matrix& z_pref = enc.preference.z;
  const Index num_items = static_cast<Index>(z_pref.rows()) - num_users;
  const auto bpr = bpr_loss(z_pref.topRows(num_users), z_pref.bottomRows(num_items), embeddings,
                            batch, config.lambda);
  Matrix grad_pref(z_pref.rows(), z_pref.cols());
  grad_pref << bpr.grad_users, bpr.grad_items;

  JointLoss out;
  out.rec_loss = bpr.loss;
  out.grad = bpr.grad_embeddings;
  if (!labels.empty()) {
    if (perturbed == nullptr || enc.perturbed.layers.empty()) {
      throw std::invalid_argument("joint_objective: labels given without a perturbed graph");
    }
    const double beta = config.beta;
    Matrix grad_friend = Matrix::Zero(enc.friends.z.rows(), z_pref.cols());
    Matrix grad_sharing = Matrix::Zero(enc.sharing.z.rows(), z_pref.cols());
    Matrix grad_perturbed = Matrix::Zero(enc.perturbed.z.rows(), z_pref.cols());
    for (const auto& ls : labels) {
      const Matrix z_view = gather_rows(encoded(enc, ls.view).z, batch_users);
      const Matrix candidates = gather_rows(enc.perturbed.z, ls.candidate_indices);
      const auto res = infonce(z_view, candidates, ls, config.tau);
      out.ssl_loss += res.loss;
      Matrix& target = ls.view == ViewTag::preference ? grad_pref
                       : ls.view == ViewTag::friends  ? grad_friend
                                                      : grad_sharing;
      scatter_add_rows(target, batch_users, res.grad_z, beta);
      scatter_add_rows(grad_perturbed, ls.candidate_indices, res.grad_candidates, beta);
    }
    if (!enc.friends.layers.empty()) {
      out.grad.topRows(num_users) += encode_backward(enc.friends, grad_friend, views.friends);
    }
    if (!enc.sharing.layers.empty()) {
      out.grad.topRows(num_users) += encode_backward(enc.sharing, grad_sharing, views.sharing);
    }
    out.grad += encode_backward(enc.perturbed, grad_perturbed, *perturbed);
  }
  out.grad += encode_backward(enc.preference, grad_pref, views.preference);
  out.total = out.rec_loss + config.beta * out.ssl_loss;
  return out;
}

std::vector<Index> batch_users_of(const BprBatch& batch) {
  std::vector<Index> users;
  users.reserve(batch.size());
  for (const auto& t : batch) users.push_back(t.user);
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  return users;
}

Representations recommend_representations(const EmbeddingTable& table, const InteractionGraph& g,
                                          int layers) {
  const SparseMatrix pref =
      sym_normalize(build_joint(g.r, SparseMatrix(g.num_users(), g.num_users())));
  const auto enc = encode(table.e, pref, layers);
  return {enc.z.topRows(g.num_users()), enc.z.bottomRows(g.num_items())};
}

TrainResult train(const TrainingConfig& config, const InteractionGraph& g, const SocialNetwork& s,
                  const LabelObserver& observer) {
  config.validate();
  if (s.num_users() != g.num_users()) {
    throw ShapeError("train: social network and interaction graph disagree on the user count");
  }
  const Index m = g.num_users();
  const Index n = g.num_items();

  InteractionGraph fit = g;
  std::vector<Interaction> validation;
  if (config.val_fraction > 0.0) {
    auto split = holdout_split(g, config.val_fraction, derive_seed(config.seed, 3));
    fit = std::move(split.train);
    validation = std::move(split.test);
  }
  const ViewSet views = build_views(fit.r, s.s);
  const SparseMatrix joint = build_joint(fit.r, s.s);

  TrainResult result;
  result.embeddings = EmbeddingTable::random(m, n, config.dim, config.seed);
  Matrix& e = result.embeddings.e;
  Matrix best = e;
  AdamState adam(m + n, config.dim, config.dense_adam);
  Rng bpr_rng(derive_seed(config.seed, 1));
  Rng ssl_rng(derive_seed(config.seed, 2));
  const Index batches = (fit.num_interactions() + config.batch_size - 1) / config.batch_size;
  double best_recall = -1.0;
  int since_best = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const bool joint_stage = epoch > config.warmup_epochs && config.beta > 0.0;
    std::optional<PerturbedGraph> perturbed;
    if (joint_stage) perturbed = perturb(joint, config.rho, derive_seed(config.seed, 1000 + epoch));
    const SparseMatrix* perturbed_adj = perturbed ? &perturbed->adjacency : nullptr;

    double rec_sum = 0.0, ssl_sum = 0.0;
    Index triples = 0, ssl_terms = 0;
    for (Index b = 0; b < batches; ++b) {
      const auto batch = sample_bpr_batch(fit, config.batch_size, bpr_rng);
      const auto users = batch_users_of(batch);
      const auto enc = encode_all(e, views, perturbed_adj, config);
      std::vector<LabelSet> labels;
      if (joint_stage) {
        auto sampled = ssl_rng.sample_without_replacement(m, std::min(config.c, m));
        std::vector<Index> cand(sampled.begin(), sampled.end());
        std::sort(cand.begin(), cand.end());
        labels = make_labels(enc, users, cand, config);
        if (observer) observer(epoch, b, labels);
      }
      const auto loss =
          joint_objective(e, m, views, perturbed_adj, enc, batch, users, labels, config);
      if (!std::isfinite(loss.total)) {
        throw NumericError("training diverged at epoch " + std::to_string(epoch) + ", batch " +
                           std::to_string(b));
      }
      adam_step(e, loss.grad, adam, config.lr);
      rec_sum += loss.rec_loss;
      ssl_sum += loss.ssl_loss;
      triples += batch.size();
      ssl_terms += users.size() * labels.size();
    }

    EpochLog entry{epoch, rec_sum / static_cast<double>(triples),
                   ssl_terms ? ssl_sum / static_cast<double>(ssl_terms) : 0.0, std::nullopt};
    bool stop = false;
    if (!validation.empty()) {
      const auto reps = recommend_representations(result.embeddings, fit, config.layers);
      entry.validation = evaluate(reps.users, reps.items, fit, validation, config.top_n);
      if (entry.validation->recall > best_recall) {
        best_recall = entry.validation->recall;
        best = e;
        result.best_epoch = epoch;
        since_best = 0;
      } else {
        ++since_best;
      }
      stop = epoch > config.warmup_epochs && since_best >= config.patience;
    } else {
      result.best_epoch = epoch;
    }
    result.log.push_back(entry);
    if (stop) break;
  }
  if (!validation.empty() && result.best_epoch > 0) e = best;
  return result;
}

std::string format_log(std::span<const EpochLog> log) {
  std::string out = "epoch\trec_loss\tssl_loss\tval_precision\tval_recall\tval_ndcg\n";
  char buf[256];
  for (const auto& l : log) {
    if (l.validation) {
      std::snprintf(buf, sizeof buf, "%d\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\n", l.epoch,
                    l.rec_loss, l.ssl_loss, l.validation->precision, l.validation->recall,
                    l.validation->ndcg);
    } else {
      std::snprintf(buf, sizeof buf, "%d\t%.17g\t%.17g\t-\t-\t-\n", l.epoch, l.rec_loss,
                    l.ssl_loss);
    }
    out += buf;
  }
  return out;
}

EvalReport cross_validate(const TrainingConfig& config, const InteractionGraph& g,
                          const SocialNetwork& s, Index k, const TrainFn& trainer) {
  const auto folds = kfold_split(g, k, config.seed);
  EvalReport report;
  report.n = config.top_n;
  for (const auto& fold : folds) {
    Metrics m;
    try {
      const EmbeddingTable table = trainer ? trainer(config, fold.train, s, fold.fold_id)
                                           : train(config, fold.train, s).embeddings;
      const auto reps = recommend_representations(table, fold.train, config.layers);
      m = evaluate(reps.users, reps.items, fold.train, fold.test, config.top_n);
    } catch (const std::exception& ex) {
      throw FoldError(fold.fold_id, ex.what());
    }
    report.per_fold.push_back({100.0 * m.precision, 100.0 * m.recall, 100.0 * m.ndcg});
  }
  for (const auto& f : report.per_fold) {
    report.mean.precision += f.precision;
    report.mean.recall += f.recall;
    report.mean.ndcg += f.ndcg;
  }
  const double kf = static_cast<double>(report.per_fold.size());
  report.mean = {report.mean.precision / kf, report.mean.recall / kf, report.mean.ndcg / kf};
  return report;
}

}  // namespace sept
