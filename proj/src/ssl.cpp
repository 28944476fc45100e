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

#include "sept/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sept {
namespace {

// Rows scaled to unit norm; zero rows stay zero. inv_norm receives 1/|row| or 0.
Matrix normalize_rows(const Matrix& x, Vector& inv_norm) {
  inv_norm.resize(x.rows());
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double n = x.row(r).norm();
    inv_norm(r) = n > 0.0 ? 1.0 / n : 0.0;
    out.row(r) = x.row(r) * inv_norm(r);
  }
  return out;
}

}  // namespace

std::string_view to_string(ViewTag view) {
  switch (view) {
    case ViewTag::preference: return "preference";
    case ViewTag::friends: return "friend";
    case ViewTag::sharing: return "sharing";
  }
  return "?";
}

double cosine(const Eigen::Ref<const RowVector>& a, const Eigen::Ref<const RowVector>& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

Vector softmax(const Vector& logits) {
  if (logits.size() == 0) return logits;
  const double mx = logits.maxCoeff();
  Vector e = (logits.array() - mx).exp();
  return e / e.sum();
}

Vector label_probabilities(std::span<const RowVector> labelers, const Matrix& candidates) {
  if (labelers.empty()) throw std::invalid_argument("label_probabilities: no labelers");
  if (candidates.rows() == 0) throw DomainError("label_probabilities: no candidates");
  Vector acc = Vector::Zero(candidates.rows());
  Vector cos(candidates.rows());
  for (const auto& z : labelers) {
    for (Eigen::Index j = 0; j < candidates.rows(); ++j) cos(j) = cosine(candidates.row(j), z);
    acc += softmax(cos);
  }
  return acc / static_cast<double>(labelers.size());
}

Vector label_probabilities(const Eigen::Ref<const RowVector>& z_a,
                           const Eigen::Ref<const RowVector>& z_b, const Matrix& candidates) {
  const RowVector both[] = {z_a, z_b};
  return label_probabilities(std::span<const RowVector>(both), candidates);
}

std::vector<Index> top_k(const Vector& probs, Index k, std::optional<Index> skip) {
  if (probs.size() == 0) throw DomainError("top_k: empty probability vector");
  if (k == 0) throw DomainError("top_k: K must be at least 1");
  const auto better = [&](Index a, Index b) {
    return probs(a) != probs(b) ? probs(a) > probs(b) : a < b;
  };
  // Insertion into a sorted window of at most k; K is small next to the pool.
  std::vector<Index> best;
  best.reserve(k + 1);
  for (Index j = 0; j < static_cast<Index>(probs.size()); ++j) {
    if (skip && *skip == j) continue;
    if (best.size() == k && !better(j, best.back())) continue;
    best.insert(std::upper_bound(best.begin(), best.end(), j, better), j);
    if (best.size() > k) best.pop_back();
  }
  return best;
}

Matrix cosine_softmax(const Matrix& reps, const Matrix& candidates) {
  if (reps.cols() != candidates.cols()) throw ShapeError("cosine_softmax: dimension mismatch");
  Vector inv_r, inv_c;
  Matrix out(reps.rows(), candidates.rows());
  out.noalias() = normalize_rows(reps, inv_r) * normalize_rows(candidates, inv_c).transpose();
  for (Eigen::Index b = 0; b < out.rows(); ++b) {
    auto row = out.row(b).array();
    row = (row - row.maxCoeff()).exp();
    row /= row.sum();
  }
  return out;
}

LabelSet label_from_probabilities(ViewTag view, const Matrix& probs,
                                  std::span<const Index> candidate_users,
                                  std::span<const Index> batch_users, Index k, bool exclude_self) {
  if (static_cast<Index>(probs.rows()) != batch_users.size() ||
      static_cast<Index>(probs.cols()) != candidate_users.size()) {
    throw ShapeError("label_from_probabilities: probabilities disagree with the id lists");
  }
  LabelSet out;
  out.view = view;
  out.candidate_indices.assign(candidate_users.begin(), candidate_users.end());
  out.positives.resize(batch_users.size());
  if (exclude_self) out.masked.resize(batch_users.size());
  Vector row;
  for (Index b = 0; b < batch_users.size(); ++b) {
    std::optional<Index> self;
    if (exclude_self) {
      const auto it = std::find(candidate_users.begin(), candidate_users.end(), batch_users[b]);
      if (it != candidate_users.end()) {
        self = static_cast<Index>(it - candidate_users.begin());
        out.masked[b].push_back(*self);
      }
    }
    row = probs.row(b).transpose();
    out.positives[b] = top_k(row, k, self);
  }
  return out;
}

LabelSet label_view(ViewTag view, std::span<const Matrix> labelers, const Matrix& candidates,
                    std::span<const Index> candidate_users, std::span<const Index> batch_users,
                    Index k, bool exclude_self) {
  if (labelers.empty()) throw std::invalid_argument("label_view: no labeling views");
  if (static_cast<Index>(candidates.rows()) != candidate_users.size()) {
    throw ShapeError("label_view: candidate rows and ids disagree");
  }
  for (const auto& l : labelers) {
    if (static_cast<Index>(l.rows()) != batch_users.size() || l.cols() != candidates.cols()) {
      throw ShapeError("label_view: labeler representation has the wrong shape");
    }
  }
  Matrix probs = Matrix::Zero(static_cast<Eigen::Index>(batch_users.size()), candidates.rows());
  for (const auto& l : labelers) probs += cosine_softmax(l, candidates);
  probs /= static_cast<double>(labelers.size());
  return label_from_probabilities(view, probs, candidate_users, batch_users, k, exclude_self);
}

LabelSet self_labels(ViewTag view, std::span<const Index> sampled,
                     std::span<const Index> batch_users) {
  std::vector<Index> pool(sampled.begin(), sampled.end());
  pool.insert(pool.end(), batch_users.begin(), batch_users.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::vector<Index> sorted_sampled(sampled.begin(), sampled.end());
  std::sort(sorted_sampled.begin(), sorted_sampled.end());

  const auto local = [&](Index user) {
    return static_cast<Index>(std::lower_bound(pool.begin(), pool.end(), user) - pool.begin());
  };
  std::vector<Index> outsiders;  // batch users that were not sampled
  for (const Index u : batch_users) {
    if (!std::binary_search(sorted_sampled.begin(), sorted_sampled.end(), u)) {
      outsiders.push_back(local(u));
    }
  }
  std::sort(outsiders.begin(), outsiders.end());
  outsiders.erase(std::unique(outsiders.begin(), outsiders.end()), outsiders.end());

  LabelSet out;
  out.view = view;
  out.candidate_indices = pool;
  out.positives.resize(batch_users.size());
  out.masked.resize(batch_users.size());
  for (Index b = 0; b < batch_users.size(); ++b) {
    const Index self = local(batch_users[b]);
    out.positives[b] = {self};
    for (const Index o : outsiders) {
      if (o != self) out.masked[b].push_back(o);
    }
  }
  return out;
}

InfoNceResult infonce(const Matrix& z_view, const Matrix& candidates, const LabelSet& labels,
                      double tau) {
  if (!(tau > 0.0)) throw DomainError("infonce: temperature must be positive");
  const auto batch = static_cast<Index>(z_view.rows());
  const auto num_cand = static_cast<Index>(candidates.rows());
  if (labels.positives.size() != batch || z_view.cols() != candidates.cols() ||
      labels.candidate_indices.size() != num_cand ||
      (!labels.masked.empty() && labels.masked.size() != batch)) {
    throw ShapeError("infonce: representations and labels disagree in shape");
  }

  Vector inv_z, inv_c;
  const Matrix z_hat = normalize_rows(z_view, inv_z);
  const Matrix c_hat = normalize_rows(candidates, inv_c);
  Matrix cos(batch, num_cand);
  cos.noalias() = z_hat * c_hat.transpose();

  // coef(b, j) = d loss / d cos(b, j)
  Matrix coef = Matrix::Zero(batch, num_cand);
  Eigen::ArrayXd active(num_cand), positive(num_cand), logits(num_cand), w(num_cand);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double loss = 0.0;
  for (Index b = 0; b < batch; ++b) {
    const auto& pos = labels.positives[b];
    if (pos.empty()) {
      throw std::invalid_argument("infonce: empty positive set for batch user " +
                                  std::to_string(b));
    }
    active.setOnes();
    positive.setZero();
    if (!labels.masked.empty()) {
      for (const Index j : labels.masked[b]) {
        if (j >= num_cand) throw std::invalid_argument("infonce: masked index out of range");
        active(j) = 0.0;
      }
    }
    for (const Index j : pos) {
      if (j >= num_cand) throw std::invalid_argument("infonce: positive index out of range");
      positive(j) = 1.0;
      active(j) = 1.0;
    }
    const Eigen::ArrayXd negative = active - positive;
    // Exactly zero, with zero gradient, when no negatives remain.
    if (negative.sum() == 0.0) continue;

    logits = cos.row(b).transpose().array() / tau;
    const double mx = (active > 0.0).select(logits, -kInf).maxCoeff();
    // select, not a product: a masked logit above mx may overflow and inf * 0 is NaN.
    w = (active > 0.0).select((logits - mx).exp(), 0.0);
    const double p = (w * positive).sum();
    const double n = (w * negative).sum();
    const double total = p + n;
    double r;  // log(N / P); loss = softplus(r), free of the lse_all - lse_pos cancellation
    auto c = coef.row(b).array();
    if (p >= std::numeric_limits<double>::min()) {
      r = std::log(n) - std::log(p);
      // Positives: w/total - w/P = -w N / (P total).
      c = (positive > 0.0).select(-w * (n / (p * total)), w / total) / tau;
    } else {
      // Positives far below the negatives; separate shifts keep P representable.
      const double mp = (positive > 0.0).select(logits, -kInf).maxCoeff();
      const double lse_pos = mp + std::log((positive > 0.0).select((logits - mp).exp(), 0.0).sum());
      const double lse_all = mx + std::log(total);
      r = lse_all - lse_pos;
      c = ((positive > 0.0).select(-(logits - lse_pos).exp(), 0.0) + w / total) / tau;
    }
    loss += r > 0.0 ? r + std::log1p(std::exp(-r)) : std::log1p(std::exp(r));
  }

  InfoNceResult out;
  out.loss = loss;
  const Matrix coef_cos = coef.cwiseProduct(cos);
  const Vector row_term = coef_cos.rowwise().sum();
  const Vector col_term = coef_cos.colwise().sum().transpose();
  out.grad_z.noalias() = coef * c_hat;
  out.grad_z -= row_term.asDiagonal() * z_hat;
  out.grad_z = inv_z.asDiagonal() * out.grad_z;
  out.grad_candidates.noalias() = coef.transpose() * z_hat;
  out.grad_candidates -= col_term.asDiagonal() * c_hat;
  out.grad_candidates = inv_c.asDiagonal() * out.grad_candidates;
  return out;
}

}  // namespace sept
