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

#include "sept/views.hpp"

#include <string>
#include <vector>

#include "sept/rng.hpp"

namespace sept {

AugmentedViews augment_views(const SparseMatrix& r, const SparseMatrix& s) {
  if (s.rows() != s.cols() || r.rows() != s.rows()) {
    throw ShapeError("augment_views: R is " + std::to_string(r.rows()) + "x" +
                     std::to_string(r.cols()) + ", S is " + std::to_string(s.rows()) + "x" +
                     std::to_string(s.cols()));
  }
  return {hadamard(spsp(s, s), s), hadamard(spsp(r, transpose(r)), s)};
}

SparseMatrix build_joint(const SparseMatrix& r, const SparseMatrix& s) {
  if (s.rows() != s.cols() || r.rows() != s.rows()) {
    throw ShapeError("build_joint: R and S disagree on the user count");
  }
  const Index m = r.rows();
  std::vector<Triplet> t = s.to_triplets();
  t.reserve(s.nnz() + 2 * r.nnz());
  for (const auto& x : r.to_triplets()) {
    t.push_back({x.row, m + x.col, x.value});
    t.push_back({m + x.col, x.row, x.value});
  }
  const Index size = m + r.cols();
  return SparseMatrix::from_triplets(size, size, std::move(t));
}

ViewSet build_views(const SparseMatrix& r, const SparseMatrix& s) {
  const auto aug = augment_views(r, s);
  return {sym_normalize(build_joint(r, SparseMatrix(r.rows(), r.rows()))),
          sym_normalize(aug.friend_raw), sym_normalize(aug.sharing_raw)};
}

PerturbedGraph perturb(const SparseMatrix& joint, double rho, std::uint64_t seed) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("perturb: rho must lie in [0, 1)");
  if (joint.rows() != joint.cols()) throw ShapeError("perturb: joint graph must be square");
  Rng rng(seed);
  std::vector<Triplet> kept;
  kept.reserve(joint.nnz());
  // Upper triangle (including the diagonal) enumerates each undirected edge once.
  for (Index r = 0; r < joint.rows(); ++r) {
    const auto cols = joint.row_cols(r);
    const auto vals = joint.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const Index c = cols[k];
      if (c < r) continue;
      if (rng.uniform01() < rho) continue;
      kept.push_back({r, c, vals[k]});
      if (c != r) kept.push_back({c, r, joint.at(c, r)});
    }
  }
  return {sym_normalize(SparseMatrix::from_triplets(joint.rows(), joint.cols(), std::move(kept))),
          seed};
}

}  // namespace sept
