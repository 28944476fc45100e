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

#include "sept/sparse.hpp"

namespace sept {

// Count-valued triangle adjacencies over users (m x m).
struct AugmentedViews {
  SparseMatrix friend_raw;   // mutual-friend counts on social edges, (SS) .* S
  SparseMatrix sharing_raw;  // co-interaction counts on social edges, (RR^T) .* S
};

// Normalized adjacencies the three encoders convolve over.
struct ViewSet {
  SparseMatrix preference;  // (m+n) x (m+n) bipartite graph of R
  SparseMatrix friends;     // m x m
  SparseMatrix sharing;     // m x m
};

struct PerturbedGraph {
  SparseMatrix adjacency;  // normalized, (m+n) x (m+n)
  std::uint64_t kept_edge_mask_seed = 0;
};

AugmentedViews augment_views(const SparseMatrix& r, const SparseMatrix& s);

// [[S, R], [R^T, 0]] of size (m+n) x (m+n).
SparseMatrix build_joint(const SparseMatrix& r, const SparseMatrix& s);

ViewSet build_views(const SparseMatrix& r, const SparseMatrix& s);

// Drops each undirected edge of `joint` with probability rho and normalizes
// what is left. Both directions of an edge share one coin flip.
PerturbedGraph perturb(const SparseMatrix& joint, double rho, std::uint64_t seed);

}  // namespace sept
