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
#include <vector>

#include "sept/sparse.hpp"

namespace sept {

// The shared bottom embeddings E: user rows [0, m) followed by item rows
// [m, m+n). E is the only trainable parameter in the model.
struct EmbeddingTable {
  Matrix e;
  Index num_users = 0;
  Index num_items = 0;
  std::uint64_t seed = 0;

  Index dim() const { return static_cast<Index>(e.cols()); }

  // Uniform in [-0.5/sqrt(d), 0.5/sqrt(d)].
  static EmbeddingTable random(Index num_users, Index num_items, Index dim, std::uint64_t seed);

  friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
    return a.num_users == b.num_users && a.num_items == b.num_items && a.seed == b.seed &&
           a.e.rows() == b.e.rows() && a.e.cols() == b.e.cols() && a.e == b.e;
  }
};

// Output of one encoder pass. z is the layer mean; layers keeps X^0..X^L.
struct EncodedView {
  Matrix z;
  std::vector<Matrix> layers;

  int num_layers() const { return static_cast<int>(layers.size()) - 1; }
};

// LightGCN propagation over `view`: X^0 is the first view.rows() rows of E,
// X^l = view * X^{l-1}, and z = mean(X^0..X^L).
EncodedView encode(const Matrix& embeddings, const SparseMatrix& view, int num_layers);

// Gradient of a loss w.r.t. the consumed slice of E given its gradient
// w.r.t. z: (1/(L+1)) * sum_l (view^T)^l grad_z.
Matrix encode_backward(const EncodedView& cache, const Matrix& grad_z, const SparseMatrix& view);

// Checkpoint layout: one ASCII header line
//   "sept-embeddings v1 <m> <n> <d> <seed>\n"
// followed by (m+n)*d little-endian IEEE-754 doubles in row-major order.
void save_checkpoint(const EmbeddingTable& table, const std::filesystem::path& path);
EmbeddingTable load_checkpoint(const std::filesystem::path& path);

}  // namespace sept
