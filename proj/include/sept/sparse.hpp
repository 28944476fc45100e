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

#include <span>
#include <vector>

#include "sept/common.hpp"

namespace sept {

struct Triplet {
  Index row;
  Index col;
  double value;
};

// Compressed sparse row matrix in canonical form: column indices strictly
// increasing within each row and no explicitly stored zeros. Every
// constructor canonicalizes, so two matrices with the same entries compare
// equal.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Index n_rows, Index n_cols);

  // Duplicate (row, col) entries are summed; entries summing to zero are dropped.
  static SparseMatrix from_triplets(Index n_rows, Index n_cols, std::vector<Triplet> triplets);
  static SparseMatrix from_dense(const Matrix& dense);
  static SparseMatrix identity(Index n);

  Index rows() const { return n_rows_; }
  Index cols() const { return n_cols_; }
  Index nnz() const { return values_.size(); }

  std::span<const Index> row_offsets() const { return row_offsets_; }
  std::span<const Index> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  std::span<const Index> row_cols(Index r) const {
    return std::span<const Index>(col_indices_).subspan(row_offsets_[r],
                                                        row_offsets_[r + 1] - row_offsets_[r]);
  }
  std::span<const double> row_values(Index r) const {
    return std::span<const double>(values_).subspan(row_offsets_[r],
                                                    row_offsets_[r + 1] - row_offsets_[r]);
  }

  // Stored value at (r, c), zero when absent. O(log row length).
  double at(Index r, Index c) const;

  Matrix to_dense() const;
  std::vector<Triplet> to_triplets() const;
  bool is_symmetric() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  Index n_rows_ = 0;
  Index n_cols_ = 0;
  std::vector<Index> row_offsets_{0};
  std::vector<Index> col_indices_;
  std::vector<double> values_;
};

// A * X.
Matrix spmm(const SparseMatrix& a, const Matrix& x);
// A^T * X without materializing the transpose.
Matrix spmm_transposed(const SparseMatrix& a, const Matrix& x);
// A * B (Gustavson row-by-row accumulation).
SparseMatrix spsp(const SparseMatrix& a, const SparseMatrix& b);
// Element-wise product.
SparseMatrix hadamard(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix transpose(const SparseMatrix& a);
// D^{-1/2} A D^{-1/2} with D the row sums. Zero-sum rows stay zero.
SparseMatrix sym_normalize(const SparseMatrix& a);

}  // namespace sept
