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

#include "sept/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sept {
namespace {

std::string shape_str(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

// y += a * x over n contiguous entries.
inline void axpy(double a, const double* x, double* y, Index n) {
  for (Index t = 0; t < n; ++t) y[t] += a * x[t];
}

}  // namespace

SparseMatrix::SparseMatrix(Index n_rows, Index n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), row_offsets_(n_rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(Index n_rows, Index n_cols,
                                         std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row >= n_rows || t.col >= n_cols) {
      throw ShapeError("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                       ") outside " + shape_str(n_rows, n_cols));
    }
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m(n_rows, n_cols);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::vector<Index> counts(n_rows, 0);
  for (std::size_t k = 0; k < triplets.size();) {
    const Index r = triplets[k].row;
    const Index c = triplets[k].col;
    double sum = 0.0;
    for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k) {
      sum += triplets[k].value;
    }
    if (sum != 0.0) {
      m.col_indices_.push_back(c);
      m.values_.push_back(sum);
      ++counts[r];
    }
  }
  for (Index r = 0; r < n_rows; ++r) m.row_offsets_[r + 1] = m.row_offsets_[r] + counts[r];
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& dense) {
  SparseMatrix m(dense.rows(), dense.cols());
  for (Index r = 0; r < m.n_rows_; ++r) {
    for (Index c = 0; c < m.n_cols_; ++c) {
      const double v = dense(r, c);
      if (v != 0.0) {
        m.col_indices_.push_back(c);
        m.values_.push_back(v);
      }
    }
    m.row_offsets_[r + 1] = m.values_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(Index n) {
  SparseMatrix m(n, n);
  m.col_indices_.resize(n);
  m.values_.assign(n, 1.0);
  for (Index i = 0; i < n; ++i) {
    m.col_indices_[i] = i;
    m.row_offsets_[i + 1] = i + 1;
  }
  return m;
}

double SparseMatrix::at(Index r, Index c) const {
  const auto cols = row_cols(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return 0.0;
  return values_[row_offsets_[r] + static_cast<Index>(it - cols.begin())];
}

Matrix SparseMatrix::to_dense() const {
  Matrix d = Matrix::Zero(n_rows_, n_cols_);
  for (Index r = 0; r < n_rows_; ++r) {
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) d(r, col_indices_[k]) = values_[k];
  }
  return d;
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (Index r = 0; r < n_rows_; ++r) {
    for (Index k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      out.push_back({r, col_indices_[k], values_[k]});
    }
  }
  return out;
}

bool SparseMatrix::is_symmetric() const { return n_rows_ == n_cols_ && *this == transpose(*this); }

Matrix spmm(const SparseMatrix& a, const Matrix& x) {
  if (a.cols() != static_cast<Index>(x.rows())) {
    throw ShapeError("spmm: " + shape_str(a.rows(), a.cols()) + " times " +
                     shape_str(x.rows(), x.cols()));
  }
  Matrix out = Matrix::Zero(a.rows(), x.cols());
  const auto d = static_cast<Index>(x.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    double* o = out.data() + r * d;
    for (std::size_t k = 0; k < cols.size(); ++k) axpy(vals[k], x.data() + cols[k] * d, o, d);
  }
  return out;
}

Matrix spmm_transposed(const SparseMatrix& a, const Matrix& x) {
  if (a.rows() != static_cast<Index>(x.rows())) {
    throw ShapeError("spmm_transposed: (" + shape_str(a.rows(), a.cols()) + ")^T times " +
                     shape_str(x.rows(), x.cols()));
  }
  Matrix out = Matrix::Zero(a.cols(), x.cols());
  const auto d = static_cast<Index>(x.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    const double* xr = x.data() + r * d;
    for (std::size_t k = 0; k < cols.size(); ++k) axpy(vals[k], xr, out.data() + cols[k] * d, d);
  }
  return out;
}

SparseMatrix spsp(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("spsp: " + shape_str(a.rows(), a.cols()) + " times " +
                     shape_str(b.rows(), b.cols()));
  }
  std::vector<Triplet> out;
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<char> seen(b.cols(), 0);
  std::vector<Index> touched;
  for (Index r = 0; r < a.rows(); ++r) {
    touched.clear();
    const auto a_cols = a.row_cols(r);
    const auto a_vals = a.row_values(r);
    for (std::size_t k = 0; k < a_cols.size(); ++k) {
      const auto b_cols = b.row_cols(a_cols[k]);
      const auto b_vals = b.row_values(a_cols[k]);
      for (std::size_t q = 0; q < b_cols.size(); ++q) {
        const Index c = b_cols[q];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        acc[c] += a_vals[k] * b_vals[q];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (const Index c : touched) {
      if (acc[c] != 0.0) out.push_back({r, c, acc[c]});
      acc[c] = 0.0;
      seen[c] = 0;
    }
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(out));
}

SparseMatrix hadamard(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("hadamard: " + shape_str(a.rows(), a.cols()) + " vs " +
                     shape_str(b.rows(), b.cols()));
  }
  std::vector<Triplet> out;
  for (Index r = 0; r < a.rows(); ++r) {
    const auto ac = a.row_cols(r);
    const auto av = a.row_values(r);
    const auto bc = b.row_cols(r);
    const auto bv = b.row_values(r);
    std::size_t i = 0, j = 0;
    while (i < ac.size() && j < bc.size()) {
      if (ac[i] < bc[j]) {
        ++i;
      } else if (bc[j] < ac[i]) {
        ++j;
      } else {
        const double v = av[i] * bv[j];
        if (v != 0.0) out.push_back({r, ac[i], v});
        ++i;
        ++j;
      }
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(out));
}

SparseMatrix transpose(const SparseMatrix& a) {
  std::vector<Triplet> out;
  out.reserve(a.nnz());
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) out.push_back({cols[k], r, vals[k]});
  }
  return SparseMatrix::from_triplets(a.cols(), a.rows(), std::move(out));
}

SparseMatrix sym_normalize(const SparseMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("sym_normalize: matrix is " + shape_str(a.rows(), a.cols()));
  }
  std::vector<double> row_sum(a.rows(), 0.0);
  for (Index r = 0; r < a.rows(); ++r) {
    double sum = 0.0;
    for (const double v : a.row_values(r)) {
      if (v < 0.0) throw DomainError("sym_normalize: negative entry in row " + std::to_string(r));
      sum += v;
    }
    row_sum[r] = sum;
  }
  std::vector<Triplet> out;
  out.reserve(a.nnz());
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const double denom = row_sum[r] * row_sum[cols[k]];
      if (denom > 0.0 && vals[k] != 0.0) out.push_back({r, cols[k], vals[k] / std::sqrt(denom)});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(out));
}

}  // namespace sept
