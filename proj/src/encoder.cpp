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

#include "sept/encoder.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "sept/rng.hpp"

namespace sept {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

EmbeddingTable EmbeddingTable::random(Index num_users, Index num_items, Index dim,
                                      std::uint64_t seed) {
  if (dim == 0) throw DomainError("embedding dimension must be positive");
  EmbeddingTable t;
  t.num_users = num_users;
  t.num_items = num_items;
  t.seed = seed;
  t.e.resize(num_users + num_items, dim);
  const double bound = 0.5 / std::sqrt(static_cast<double>(dim));
  Rng rng(seed);
  for (Index r = 0; r < num_users + num_items; ++r) {
    for (Index c = 0; c < dim; ++c) t.e(r, c) = rng.uniform(-bound, bound);
  }
  return t;
}

EncodedView encode(const Matrix& embeddings, const SparseMatrix& view, int num_layers) {
  if (num_layers < 0) throw DomainError("encode: layer count must be non-negative");
  if (view.rows() != view.cols() || view.rows() > static_cast<Index>(embeddings.rows())) {
    throw ShapeError("encode: view is " + std::to_string(view.rows()) + "x" +
                     std::to_string(view.cols()) + " but E has " +
                     std::to_string(embeddings.rows()) + " rows");
  }
  EncodedView out;
  out.layers.reserve(num_layers + 1);
  out.layers.emplace_back(embeddings.topRows(view.rows()));
  Matrix sum = out.layers.back();
  for (int l = 1; l <= num_layers; ++l) {
    out.layers.push_back(spmm(view, out.layers.back()));
    sum += out.layers.back();
  }
  out.z = sum / static_cast<double>(num_layers + 1);
  return out;
}

Matrix encode_backward(const EncodedView& cache, const Matrix& grad_z, const SparseMatrix& view) {
  if (cache.layers.empty()) throw ShapeError("encode_backward: empty cache");
  if (grad_z.rows() != cache.z.rows() || grad_z.cols() != cache.z.cols() ||
      view.rows() != static_cast<Index>(grad_z.rows())) {
    throw ShapeError("encode_backward: gradient does not match the encoded view");
  }
  const int num_layers = cache.num_layers();
  Matrix acc = grad_z;
  Matrix cur = grad_z;
  for (int l = 1; l <= num_layers; ++l) {
    cur = spmm_transposed(view, cur);
    acc += cur;
  }
  return acc / static_cast<double>(num_layers + 1);
}

void save_checkpoint(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out << "sept-embeddings v1 " << table.num_users << ' ' << table.num_items << ' ' << table.dim()
      << ' ' << table.seed << '\n';
  out.write(reinterpret_cast<const char*>(table.e.data()),
            static_cast<std::streamsize>(table.e.size() * sizeof(double)));
  if (!out) throw std::runtime_error("failed writing checkpoint " + path.string());
}

EmbeddingTable load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic, version;
  EmbeddingTable t;
  Index dim = 0;
  hs >> magic >> version >> t.num_users >> t.num_items >> dim >> t.seed;
  if (!hs || magic != "sept-embeddings" || version != "v1") {
    throw std::runtime_error("bad checkpoint header in " + path.string());
  }
  t.e.resize(t.num_users + t.num_items, dim);
  in.read(reinterpret_cast<char*>(t.e.data()),
          static_cast<std::streamsize>(t.e.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(t.e.size() * sizeof(double))) {
    throw std::runtime_error("truncated checkpoint " + path.string());
  }
  return t;
}

}  // namespace sept
