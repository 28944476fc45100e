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
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sept/sparse.hpp"

namespace sept {

// Bijection between external string ids and dense indices.
class IdMap {
 public:
  Index intern(const std::string& name);
  std::optional<Index> find(const std::string& name) const;
  const std::string& name(Index i) const { return names_[i]; }
  Index size() const { return names_.size(); }

  static IdMap sequential(Index n);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Index> index_;
};

using Interaction = std::pair<Index, Index>;  // (user, item)

// Binary user-item matrix R (m x n) plus the id spaces it is indexed by.
struct InteractionGraph {
  IdMap users;
  IdMap items;
  SparseMatrix r;

  Index num_users() const { return r.rows(); }
  Index num_items() const { return r.cols(); }
  Index num_interactions() const { return r.nnz(); }
  std::span<const Index> items_of(Index user) const { return r.row_cols(user); }
  bool has(Index user, Index item) const { return r.at(user, item) != 0.0; }
  std::vector<Interaction> interactions() const;

  // Builds a graph over existing id maps; duplicate pairs collapse to one.
  static InteractionGraph from_pairs(IdMap users, IdMap items,
                                     const std::vector<Interaction>& pairs);
};

// Symmetric, zero-diagonal binary user-user matrix S (m x m).
struct SocialNetwork {
  SparseMatrix s;
  Index num_users() const { return s.rows(); }

  // Symmetrizes, drops self loops and binarizes.
  static SocialNetwork from_pairs(Index num_users, const std::vector<std::pair<Index, Index>>& edges);
};

struct FoldSplit {
  InteractionGraph train;
  std::vector<Interaction> test;
  Index fold_id = 0;
  std::uint64_t seed = 0;
};

struct ReadOptions {
  bool skip_header = false;  // first non-empty line is a column header
};

// Reads `user item [rating]` lines. Entries with rating below the threshold
// are dropped when a threshold is given; everything kept becomes a 1.
InteractionGraph load_interactions(const std::filesystem::path& path,
                                   std::optional<double> rating_threshold = std::nullopt,
                                   ReadOptions options = {});

// Reads `user user [weight]` lines, keeping only users present in `users`.
SocialNetwork load_social(const std::filesystem::path& path, const IdMap& users,
                          ReadOptions options = {});

// Interaction-level k-fold split. Fold sizes differ by at most one.
std::vector<FoldSplit> kfold_split(const InteractionGraph& g, Index k, std::uint64_t seed);

// Moves a random `fraction` of the interactions into a held-out list.
FoldSplit holdout_split(const InteractionGraph& g, double fraction, std::uint64_t seed);

}  // namespace sept
