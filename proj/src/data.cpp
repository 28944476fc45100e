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

#include "sept/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sept/rng.hpp"

namespace sept {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool is_content(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos != std::string::npos && line[pos] != '#';
}

template <typename Fn>
void for_each_record(const std::filesystem::path& path, ReadOptions options, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = options.skip_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_content(line)) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    fn(split_ws(line), line_no);
  }
}

}  // namespace

Index IdMap::intern(const std::string& name) {
  auto [it, inserted] = index_.try_emplace(name, names_.size());
  if (inserted) names_.push_back(name);
  return it->second;
}

std::optional<Index> IdMap::find(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

IdMap IdMap::sequential(Index n) {
  IdMap m;
  for (Index i = 0; i < n; ++i) m.intern(std::to_string(i));
  return m;
}

std::vector<Interaction> InteractionGraph::interactions() const {
  std::vector<Interaction> out;
  out.reserve(r.nnz());
  for (Index u = 0; u < r.rows(); ++u) {
    for (const Index i : r.row_cols(u)) out.emplace_back(u, i);
  }
  return out;
}

InteractionGraph InteractionGraph::from_pairs(IdMap users, IdMap items,
                                              const std::vector<Interaction>& pairs) {
  std::vector<Triplet> t;
  t.reserve(pairs.size());
  for (const auto& [u, i] : pairs) t.push_back({u, i, 1.0});
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  t.erase(std::unique(t.begin(), t.end(),
                      [](const Triplet& a, const Triplet& b) {
                        return a.row == b.row && a.col == b.col;
                      }),
          t.end());
  InteractionGraph g;
  g.r = SparseMatrix::from_triplets(users.size(), items.size(), std::move(t));
  g.users = std::move(users);
  g.items = std::move(items);
  return g;
}

SocialNetwork SocialNetwork::from_pairs(Index num_users,
                                        const std::vector<std::pair<Index, Index>>& edges) {
  std::vector<Triplet> t;
  t.reserve(2 * edges.size());
  for (const auto& [a, b] : edges) {
    if (a == b) continue;
    t.push_back({a, b, 1.0});
    t.push_back({b, a, 1.0});
  }
  SparseMatrix summed = SparseMatrix::from_triplets(num_users, num_users, std::move(t));
  // Binarize: repeated or already-bidirectional edges sum above one.
  auto trip = summed.to_triplets();
  for (auto& x : trip) x.value = 1.0;
  return SocialNetwork{SparseMatrix::from_triplets(num_users, num_users, std::move(trip))};
}

InteractionGraph load_interactions(const std::filesystem::path& path,
                                   std::optional<double> rating_threshold, ReadOptions options) {
  IdMap users;
  IdMap items;
  std::vector<Interaction> pairs;
  for_each_record(path, options, [&](const std::vector<std::string>& tok, std::size_t line_no) {
    if (tok.size() < 2 || tok.size() > 3) {
      throw ParseError("expected `user item [rating]` in " + path.string(), line_no);
    }
    double rating = 1.0;
    if (tok.size() == 3 && !parse_double(tok[2], rating)) {
      throw ParseError("bad rating '" + tok[2] + "' in " + path.string(), line_no);
    }
    if (rating_threshold && rating < *rating_threshold) return;
    pairs.emplace_back(users.intern(tok[0]), items.intern(tok[1]));
  });
  if (pairs.empty()) throw DatasetError("no interactions kept from " + path.string());
  return InteractionGraph::from_pairs(std::move(users), std::move(items), pairs);
}

SocialNetwork load_social(const std::filesystem::path& path, const IdMap& users,
                          ReadOptions options) {
  std::vector<std::pair<Index, Index>> edges;
  for_each_record(path, options, [&](const std::vector<std::string>& tok, std::size_t line_no) {
    if (tok.size() < 2 || tok.size() > 3) {
      throw ParseError("expected `user user [weight]` in " + path.string(), line_no);
    }
    double weight = 1.0;
    if (tok.size() == 3 && !parse_double(tok[2], weight)) {
      throw ParseError("bad weight '" + tok[2] + "' in " + path.string(), line_no);
    }
    const auto a = users.find(tok[0]);
    const auto b = users.find(tok[1]);
    if (a && b) edges.emplace_back(*a, *b);
  });
  return SocialNetwork::from_pairs(users.size(), edges);
}

namespace {

std::vector<Interaction> shuffled_interactions(const InteractionGraph& g, std::uint64_t seed) {
  auto all = g.interactions();
  Rng rng(seed);
  for (std::size_t i = all.size(); i > 1; --i) {
    std::swap(all[i - 1], all[rng.uniform_index(i)]);
  }
  return all;
}

}  // namespace

std::vector<FoldSplit> kfold_split(const InteractionGraph& g, Index k, std::uint64_t seed) {
  if (g.num_interactions() == 0) throw DatasetError("kfold_split: empty interaction graph");
  if (k < 2) throw SplitError("kfold_split: k must be at least 2");
  if (k > g.num_interactions()) {
    throw SplitError("kfold_split: k=" + std::to_string(k) + " exceeds " +
                     std::to_string(g.num_interactions()) + " interactions");
  }
  const auto all = shuffled_interactions(g, seed);
  std::vector<std::vector<Interaction>> test(k), train(k);
  for (std::size_t p = 0; p < all.size(); ++p) {
    const Index fold = p % k;
    for (Index f = 0; f < k; ++f) (f == fold ? test[f] : train[f]).push_back(all[p]);
  }
  std::vector<FoldSplit> folds;
  folds.reserve(k);
  for (Index f = 0; f < k; ++f) {
    std::sort(test[f].begin(), test[f].end());
    folds.push_back({InteractionGraph::from_pairs(g.users, g.items, train[f]), std::move(test[f]),
                     f, seed});
  }
  return folds;
}

FoldSplit holdout_split(const InteractionGraph& g, double fraction, std::uint64_t seed) {
  if (fraction < 0.0 || fraction >= 1.0) throw DomainError("holdout fraction must be in [0, 1)");
  const auto all = shuffled_interactions(g, seed);
  const auto n_held = static_cast<std::size_t>(fraction * static_cast<double>(all.size()));
  std::vector<Interaction> held(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_held));
  std::vector<Interaction> kept(all.begin() + static_cast<std::ptrdiff_t>(n_held), all.end());
  std::sort(held.begin(), held.end());
  return {InteractionGraph::from_pairs(g.users, g.items, kept), std::move(held), 0, seed};
}

}  // namespace sept
