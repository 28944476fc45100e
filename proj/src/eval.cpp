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

#include "sept/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace sept {

std::vector<Index> rank_items(const Matrix& users, const Matrix& items, Index user,
                              std::span<const Index> exclude, Index n) {
  if (user >= static_cast<Index>(users.rows())) throw ShapeError("rank_items: user out of range");
  if (n == 0) throw DomainError("rank_items: cutoff must be at least 1");
  const Vector scores = items * users.row(user).transpose();
  std::vector<Index> pool;
  pool.reserve(items.rows());
  std::size_t e = 0;
  for (Index i = 0; i < static_cast<Index>(items.rows()); ++i) {
    while (e < exclude.size() && exclude[e] < i) ++e;
    if (e < exclude.size() && exclude[e] == i) continue;
    pool.push_back(i);
  }
  const Index take = std::min<Index>(n, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(),
                    [&](Index a, Index b) {
                      return scores(a) != scores(b) ? scores(a) > scores(b) : a < b;
                    });
  pool.resize(take);
  return pool;
}

Metrics metrics_at_n(std::span<const Index> recommended, std::span<const Index> relevant,
                     Index n) {
  if (relevant.empty()) throw DomainError("metrics_at_n: empty relevant set");
  if (n == 0) throw DomainError("metrics_at_n: cutoff must be at least 1");
  std::vector<Index> rel(relevant.begin(), relevant.end());
  std::sort(rel.begin(), rel.end());
  Index hits = 0;
  double dcg = 0.0;
  const Index depth = std::min<Index>(n, recommended.size());
  for (Index pos = 0; pos < depth; ++pos) {
    if (std::binary_search(rel.begin(), rel.end(), recommended[pos])) {
      ++hits;
      dcg += 1.0 / std::log2(static_cast<double>(pos) + 2.0);
    }
  }
  double idcg = 0.0;
  for (Index pos = 0; pos < std::min<Index>(n, rel.size()); ++pos) {
    idcg += 1.0 / std::log2(static_cast<double>(pos) + 2.0);
  }
  return {static_cast<double>(hits) / static_cast<double>(n),
          static_cast<double>(hits) / static_cast<double>(rel.size()), dcg / idcg};
}

Metrics evaluate(const Matrix& users, const Matrix& items, const InteractionGraph& train,
                 std::span<const Interaction> held_out, Index n) {
  std::vector<std::vector<Index>> relevant(train.num_users());
  for (const auto& [u, i] : held_out) relevant.at(u).push_back(i);
  Metrics sum;
  Index counted = 0;
  for (Index u = 0; u < train.num_users(); ++u) {
    if (relevant[u].empty()) continue;
    const auto rec = rank_items(users, items, u, train.items_of(u), n);
    const auto m = metrics_at_n(rec, relevant[u], n);
    sum.precision += m.precision;
    sum.recall += m.recall;
    sum.ndcg += m.ndcg;
    ++counted;
  }
  if (counted == 0) return {};
  const double c = static_cast<double>(counted);
  return {sum.precision / c, sum.recall / c, sum.ndcg / c};
}

void write_report(const EvalReport& report, std::ostream& out) {
  const auto row = [&](const std::string& label, const Metrics& m) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s\t%.3f\t%.3f\t%.3f\n", label.c_str(), m.precision,
                  m.recall, m.ndcg);
    out << buf;
  };
  const std::string n = std::to_string(report.n);
  out << "fold\tprecision@" << n << "\trecall@" << n << "\tndcg@" << n << '\n';
  for (std::size_t f = 0; f < report.per_fold.size(); ++f) row(std::to_string(f), report.per_fold[f]);
  row("mean", report.mean);
}

std::string format_report(const EvalReport& report) {
  std::ostringstream s;
  write_report(report, s);
  return s.str();
}

}  // namespace sept
