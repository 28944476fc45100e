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

// Acceptance gate. Prints one PASS/FAIL line per criterion.
//
//   acceptance                 criteria 1-6, 8, 9
//   acceptance --criterion N   one criterion; 7 exits 77 without the Last.fm data

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sept/data.hpp"
#include "sept/encoder.hpp"
#include "sept/eval.hpp"
#include "sept/runtime.hpp"
#include "sept/sparse.hpp"
#include "sept/ssl.hpp"
#include "sept/training.hpp"
#include "sept/views.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace sept;

namespace {

constexpr int kSkip = 77;

struct Outcome {
  enum Status { pass, fail, skip } status = fail;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

SparseMatrix to_sparse(const Matrix& m) { return SparseMatrix::from_dense(m); }

// 1. Sparse algebra against dense brute force.
Outcome sparse_oracles() {
  const auto t0 = Clock::now();
  Rng rng(1001);
  const char* names[] = {"spmm", "spmm_transposed", "spsp", "hadamard", "transpose", "sym_normalize"};
  double worst_real = 0.0;
  for (int op = 0; op < 6; ++op) {
    for (int trial = 0; trial < 1000; ++trial) {
      const bool integer = trial % 2 == 0;
      const Index r = 1 + rng.uniform_index(50), k = 1 + rng.uniform_index(50),
                  c = 1 + rng.uniform_index(50);
      const double density = 0.5 * rng.uniform01();
      Matrix got, want;
      switch (op) {
        case 0: {
          const Matrix a = testing::random_dense(rng, r, k, density, integer);
          const Matrix x = testing::random_dense(rng, k, c, 1.0, integer);
          got = spmm(to_sparse(a), x);
          want = testing::dense_matmul(a, x);
          break;
        }
        case 1: {
          const Matrix a = testing::random_dense(rng, k, r, density, integer);
          const Matrix x = testing::random_dense(rng, k, c, 1.0, integer);
          got = spmm_transposed(to_sparse(a), x);
          want = testing::dense_matmul(testing::dense_transpose(a), x);
          break;
        }
        case 2: {
          const Matrix a = testing::random_dense(rng, r, k, density, integer);
          const Matrix b = testing::random_dense(rng, k, c, density, integer);
          got = spsp(to_sparse(a), to_sparse(b)).to_dense();
          want = testing::dense_matmul(a, b);
          break;
        }
        case 3: {
          const Matrix a = testing::random_dense(rng, r, c, density, integer);
          const Matrix b = testing::random_dense(rng, r, c, density, integer);
          got = hadamard(to_sparse(a), to_sparse(b)).to_dense();
          want = testing::dense_hadamard(a, b);
          break;
        }
        case 4: {
          const Matrix a = testing::random_dense(rng, r, c, density, integer);
          got = transpose(to_sparse(a)).to_dense();
          want = testing::dense_transpose(a);
          break;
        }
        case 5: {
          // Symmetric, non-negative; integer inputs still give irrational outputs.
          const Matrix half = testing::random_dense(rng, r, r, density / 2.0, true);
          const Matrix a = half + testing::dense_transpose(half);
          got = sym_normalize(to_sparse(a)).to_dense();
          want = Matrix::Zero(r, r);
          for (Index i = 0; i < r; ++i) {
            for (Index j = 0; j < r; ++j) {
              if (a(i, j) == 0.0) continue;
              want(i, j) = a(i, j) / std::sqrt(a.row(i).sum() * a.row(j).sum());
            }
          }
          break;
        }
      }
      const bool exact = integer && op != 5;
      const double err = testing::max_rel_error(got, want);
      if (exact ? !(got == want) : !(err <= 1e-12)) {
        return {Outcome::fail, std::string(names[op]) + " mismatch on trial " + std::to_string(trial) +
                                   fmt(" (rel err %.3g)", err)};
      }
      if (!exact) worst_real = std::max(worst_real, err);
    }
  }
  const double secs = seconds_since(t0);
  return {secs < 60.0 ? Outcome::pass : Outcome::fail,
          fmt("6 ops x 1000 instances, integer exact, worst real rel err %.2g, %.1f s", worst_real,
              secs)};
}

// 2. Augmented views against triangle and co-purchase enumeration.
Outcome augmentation_oracles() {
  Rng rng(1002);
  Index compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = 2 + rng.uniform_index(29), n = 1 + rng.uniform_index(30);
    const auto social = testing::random_social_sets(rng, m, rng.uniform01());
    std::vector<std::set<Index>> items(m);
    for (Index u = 0; u < m; ++u) {
      for (Index i = 0; i < n; ++i) {
        if (rng.uniform01() < 0.3) items[u].insert(i);
      }
    }
    const auto views = augment_views(testing::sets_to_matrix(items, n), testing::sets_to_matrix(social, m));
    for (Index u = 0; u < m; ++u) {
      for (Index v = 0; v < m; ++v) {
        ++compared;
        if (views.friend_raw.at(u, v) != testing::triangle_count(social, u, v) ||
            views.sharing_raw.at(u, v) != testing::copurchase_count(social, items, u, v)) {
          return {Outcome::fail, "graph " + std::to_string(trial) + " entry (" + std::to_string(u) +
                                     "," + std::to_string(v) + ") differs"};
        }
      }
    }
  }
  return {Outcome::pass, "200 graphs, " + std::to_string(compared) + " entries per view exact"};
}

// Shared toy instance for the gradient and reduction checks.
struct Toy {
  Index m = 4, n = 5;
  InteractionGraph graph = InteractionGraph::from_pairs(
      IdMap::sequential(4), IdMap::sequential(5),
      {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 4}, {0, 4}, {1, 0}});
  SocialNetwork social = SocialNetwork::from_pairs(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}});
};

// 3. Central finite differences for every differentiable piece.
Outcome gradient_suite() {
  const auto t0 = Clock::now();
  Rng rng(1003);
  Toy toy;
  const ViewSet views = build_views(toy.graph.r, toy.social.s);
  const SparseMatrix perturbed = perturb(build_joint(toy.graph.r, toy.social.s), 0.3, 5).adjacency;
  const Index m = toy.m, n = toy.n, d = 3;
  const double eps = 1e-6;
  double worst_individual = 0.0;

  // Encoder, on every view it is used with.
  for (const SparseMatrix* view : {&views.preference, &views.friends, &views.sharing, &perturbed}) {
    const Index rows = static_cast<Index>(view->rows());
    const Matrix e = testing::random_full(rng, m + n, d);
    const Matrix w = testing::random_full(rng, rows, d);
    const auto f = [&](const Matrix& x) { return encode(x, *view, 2).z.cwiseProduct(w).sum(); };
    // The backward pass covers the slice the view consumes; other rows get zero.
    Matrix g = Matrix::Zero(m + n, d);
    g.topRows(rows) = encode_backward(encode(e, *view, 2), w, *view);
    worst_individual = std::max(worst_individual,
                                testing::gradient_rel_error(g, testing::numeric_gradient(f, e, eps)));
  }

  // BPR with regularization.
  {
    const Matrix p = testing::random_full(rng, m, d), q = testing::random_full(rng, n, d);
    const Matrix e = testing::random_full(rng, m + n, d);
    BprBatch batch;
    for (int t = 0; t < 6; ++t) {
      batch.push_back({rng.uniform_index(m), rng.uniform_index(n), rng.uniform_index(n)});
    }
    const auto res = bpr_loss(p, q, e, batch, 0.001);
    const auto fp = [&](const Matrix& x) { return bpr_loss(x, q, e, batch, 0.001).loss; };
    const auto fq = [&](const Matrix& x) { return bpr_loss(p, x, e, batch, 0.001).loss; };
    const auto fe = [&](const Matrix& x) { return bpr_loss(p, q, x, batch, 0.001).loss; };
    for (const double err :
         {testing::gradient_rel_error(res.grad_users, testing::numeric_gradient(fp, p, eps)),
          testing::gradient_rel_error(res.grad_items, testing::numeric_gradient(fq, q, eps)),
          testing::gradient_rel_error(res.grad_embeddings, testing::numeric_gradient(fe, e, eps))}) {
      worst_individual = std::max(worst_individual, err);
    }
  }

  // InfoNCE with multiple positives and a masked candidate.
  {
    const Index batch = 3, c = 6;
    const Matrix z = testing::random_full(rng, batch, d);
    const Matrix cand = testing::random_full(rng, c, d);
    LabelSet labels;
    for (Index j = 0; j < c; ++j) labels.candidate_indices.push_back(j);
    labels.positives = {{0, 3}, {1}, {5, 2}};
    labels.masked = {{}, {4}, {}};
    const auto res = infonce(z, cand, labels, 0.5);
    const auto fz = [&](const Matrix& x) { return infonce(x, cand, labels, 0.5).loss; };
    const auto fc = [&](const Matrix& x) { return infonce(z, x, labels, 0.5).loss; };
    worst_individual = std::max(
        {worst_individual, testing::gradient_rel_error(res.grad_z, testing::numeric_gradient(fz, z, eps)),
         testing::gradient_rel_error(res.grad_candidates, testing::numeric_gradient(fc, cand, eps))});
  }

  // Joint objective with labels frozen at the evaluation point.
  double worst_joint = 0.0;
  TrainingConfig config;
  config.dim = d;
  config.layers = 1;
  config.c = 4;
  config.k = 2;
  config.beta = 0.7;
  config.lambda = 0.01;
  config.tau = 0.5;
  for (bool self_disc : {false, true}) {
    config.self_discrimination = self_disc;
    Rng brng(7);
    const auto batch = sample_bpr_batch(toy.graph, 6, brng);
    const auto users = batch_users_of(batch);
    const std::vector<Index> sampled = {0, 1, 2, 3};
    const Matrix e = testing::random_full(rng, m + n, d);
    const auto enc = encode_all(e, views, &perturbed, config);
    const auto labels = make_labels(enc, users, sampled, config);
    const auto res = joint_objective(e, m, views, &perturbed, enc, batch, users, labels, config);
    const auto f = [&](const Matrix& x) {
      return joint_objective(x, m, views, &perturbed, encode_all(x, views, &perturbed, config), batch,
                             users, labels, config)
          .total;
    };
    worst_joint = std::max(worst_joint, testing::gradient_rel_error(res.grad, testing::numeric_gradient(f, e, eps)));
  }

  const double secs = seconds_since(t0);
  const bool ok = worst_individual < 1e-5 && worst_joint < 1e-4 && secs < 60.0;
  return {ok ? Outcome::pass : Outcome::fail,
          fmt("worst rel err: individual %.2g, joint %.2g, %.2f s", worst_individual, worst_joint, secs)};
}

// 4. beta = 0 reproduces LightGCN + BPR bit for bit.
Outcome beta_zero_reduction() {
  // 5 users, 8 items, 12 interactions, a friend triangle.
  const auto g = InteractionGraph::from_pairs(
      IdMap::sequential(5), IdMap::sequential(8),
      {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {4, 7}});
  const auto s = SocialNetwork::from_pairs(5, {{0, 1}, {1, 2}, {0, 2}});
  TrainingConfig sept;
  sept.dim = 8;
  sept.batch_size = 4;
  sept.c = 5;
  sept.k = 2;
  sept.lr = 0.01;
  sept.val_fraction = 0.0;
  sept.seed = 2024;
  sept.beta = 0.0;
  sept.warmup_epochs = 2;
  sept.max_epochs = 20;
  TrainingConfig lightgcn = sept;
  lightgcn.beta = 0.005;
  lightgcn.warmup_epochs = lightgcn.max_epochs;  // the self-supervised stage never starts
  const auto a = train(sept, g, s);
  const auto b = train(lightgcn, g, s);
  const bool logs = format_log(a.log) == format_log(b.log) && a.log.size() == 20;
  const bool weights = a.embeddings.e.size() == b.embeddings.e.size() &&
                       std::memcmp(a.embeddings.e.data(), b.embeddings.e.data(),
                                   sizeof(double) * a.embeddings.e.size()) == 0;
  return {logs && weights ? Outcome::pass : Outcome::fail,
          std::string("20 epoch logs ") + (logs ? "identical" : "differ") + ", embeddings " +
              (weights ? "identical" : "differ")};
}

// 5. Own row most similar under both auxiliary views: the label is the user.
Outcome self_discrimination_degeneracy() {
  Rng rng(1005);
  const Index m = 12, d = 6;
  TrainingConfig config;
  config.k = 1;
  Encodings enc;
  enc.perturbed.z = testing::random_full(rng, m, d);
  enc.preference.z = testing::random_full(rng, m + 7, d);
  enc.friends.z = testing::random_full(rng, m, d);
  enc.sharing.z = testing::random_full(rng, m, d);
  const std::vector<Index> batch = {1, 4, 9};
  const std::vector<Index> sampled = {0, 1, 3, 4, 6, 9, 11};
  for (const Index u : batch) {
    enc.friends.z.row(u) = 2.0 * enc.perturbed.z.row(u);
    enc.sharing.z.row(u) = 0.3 * enc.perturbed.z.row(u);
  }
  const auto labels = make_labels(enc, batch, sampled, config);
  const LabelSet& pref = labels.at(0);
  if (pref.view != ViewTag::preference) return {Outcome::fail, "first label set is not the preference view"};
  for (std::size_t b = 0; b < batch.size(); ++b) {
    if (pref.positives[b].size() != 1 || pref.candidate_indices[pref.positives[b][0]] != batch[b]) {
      return {Outcome::fail, "user " + std::to_string(batch[b]) + " was not its own label"};
    }
  }
  return {Outcome::pass, "K=1 positive is the user itself for all 3 batch users"};
}

// 6. Edge dropout keeps about 1 - rho of the edges and never invents one.
Outcome dropout_statistics() {
  Rng rng(1006);
  const Index m = 400, n = 600;
  std::set<std::pair<Index, Index>> inter, social;
  while (inter.size() < 8000) inter.insert({rng.uniform_index(m), rng.uniform_index(n)});
  while (social.size() < 2000) {
    Index a = rng.uniform_index(m), b = rng.uniform_index(m);
    if (a == b) continue;
    social.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<Triplet> rt, st;
  for (const auto& [u, i] : inter) rt.push_back({u, i, 1.0});
  for (const auto& [a, b] : social) {
    st.push_back({a, b, 1.0});
    st.push_back({b, a, 1.0});
  }
  const SparseMatrix joint = build_joint(SparseMatrix::from_triplets(m, n, rt),
                                         SparseMatrix::from_triplets(m, m, st));
  const double edges = static_cast<double>(joint.nnz()) / 2.0;
  if (edges != 10000.0) return {Outcome::fail, "fixture does not have 10000 edges"};
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SparseMatrix p = perturb(joint, 0.3, seed).adjacency;
    for (Index r = 0; r < p.rows(); ++r) {
      for (const Index c : p.row_cols(r)) {
        if (joint.at(r, c) == 0.0 || p.at(c, r) == 0.0) {
          return {Outcome::fail, "seed " + std::to_string(seed) + " produced a foreign or one-way edge"};
        }
      }
    }
    total += static_cast<double>(p.nnz()) / 2.0 / edges;
  }
  const double mean = total / 100.0;
  return {mean >= 0.695 && mean <= 0.705 ? Outcome::pass : Outcome::fail,
          fmt("mean kept fraction %.5f over 100 seeds, all subsets", mean)};
}

// 7. Last.fm, five folds, baseline and full model from the same seed.
Outcome lastfm_reproduction() {
  const char* dir_env = std::getenv("SEPT_LASTFM_DIR");
  const fs::path dir = dir_env ? fs::path(dir_env) : fs::path(SEPT_SOURCE_DIR) / "data" / "lastfm";
  const fs::path ratings = dir / "user_artists.dat", trust = dir / "user_friends.dat";
  if (!fs::exists(ratings) || !fs::exists(trust)) {
    return {Outcome::skip, "Last.fm data not found in " + dir.string() +
                               " (user_artists.dat, user_friends.dat; set SEPT_LASTFM_DIR)"};
  }
  const auto t0 = Clock::now();
  const ReadOptions header{true};
  const auto g = load_interactions(ratings, std::nullopt, header);
  const auto s = load_social(trust, g.users, header);

  TrainingConfig config;
  config.dim = 50;
  config.layers = 2;
  config.lambda = 0.001;
  config.lr = 0.001;
  config.batch_size = 2000;
  config.tau = 0.1;
  config.rho = 0.3;
  config.k = 10;
  config.top_n = 10;
  TrainingConfig baseline = config;
  baseline.beta = 0.0;
  config.beta = 0.005;

  const auto base = cross_validate(baseline, g, s, 5);
  std::cerr << "baseline\n" << format_report(base);
  const auto full = cross_validate(config, g, s, 5);
  std::cerr << "full model\n" << format_report(full);
  const double hours = seconds_since(t0) / 3600.0;

  const bool a = base.mean.precision >= 18.2 && base.mean.precision <= 20.2 &&
                 base.mean.recall >= 18.5 && base.mean.recall <= 20.5;
  const double rel = (full.mean.recall - base.mean.recall) / base.mean.recall;
  const bool b = full.mean.precision > base.mean.precision && full.mean.recall > base.mean.recall &&
                 full.mean.ndcg > base.mean.ndcg && rel >= 0.02;
  std::ostringstream detail;
  detail << fmt("baseline P@10 %.3f R@10 %.3f", base.mean.precision, base.mean.recall)
         << fmt(", full P@10 %.3f R@10 %.3f N@10 %.3f", full.mean.precision, full.mean.recall,
                full.mean.ndcg)
         << fmt(" vs %.3f", base.mean.ndcg) << fmt(", recall +%.2f%%, %.2f h", 100.0 * rel, hours)
         << (a ? "" : " [baseline out of band]") << (b ? "" : " [no required improvement]");
  return {a && b ? Outcome::pass : Outcome::fail, detail.str()};
}

// 8. Hand-computed metric fixtures.
Outcome metric_fixtures() {
  struct Fixture {
    std::vector<Index> rec;
    std::vector<Index> rel;
    Index n;
    double p, r, ndcg;
  };
  const auto d = [](double rank) { return 1.0 / std::log2(rank + 1.0); };
  const double idcg2 = 1.0 + d(2), idcg3 = idcg2 + d(3), idcg5 = idcg3 + d(4) + d(5);
  const std::vector<Index> ten = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const std::vector<Fixture> fixtures = {
      {{1, 2, 3}, {2}, 3, 1.0 / 3, 1.0, 1.0 / std::log2(3.0)},
      {{1, 2, 3}, {1}, 3, 1.0 / 3, 1.0, 1.0},
      {{1, 2, 3}, {3}, 3, 1.0 / 3, 1.0, 0.5},
      {{1, 2, 3}, {1, 2, 3}, 3, 1.0, 1.0, 1.0},
      {{1, 2, 3}, {4}, 3, 0.0, 0.0, 0.0},
      {{1, 2, 3}, {1, 3}, 3, 2.0 / 3, 1.0, 1.5 / idcg2},
      {{1, 2, 3}, {2, 3}, 3, 2.0 / 3, 1.0, (d(2) + 0.5) / idcg2},
      {{1, 2, 3, 4, 5}, {5}, 5, 0.2, 1.0, d(5)},
      {{1, 2, 3, 4, 5}, {1, 9}, 5, 0.2, 0.5, 1.0 / idcg2},
      {{1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}, 5, 0.0, 0.0, 0.0},
      {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5, 6}, 5, 1.0, 5.0 / 6, 1.0},
      {{1}, {1}, 1, 1.0, 1.0, 1.0},
      {{1}, {2}, 1, 0.0, 0.0, 0.0},
      {{1, 2}, {2}, 10, 0.1, 1.0, d(2)},
      {ten, {9}, 10, 0.1, 1.0, d(10)},
      {ten, {0, 9}, 10, 0.2, 1.0, (1.0 + d(10)) / idcg2},
      {ten, {1, 3, 5, 7, 9}, 10, 0.5, 1.0, (d(2) + d(4) + d(6) + d(8) + d(10)) / idcg5},
      {ten, {0, 2, 4, 20, 21}, 10, 0.3, 0.6, (1.0 + d(3) + d(5)) / idcg5},
      {{3, 1, 2}, {1, 2, 5, 6}, 3, 2.0 / 3, 0.5, (d(2) + d(3)) / idcg3},
      {{0, 1, 2, 3, 4}, {4, 0}, 5, 0.4, 1.0, (1.0 + d(5)) / idcg2},
  };
  double worst = 0.0;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const auto& x = fixtures[f];
    const auto m = metrics_at_n(x.rec, x.rel, x.n);
    worst = std::max({worst, std::abs(m.precision - x.p), std::abs(m.recall - x.r),
                      std::abs(m.ndcg - x.ndcg)});
    if (worst > 1e-12) return {Outcome::fail, "fixture " + std::to_string(f) + fmt(" off by %.3g", worst)};
  }
  return {Outcome::pass, fmt("%.0f fixtures, worst abs err %.2g", fixtures.size(), worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. Two `train` invocations of the command-line tool agree byte for byte.
Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "sept_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto data = testing::make_synthetic(60, 90, 4, 8, 0.2, 1009);
  testing::write_synthetic(data, dir / "ratings.txt", dir / "trust.txt");
  std::ofstream(dir / "run.cfg") << "ratings_path = ratings.txt\ntrust_path = trust.txt\n"
                                    "dim = 16\nmax_epochs = 8\nwarmup_epochs = 2\nbatch_size = 128\n"
                                    "c = 30\nk = 3\nbeta = 0.05\nseed = 17\n";
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string("\"") + SEPT_CLI_PATH + "\" train --config \"" +
                            (dir / "run.cfg").string() + "\" --out \"" + (dir / run).string() +
                            "\" 2> \"" + (dir / run).string() + ".stderr\"";
    if (std::system(cmd.c_str()) != 0) return {Outcome::fail, std::string("train run ") + run + " failed"};
  }
  bool same = true;
  std::string detail;
  for (const char* f : {"train_log.tsv", "checkpoint.bin", "report.tsv", "config.txt"}) {
    const auto a = slurp(dir / "a" / f), b = slurp(dir / "b" / f);
    const bool eq = !a.empty() && a == b;
    same = same && eq;
    detail += std::string(detail.empty() ? "" : ", ") + f + (eq ? " identical" : " DIFFERS");
  }
  fs::remove_all(dir);
  return {same ? Outcome::pass : Outcome::fail, detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  retain_large_allocations();
  std::optional<int> only;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--criterion") == 0 && a + 1 < argc) {
      only = std::atoi(argv[++a]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "sparse algebra matches dense oracles", sparse_oracles},
      {2, "augmented views match triangle counts", augmentation_oracles},
      {3, "gradients match finite differences", gradient_suite},
      {4, "beta=0 reduces to LightGCN bit for bit", beta_zero_reduction},
      {5, "self-discrimination degeneracy", self_discrimination_degeneracy},
      {6, "edge dropout statistics", dropout_statistics},
      {7, "Last.fm 5-fold reproduction", lastfm_reproduction},
      {8, "metric fixtures", metric_fixtures},
      {9, "train is deterministic", cli_determinism},
  };
  bool failed = false, skipped = false;
  for (const auto& c : criteria) {
    if (only && *only != c.id) continue;
    Outcome o;
    if (!only && c.id == 7) {
      o = {Outcome::skip, "long run; registered separately as acceptance_lastfm"};
    } else {
      try {
        o = c.run();
      } catch (const std::exception& e) {
        o = {Outcome::fail, std::string("exception: ") + e.what()};
      }
    }
    const char* tag = o.status == Outcome::pass ? "PASS" : o.status == Outcome::fail ? "FAIL" : "SKIP";
    std::cout << '[' << tag << "] AC" << c.id << ' ' << c.name << ": " << o.detail << std::endl;
    failed = failed || o.status == Outcome::fail;
    skipped = skipped || o.status == Outcome::skip;
  }
  if (failed) return 1;
  return only && skipped ? kSkip : 0;
}
