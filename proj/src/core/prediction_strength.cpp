#include "sparseclust/prediction_strength.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "sparseclust/error.hpp"
#include "sparseclust/kmeans.hpp"
#include "sparseclust/parallel.hpp"
#include "sparseclust/rng.hpp"
#include "sparseclust/sparse_kmeans.hpp"

namespace sparseclust {

namespace {

struct SplitRows {
  std::vector<int> train;
  std::vector<int> test;
};

SplitRows split_rows(int n, std::uint64_t seed, int split_index) {
  Rng rng(derive_seed(seed, {seed_tag::split,
                             static_cast<std::uint64_t>(split_index)}));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    int j = rng.uniform_index(i + 1);
    std::swap(perm[i], perm[j]);
  }
  SplitRows rows;
  int half = n / 2;
  rows.train.assign(perm.begin(), perm.begin() + half);
  rows.test.assign(perm.begin() + half, perm.end());
  std::sort(rows.train.begin(), rows.train.end());
  std::sort(rows.test.begin(), rows.test.end());
  return rows;
}

// Worst per-cluster proportion of test pairs that stay together under the
// train-side assignment.  `test_labels` come from the test-side fit,
// `cross_labels` from assigning test rows to train centroids.
double split_strength(const std::vector<int>& test_labels, int k,
                      const std::vector<int>& cross_labels) {
  int n = static_cast<int>(test_labels.size());
  double worst = 1.0;
  bool any = false;
  for (int c = 0; c < k; ++c) {
    long long pairs = 0, kept = 0;
    for (int i = 0; i < n; ++i) {
      if (test_labels[i] != c) continue;
      for (int j = i + 1; j < n; ++j) {
        if (test_labels[j] != c) continue;
        ++pairs;
        kept += cross_labels[i] == cross_labels[j];
      }
    }
    if (pairs == 0) continue;  // singleton or empty: proportion undefined
    any = true;
    worst = std::min(worst, static_cast<double>(kept) / pairs);
  }
  return any ? worst : 1.0;
}

PsValue summarize(const std::vector<double>& values) {
  PsValue out;
  int s = static_cast<int>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= s;
  if (s > 1) {
    double var = 0.0;
    for (double v : values) {
      double d = v - out.mean;
      var += d * d;
    }
    out.se = std::sqrt(var / (s - 1)) / std::sqrt(static_cast<double>(s));
  }
  return out;
}

std::vector<double> cluster_means(const DataMatrix& x,
                                  const std::vector<int>& labels, int k) {
  std::vector<double> centroids(static_cast<std::size_t>(k) * x.p, 0.0);
  std::vector<int> sizes(k, 0);
  for (int i = 0; i < x.n; ++i) {
    int c = labels[i];
    ++sizes[c];
    const double* src = x.row(i);
    double* dst = centroids.data() + static_cast<std::size_t>(c) * x.p;
    for (int j = 0; j < x.p; ++j) dst[j] += src[j];
  }
  for (int c = 0; c < k; ++c) {
    double* dst = centroids.data() + static_cast<std::size_t>(c) * x.p;
    for (int j = 0; j < x.p; ++j) dst[j] /= sizes[c];
  }
  return centroids;
}

void validate_ps_inputs(const DataMatrix& x, int k, const PsOptions& options) {
  if (options.n_splits < 2) {
    throw Error::validation("prediction strength needs >= 2 splits, got " +
                            std::to_string(options.n_splits));
  }
  if (k < 1 || k > x.n / 2) {
    throw Error::validation("k=" + std::to_string(k) +
                            " must be in [1, n/2=" + std::to_string(x.n / 2) +
                            "] so both halves can be clustered");
  }
}

}  // namespace

PsValue prediction_strength(const DataMatrix& x, int k,
                            const PsOptions& options) {
  validate_ps_inputs(x, k, options);
  std::vector<double> values(options.n_splits);
  parallel_for(options.n_splits, options.threads, [&](int s) {
    SplitRows rows = split_rows(x.n, options.seed, s);
    DataMatrix xtr = x.rows_subset(rows.train);
    DataMatrix xte = x.rows_subset(rows.test);
    KMeansOptions ko;
    ko.restarts = options.restarts;
    ko.seed = derive_seed(options.seed, {seed_tag::split,
                                         static_cast<std::uint64_t>(s), 0});
    KMeansFit train = kmeans(xtr, k, {}, ko);
    ko.seed = derive_seed(options.seed, {seed_tag::split,
                                         static_cast<std::uint64_t>(s), 1});
    KMeansFit test = kmeans(xte, k, {}, ko);
    std::vector<int> cross = assign(xte, train.centroids, k);
    values[s] = split_strength(test.partition.labels, k, cross);
  });
  return summarize(values);
}

PsKResult ps_select_k(const DataMatrix& x, int k_min, int k_max,
                      const PsOptions& options) {
  int lo = std::max(2, k_min);
  if (k_min > k_max || lo > k_max) {
    throw Error::validation("cluster-count range [" + std::to_string(k_min) +
                            ", " + std::to_string(k_max) + "] is invalid");
  }
  PsKResult result;
  for (int k = lo; k <= k_max; ++k) {
    PsValue v = prediction_strength(x, k, options);
    result.k_values.push_back(k);
    result.strength.push_back(v.mean);
    result.se.push_back(v.se);
  }
  int best = 0;
  bool any_clustered = false;
  for (std::size_t i = 0; i < result.strength.size(); ++i) {
    if (result.strength[i] > result.strength[best]) {
      best = static_cast<int>(i);  // ties -> smaller k
    }
    any_clustered = any_clustered ||
                    result.strength[i] + result.se[i] >= options.threshold;
  }
  result.k_hat = any_clustered ? result.k_values[best] : 1;
  return result;
}

SparsePsValue sparse_prediction_strength(const DataMatrix& x, int k,
                                         double lambda,
                                         const PsOptions& options,
                                         int sparse_restarts) {
  validate_ps_inputs(x, k, options);
  std::vector<double> values(options.n_splits);
  std::vector<double> precisions(options.n_splits, -1.0);  // -1 = undefined
  parallel_for(options.n_splits, options.threads, [&](int s) {
    SplitRows rows = split_rows(x.n, options.seed, s);
    DataMatrix xtr = x.rows_subset(rows.train);
    DataMatrix xte = x.rows_subset(rows.test);
    SparseKMeansOptions sko;
    sko.restarts = sparse_restarts;
    sko.seed = derive_seed(options.seed, {seed_tag::split,
                                          static_cast<std::uint64_t>(s), 0});
    SparseFit train = sparse_kmeans(xtr, k, lambda, sko);
    sko.seed = derive_seed(options.seed, {seed_tag::split,
                                          static_cast<std::uint64_t>(s), 1});
    SparseFit test = sparse_kmeans(xte, k, lambda, sko);

    // Train centroids in the full feature space; assignment distances use the
    // train-side weights.
    std::vector<double> centroids =
        cluster_means(xtr, train.partition.labels, k);
    std::vector<int> cross = assign(xte, centroids, k, train.weights);
    values[s] = split_strength(test.partition.labels, k, cross);

    int test_count = test.mask.count();
    if (test_count > 0) {
      int both = 0;
      for (int j = 0; j < x.p; ++j) both += test.mask[j] && train.mask[j];
      precisions[s] = static_cast<double>(both) / test_count;
    }
  });
  PsValue v = summarize(values);
  SparsePsValue out;
  out.ps = v.mean;
  out.ps_se = v.se;
  double mass = 0.0;
  int defined = 0;
  for (double p : precisions) {
    if (p >= 0.0) {
      mass += p;
      ++defined;
    }
  }
  if (defined > 0) out.f_ps = mass / defined;
  return out;
}

SelectionReport ps_joint_select(const DataMatrix& x, int k_min, int k_max,
                                const std::vector<LambdaGrid>& grids,
                                const SelectionOptions& options) {
  auto start = std::chrono::steady_clock::now();
  int lo = std::max(2, k_min);
  if (k_min > k_max || lo > k_max) {
    throw Error::validation("cluster-count range [" + std::to_string(k_min) +
                            ", " + std::to_string(k_max) + "] is invalid");
  }
  if (options.n_splits < 2) {
    throw Error::validation("prediction strength needs >= 2 splits, got " +
                            std::to_string(options.n_splits));
  }

  SelectionReport report;
  report.method = SelectionMethod::ps_joint;
  report.seed = options.seed;
  for (int k = lo; k <= k_max; ++k) {
    const LambdaGrid* grid = nullptr;
    for (const auto& g : grids) {
      if (g.k == k) grid = &g;
    }
    if (!grid || grid->lambdas.empty()) {
      throw Error::validation("no penalty grid for k=" + std::to_string(k));
    }
    for (double lambda : grid->lambdas) {
      CellScore cell;
      cell.k = k;
      cell.lambda = lambda;
      report.table.push_back(cell);
    }
  }
  int n_cells = static_cast<int>(report.table.size());
  int n_splits = options.n_splits;

  // The same halves serve every cell, and the opening unweighted fit of each
  // half depends only on k, so it is computed once per (split, k) and shared
  // across the penalty bounds of that row.
  std::vector<std::vector<double>> strength(n_splits,
                                            std::vector<double>(n_cells));
  std::vector<std::vector<double>> precision(
      n_splits, std::vector<double>(n_cells, -1.0));
  parallel_for(n_splits, options.threads, [&](int s) {
    SplitRows rows = split_rows(x.n, options.seed, s);
    DataMatrix xtr = x.rows_subset(rows.train);
    DataMatrix xte = x.rows_subset(rows.test);
    std::uint64_t tr_seed = derive_seed(options.seed,
                                        {seed_tag::split,
                                         static_cast<std::uint64_t>(s), 0});
    std::uint64_t te_seed = derive_seed(options.seed,
                                        {seed_tag::split,
                                         static_cast<std::uint64_t>(s), 1});
    int cursor = 0;
    for (int k = lo; k <= k_max; ++k) {
      KMeansFit utr = uniform_first_fit(xtr, k, options.subsample_restarts,
                                        tr_seed);
      KMeansFit ute = uniform_first_fit(xte, k, options.subsample_restarts,
                                        te_seed);
      while (cursor < n_cells && report.table[cursor].k == k) {
        double lambda = report.table[cursor].lambda;
        SparseKMeansOptions sko;
        sko.restarts = options.subsample_restarts;
        sko.inner_restarts = options.inner_restarts;
        sko.seed = tr_seed;
        sko.first_fit = &utr;
        SparseFit train = sparse_kmeans(xtr, k, lambda, sko);
        sko.seed = te_seed;
        sko.first_fit = &ute;
        SparseFit test = sparse_kmeans(xte, k, lambda, sko);

        std::vector<double> centroids =
            cluster_means(xtr, train.partition.labels, k);
        std::vector<int> cross = assign(xte, centroids, k, train.weights);
        strength[s][cursor] =
            split_strength(test.partition.labels, k, cross);
        int test_count = test.mask.count();
        if (test_count > 0) {
          int both = 0;
          for (int j = 0; j < x.p; ++j) both += test.mask[j] && train.mask[j];
          precision[s][cursor] = static_cast<double>(both) / test_count;
        }
        ++cursor;
      }
    }
  });
  for (int c = 0; c < n_cells; ++c) {
    std::vector<double> values(n_splits);
    for (int s = 0; s < n_splits; ++s) values[s] = strength[s][c];
    PsValue v = summarize(values);
    report.table[c].ps = v.mean;
    report.table[c].ps_se = v.se;
    double mass = 0.0;
    int defined = 0;
    for (int s = 0; s < n_splits; ++s) {
      if (precision[s][c] >= 0.0) {
        mass += precision[s][c];
        ++defined;
      }
    }
    if (defined > 0) report.table[c].f_ps = mass / defined;
  }

  // Stage 1: k with maximal strength anywhere in its row (ties -> larger k).
  const CellScore* peak = nullptr;
  for (const auto& cell : report.table) {
    if (!peak || *cell.ps > *peak->ps ||
        (*cell.ps == *peak->ps && cell.k >= peak->k)) {
      peak = &cell;
    }
  }
  report.k_hat = peak->k;
  // Stage 2: lambda within that row by strength + feature agreement.
  const CellScore* choice = nullptr;
  for (const auto& cell : report.table) {
    if (cell.k != report.k_hat || !cell.f_ps) continue;
    double score = *cell.ps + *cell.f_ps;
    if (!choice || score > *choice->ps + *choice->f_ps) choice = &cell;
    // ties -> smaller lambda: strict > keeps the earlier (smaller) entry
  }
  if (!choice) {
    // No cell in the row had a defined feature part; fall back to strength.
    for (const auto& cell : report.table) {
      if (cell.k != report.k_hat) continue;
      if (!choice || *cell.ps > *choice->ps) choice = &cell;
    }
  }
  report.lambda_hat = choice->lambda;

  // Final full-data fit at the chosen cell.
  SparseKMeansOptions sko;
  sko.restarts = options.restarts;
  sko.inner_restarts = options.inner_restarts;
  sko.seed = derive_seed(options.seed, {seed_tag::full_fit,
                                        static_cast<std::uint64_t>(report.k_hat)});
  SparseFit fit = sparse_kmeans(x, report.k_hat, report.lambda_hat, sko);
  report.partition = fit.partition;
  report.mask = fit.mask;
  report.n_selected = fit.n_selected;
  for (auto& cell : report.table) {
    if (cell.k == report.k_hat && cell.lambda == report.lambda_hat) {
      cell.n_selected = fit.n_selected;
    }
  }
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace sparseclust
