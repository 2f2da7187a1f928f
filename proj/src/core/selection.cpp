#include "sparseclust/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <string>

#include "sparseclust/error.hpp"
#include "sparseclust/parallel.hpp"
#include "sparseclust/prediction_strength.hpp"
#include "sparseclust/rng.hpp"
#include "sparseclust/sparse_kmeans.hpp"
#include "sparseclust/stability.hpp"

namespace sparseclust {

std::string selection_method_name(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::s4: return "s4";
    case SelectionMethod::s4_naive_sum: return "s4-naive";
    case SelectionMethod::gap_joint: return "gap";
    case SelectionMethod::ps_joint: return "ps";
  }
  return "?";
}

LambdaGrid build_lambda_grid(const DataMatrix& x, int k, int m, double lambda0,
                             int restarts, std::uint64_t seed,
                             const KMeansFit* first_fit) {
  double sqrt_p = std::sqrt(static_cast<double>(x.p));
  if (m < 1) {
    throw Error::validation("grid needs at least one insertion, got m=" +
                            std::to_string(m));
  }
  if (!(lambda0 >= 1.0) || !(lambda0 < sqrt_p)) {
    throw Error::validation("grid start lambda0=" + std::to_string(lambda0) +
                            " must lie in [1, sqrt(p)=" +
                            std::to_string(sqrt_p) + ")");
  }
  KMeansFit opening;
  if (!first_fit) {
    opening = uniform_first_fit(x, k, restarts, seed);
    first_fit = &opening;
  }
  auto count_at = [&](double lambda) {
    SparseKMeansOptions options;
    options.restarts = restarts;
    options.seed = seed;
    options.first_fit = first_fit;
    return sparse_kmeans(x, k, lambda, options).n_selected;
  };

  std::vector<double> lambdas{lambda0, sqrt_p};
  std::vector<int> counts{count_at(lambda0), count_at(sqrt_p)};
  for (int round = 0; round < m; ++round) {
    std::size_t widest = 0;
    double widest_gap = -1.0;
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
      double gap = std::log(static_cast<double>(counts[i + 1])) -
                   std::log(static_cast<double>(counts[i]));
      if (gap > widest_gap) {
        widest_gap = gap;
        widest = i;
      }
    }
    double fresh = std::sqrt(lambdas[widest] * lambdas[widest + 1]);
    lambdas.insert(lambdas.begin() + widest + 1, fresh);
    counts.insert(counts.begin() + widest + 1, count_at(fresh));
  }

  LambdaGrid grid;
  grid.k = k;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (counts[i] == x.p) continue;  // drop bounds that keep every feature
    // Restart noise can make a fit at a barely-larger bound keep fewer
    // features than its left neighbor; drop such bounds so the published
    // count profile is non-decreasing.
    if (!grid.feature_counts.empty() && counts[i] < grid.feature_counts.back())
      continue;
    grid.lambdas.push_back(lambdas[i]);
    grid.feature_counts.push_back(counts[i]);
  }
  if (grid.lambdas.empty()) {
    throw Error::degenerate(
        "every penalty bound keeps all features; no usable grid at k=" +
        std::to_string(k));
  }
  return grid;
}

std::vector<LambdaGrid> build_grids(const DataMatrix& x, int k_min, int k_max,
                                    const SelectionOptions& options) {
  int lo = std::max(2, k_min);
  if (k_min > k_max || lo > k_max) {
    throw Error::validation("cluster-count range [" + std::to_string(k_min) +
                            ", " + std::to_string(k_max) + "] is invalid");
  }
  int n_k = k_max - lo + 1;
  std::vector<LambdaGrid> grids(n_k);
  parallel_for(n_k, options.threads, [&](int ki) {
    int k = lo + ki;
    std::uint64_t seed = derive_seed(options.seed,
                                     {seed_tag::grid,
                                      static_cast<std::uint64_t>(k)});
    grids[ki] = build_lambda_grid(x, k, options.grid_m, options.lambda0,
                                  options.restarts, seed);
  });
  return grids;
}

namespace {

const LambdaGrid& grid_for(const std::vector<LambdaGrid>& grids, int k) {
  for (const auto& g : grids) {
    if (g.k == k && !g.lambdas.empty()) return g;
  }
  throw Error::validation("no penalty grid for k=" + std::to_string(k));
}

double runtime_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

S4Table compute_s4_table(const DataMatrix& x, int k_min, int k_max,
                         const std::vector<LambdaGrid>& grids,
                         const SelectionOptions& options) {
  auto start = std::chrono::steady_clock::now();
  int lo = std::max(2, k_min);
  if (k_min > k_max || lo > k_max) {
    throw Error::validation("cluster-count range [" + std::to_string(k_min) +
                            ", " + std::to_string(k_max) + "] is invalid");
  }
  SubsamplePlan plan = make_plan(x.n, options.fraction, options.b,
                                 derive_seed(options.seed, {seed_tag::plan}));
  if (k_max > plan.kept_size()) {
    throw Error::validation("k_max=" + std::to_string(k_max) +
                            " exceeds the subsample size " +
                            std::to_string(plan.kept_size()));
  }

  S4Table table;
  table.seed = options.seed;
  struct CellRef {
    int k;
    int ki;  // index into the k range
    double lambda;
  };
  std::vector<CellRef> cells;
  for (int k = lo; k <= k_max; ++k) {
    for (double lambda : grid_for(grids, k).lambdas) {
      cells.push_back({k, k - lo, lambda});
    }
  }
  int n_cells = static_cast<int>(cells.size());
  int n_k = k_max - lo + 1;

  // Full-data sparse fit per cell; the opening unweighted fit is shared
  // within each row because it does not depend on the penalty bound.
  table.partitions.resize(n_cells);
  table.masks.resize(n_cells);
  std::vector<int> full_selected(n_cells);
  parallel_for(n_k, options.threads, [&](int ki) {
    int k = lo + ki;
    std::uint64_t fit_seed = derive_seed(options.seed,
                                         {seed_tag::full_fit,
                                          static_cast<std::uint64_t>(k)});
    KMeansFit opening = uniform_first_fit(x, k, options.restarts, fit_seed);
    for (int c = 0; c < n_cells; ++c) {
      if (cells[c].k != k) continue;
      SparseKMeansOptions sko;
      sko.restarts = options.restarts;
      sko.inner_restarts = options.inner_restarts;
      sko.seed = fit_seed;
      sko.first_fit = &opening;
      SparseFit fit = sparse_kmeans(x, k, cells[c].lambda, sko);
      table.partitions[c] = std::move(fit.partition);
      table.masks[c] = std::move(fit.mask);
      full_selected[c] = fit.n_selected;
    }
  });

  // Subsample sparse fits: task b fills its own slot; the reduction below
  // walks b in order, and the accumulated quantities are exact small
  // integers, so thread count cannot change any score.
  struct SubCell {
    std::vector<int> labels;
    std::vector<std::uint8_t> mask;
  };
  std::vector<std::vector<SubCell>> sub(plan.b());
  parallel_for(plan.b(), options.threads, [&](int rep) {
    DataMatrix xb = x.rows_subset(plan.kept[rep]);
    sub[rep].resize(n_cells);
    for (int ki = 0; ki < n_k; ++ki) {
      int k = lo + ki;
      std::uint64_t fit_seed = derive_seed(options.seed,
                                           {seed_tag::sub_fit,
                                            static_cast<std::uint64_t>(rep),
                                            static_cast<std::uint64_t>(k)});
      KMeansFit opening =
          uniform_first_fit(xb, k, options.subsample_restarts, fit_seed);
      for (int c = 0; c < n_cells; ++c) {
        if (cells[c].k != k) continue;
        SparseKMeansOptions sko;
        sko.restarts = options.subsample_restarts;
        sko.inner_restarts = options.inner_restarts;
        sko.seed = fit_seed;
        sko.first_fit = &opening;
        SparseFit fit = sparse_kmeans(xb, k, cells[c].lambda, sko);
        sub[rep][c].labels = std::move(fit.partition.labels);
        sub[rep][c].mask = std::move(fit.mask.selected);
      }
    }
  });

  std::vector<std::uint16_t> pair_counts = plan.pair_counts();
  std::size_t nn = static_cast<std::size_t>(x.n) * x.n;
  table.cells.resize(n_cells);
  parallel_for(n_cells, options.threads, [&](int c) {
    std::vector<std::uint16_t> together(nn, 0);
    std::vector<int> freq(x.p, 0);
    for (int rep = 0; rep < plan.b(); ++rep) {
      const auto& rows = plan.kept[rep];
      const auto& labels = sub[rep][c].labels;
      for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t d = a; d < rows.size(); ++d) {
          if (labels[a] != labels[d]) continue;
          ++together[static_cast<std::size_t>(rows[a]) * x.n + rows[d]];
          if (d != a) {
            ++together[static_cast<std::size_t>(rows[d]) * x.n + rows[a]];
          }
        }
      }
      const auto& mask = sub[rep][c].mask;
      for (int j = 0; j < x.p; ++j) freq[j] += mask[j] != 0;
    }
    MeanComembership tbar;
    tbar.n = x.n;
    tbar.means.resize(nn);
    tbar.counts.assign(pair_counts.begin(), pair_counts.end());
    for (std::size_t idx = 0; idx < nn; ++idx) {
      tbar.means[idx] = pair_counts[idx] > 0
                            ? static_cast<double>(together[idx]) /
                                  pair_counts[idx]
                            : 0.0;
    }
    ComembershipView t = comembership(table.partitions[c]);
    ConcordanceResult concordance = trimmed_score(t, tbar, options.rho);

    std::vector<double> frequencies(x.p);
    for (int j = 0; j < x.p; ++j) {
      frequencies[j] = static_cast<double>(freq[j]) / plan.b();
    }
    CellScore& cell = table.cells[c];
    cell.k = cells[c].k;
    cell.lambda = cells[c].lambda;
    cell.n_selected = full_selected[c];
    cell.s_rho = concordance.trimmed_score;
    cell.f_score = feature_concordance(table.masks[c], frequencies);
  });
  table.build_seconds = runtime_since(start);
  return table;
}

std::size_t two_stage_choice(const std::vector<CellScore>& cells) {
  if (cells.empty()) {
    throw Error::validation("selection table is empty");
  }
  // Stage 1: the concordance column alone picks k; ties go to the larger k.
  std::size_t peak = 0;
  for (std::size_t c = 1; c < cells.size(); ++c) {
    double s = *cells[c].s_rho;
    double best = *cells[peak].s_rho;
    if (s > best || (s == best && cells[c].k >= cells[peak].k)) peak = c;
  }
  int k_hat = cells[peak].k;
  // Stage 2: concordance + feature score along the chosen row, skipping cells
  // without a defined feature score; strict improvement keeps the smaller
  // lambda on ties.
  std::size_t choice = cells.size();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].k != k_hat || !cells[c].f_score) continue;
    double score = *cells[c].s_rho + *cells[c].f_score;
    if (choice == cells.size() ||
        score > *cells[choice].s_rho + *cells[choice].f_score) {
      choice = c;
    }
  }
  if (choice == cells.size()) {
    // Every cell on the row kept all features; fall back to concordance only.
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].k != k_hat) continue;
      if (choice == cells.size() || *cells[c].s_rho > *cells[choice].s_rho) {
        choice = c;
      }
    }
  }
  return choice;
}

std::size_t naive_sum_choice(const std::vector<CellScore>& cells) {
  if (cells.empty()) {
    throw Error::validation("selection table is empty");
  }
  std::size_t choice = cells.size();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (!cells[c].f_score) continue;
    double score = *cells[c].s_rho + *cells[c].f_score;
    if (choice == cells.size()) {
      choice = c;
      continue;
    }
    double best = *cells[choice].s_rho + *cells[choice].f_score;
    // Ties prefer the larger k; within a row the first (smaller) lambda wins.
    if (score > best || (score == best && cells[c].k > cells[choice].k)) {
      choice = c;
    }
  }
  if (choice == cells.size()) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (choice == cells.size() || *cells[c].s_rho > *cells[choice].s_rho ||
          (*cells[c].s_rho == *cells[choice].s_rho &&
           cells[c].k > cells[choice].k)) {
        choice = c;
      }
    }
  }
  return choice;
}

namespace {

SelectionReport report_from_table(const S4Table& table, std::size_t choice,
                                  SelectionMethod method) {
  SelectionReport report;
  report.method = method;
  report.table = table.cells;
  report.seed = table.seed;
  report.k_hat = table.cells[choice].k;
  report.lambda_hat = table.cells[choice].lambda;
  report.n_selected = table.cells[choice].n_selected;
  report.partition = table.partitions[choice];
  report.mask = table.masks[choice];
  report.runtime_seconds = table.build_seconds;
  return report;
}

}  // namespace

SelectionReport select_from_table(SelectionMethod method, const S4Table& table) {
  switch (method) {
    case SelectionMethod::s4:
      return report_from_table(table, two_stage_choice(table.cells), method);
    case SelectionMethod::s4_naive_sum:
      return report_from_table(table, naive_sum_choice(table.cells), method);
    default:
      throw Error::validation(
          "only the concordance-based rules select from a scored table");
  }
}

SelectionReport s4_joint_select(const DataMatrix& x, int k_min, int k_max,
                                const std::vector<LambdaGrid>& grids,
                                const SelectionOptions& options) {
  S4Table table = compute_s4_table(x, k_min, k_max, grids, options);
  return report_from_table(table, two_stage_choice(table.cells),
                           SelectionMethod::s4);
}

SelectionReport s4_naive_sum_select(const DataMatrix& x, int k_min, int k_max,
                                    const std::vector<LambdaGrid>& grids,
                                    const SelectionOptions& options) {
  S4Table table = compute_s4_table(x, k_min, k_max, grids, options);
  return report_from_table(table, naive_sum_choice(table.cells),
                           SelectionMethod::s4_naive_sum);
}

SelectionReport gap_joint_select(const DataMatrix& x, int k_min, int k_max,
                                 const std::vector<LambdaGrid>& grids,
                                 const SelectionOptions& options) {
  auto start = std::chrono::steady_clock::now();
  int lo = std::max(2, k_min);
  if (k_min > k_max || lo > k_max) {
    throw Error::validation("cluster-count range [" + std::to_string(k_min) +
                            ", " + std::to_string(k_max) + "] is invalid");
  }
  if (options.b < 10) {
    throw Error::validation("gap estimation needs >= 10 references, got " +
                            std::to_string(options.b));
  }
  struct CellRef {
    int k;
    double lambda;
  };
  std::vector<CellRef> cells;
  for (int k = lo; k <= k_max; ++k) {
    for (double lambda : grid_for(grids, k).lambdas) cells.push_back({k, lambda});
  }
  int n_cells = static_cast<int>(cells.size());
  int n_k = k_max - lo + 1;

  // The observed log dispersion per cell, from full-data sparse fits.  The
  // pairwise between-cluster form is exactly twice the centroid form.
  std::vector<double> observed(n_cells);
  std::vector<Partition> partitions(n_cells);
  std::vector<FeatureMask> masks(n_cells);
  std::vector<int> full_selected(n_cells);
  parallel_for(n_k, options.threads, [&](int ki) {
    int k = lo + ki;
    std::uint64_t fit_seed = derive_seed(options.seed,
                                         {seed_tag::full_fit,
                                          static_cast<std::uint64_t>(k)});
    KMeansFit opening = uniform_first_fit(x, k, options.restarts, fit_seed);
    for (int c = 0; c < n_cells; ++c) {
      if (cells[c].k != k) continue;
      SparseKMeansOptions sko;
      sko.restarts = options.restarts;
      sko.inner_restarts = options.inner_restarts;
      sko.seed = fit_seed;
      sko.first_fit = &opening;
      SparseFit fit = sparse_kmeans(x, k, cells[c].lambda, sko);
      double dispersion = 2.0 * fit.objective;
      if (!(dispersion > 0.0)) {
        throw Error::degenerate("non-positive between-cluster dispersion at k=" +
                                std::to_string(k) + ", lambda=" +
                                std::to_string(cells[c].lambda));
      }
      observed[c] = std::log(dispersion);
      partitions[c] = std::move(fit.partition);
      masks[c] = std::move(fit.mask);
      full_selected[c] = fit.n_selected;
    }
  });

  // Reference fits on column-permuted copies; ref_logs[b] is task b's slot.
  std::vector<std::vector<double>> ref_logs(options.b,
                                            std::vector<double>(n_cells));
  parallel_for(options.b, options.threads, [&](int rep) {
    Rng rng(derive_seed(options.seed,
                        {seed_tag::reference, static_cast<std::uint64_t>(rep)}));
    DataMatrix ref(x.n, x.p);
    std::vector<int> perm(x.n);
    for (int j = 0; j < x.p; ++j) {
      for (int i = 0; i < x.n; ++i) perm[i] = i;
      for (int i = x.n - 1; i > 0; --i) {
        int swap_with = rng.uniform_index(i + 1);
        std::swap(perm[i], perm[swap_with]);
      }
      for (int i = 0; i < x.n; ++i) ref(i, j) = x(perm[i], j);
    }
    for (int ki = 0; ki < n_k; ++ki) {
      int k = lo + ki;
      std::uint64_t fit_seed = derive_seed(options.seed,
                                           {seed_tag::reference,
                                            static_cast<std::uint64_t>(rep),
                                            static_cast<std::uint64_t>(k)});
      KMeansFit opening =
          uniform_first_fit(ref, k, options.subsample_restarts, fit_seed);
      for (int c = 0; c < n_cells; ++c) {
        if (cells[c].k != k) continue;
        SparseKMeansOptions sko;
        sko.restarts = options.subsample_restarts;
        sko.inner_restarts = options.inner_restarts;
        sko.seed = fit_seed;
        sko.first_fit = &opening;
        SparseFit fit = sparse_kmeans(ref, k, cells[c].lambda, sko);
        double dispersion = 2.0 * fit.objective;
        if (!(dispersion > 0.0)) {
          throw Error::degenerate(
              "non-positive reference dispersion at k=" + std::to_string(k));
        }
        ref_logs[rep][c] = std::log(dispersion);
      }
    }
  });

  SelectionReport report;
  report.method = SelectionMethod::gap_joint;
  report.seed = options.seed;
  report.table.resize(n_cells);
  for (int c = 0; c < n_cells; ++c) {
    double mean = 0.0;
    for (int rep = 0; rep < options.b; ++rep) mean += ref_logs[rep][c];
    mean /= options.b;
    double var = 0.0;
    for (int rep = 0; rep < options.b; ++rep) {
      double d = ref_logs[rep][c] - mean;
      var += d * d;
    }
    CellScore& cell = report.table[c];
    cell.k = cells[c].k;
    cell.lambda = cells[c].lambda;
    cell.n_selected = full_selected[c];
    cell.gap = observed[c] - mean;
    cell.gap_sd = std::sqrt(var / options.b);
  }

  // Stage 1: the peak gap fixes k (ties -> larger k) and marks the row's
  // reference cell lambda'.
  std::size_t peak = 0;
  for (int c = 1; c < n_cells; ++c) {
    double g = *report.table[c].gap;
    double best = *report.table[peak].gap;
    if (g > best ||
        (g == best && report.table[c].k >= report.table[peak].k)) {
      peak = c;
    }
  }
  report.k_hat = report.table[peak].k;
  // Stage 2: smallest lambda on the row whose gap reaches the peak minus one
  // standard deviation of the peak cell's reference log-dispersions.
  double floor_value = *report.table[peak].gap - *report.table[peak].gap_sd;
  std::size_t choice = peak;
  for (int c = 0; c < n_cells; ++c) {
    if (report.table[c].k != report.k_hat) continue;
    if (*report.table[c].gap >= floor_value) {
      choice = c;
      break;
    }
  }
  report.lambda_hat = report.table[choice].lambda;
  report.n_selected = full_selected[choice];
  report.partition = partitions[choice];
  report.mask = masks[choice];
  report.runtime_seconds = runtime_since(start);
  return report;
}

SelectionReport estimate(SelectionMethod method, const DataMatrix& x,
                         int k_min, int k_max,
                         const SelectionOptions& options) {
  auto start = std::chrono::steady_clock::now();
  std::vector<LambdaGrid> grids = build_grids(x, k_min, k_max, options);
  SelectionReport report;
  switch (method) {
    case SelectionMethod::s4:
      report = s4_joint_select(x, k_min, k_max, grids, options);
      break;
    case SelectionMethod::s4_naive_sum:
      report = s4_naive_sum_select(x, k_min, k_max, grids, options);
      break;
    case SelectionMethod::gap_joint:
      report = gap_joint_select(x, k_min, k_max, grids, options);
      break;
    case SelectionMethod::ps_joint:
      report = ps_joint_select(x, k_min, k_max, grids, options);
      break;
  }
  report.runtime_seconds = runtime_since(start);
  return report;
}

}  // namespace sparseclust
