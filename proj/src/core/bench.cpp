#include "sparseclust/bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "sparseclust/error.hpp"
#include "sparseclust/indices.hpp"
#include "sparseclust/metrics.hpp"
#include "sparseclust/prediction_strength.hpp"
#include "sparseclust/selection.hpp"
#include "sparseclust/simgen.hpp"
#include "sparseclust/stability.hpp"

namespace sparseclust {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_sparse_method(const std::string& method) {
  return method.rfind("sparse-", 0) == 0;
}

// Per-replicate context with lazily built artifacts shared between methods.
struct ReplicateRun {
  const LabeledDataset& data;
  const BenchOptions& options;
  std::uint64_t seed;  // estimator seed for this replicate

  std::optional<KmeansSweep> sweep;           // plain index criteria
  std::optional<std::vector<LambdaGrid>> grids;  // joint estimators
  std::optional<S4Table> s4_table;            // concordance-based joint rules

  KmeansSweep& get_sweep() {
    if (!sweep)
      sweep.emplace(data.x, options.selection.restarts, seed);
    return *sweep;
  }
  const std::vector<LambdaGrid>& get_grids() {
    if (!grids) {
      SelectionOptions sel = options.selection;
      sel.seed = seed;
      grids = build_grids(data.x, std::max(2, options.k_min), options.k_max, sel);
    }
    return *grids;
  }
  const S4Table& get_s4_table() {
    if (!s4_table) {
      SelectionOptions sel = options.selection;
      sel.seed = seed;
      s4_table = compute_s4_table(data.x, std::max(2, options.k_min),
                                  options.k_max, get_grids(), sel);
    }
    return *s4_table;
  }
};

// Outcome of one method on one replicate.
struct MethodOutcome {
  int k_hat = 1;
  double lambda_hat = kNaN;
  int n_selected = -1;
  Partition partition;
  std::optional<FeatureMask> mask;
};

Partition trivial_partition(int n) {
  return Partition(std::vector<int>(n, 0), 1);
}

// Full-data fit at the chosen cluster count, on the same derived stream the
// estimators use for their own full fits.
Partition fit_at(const DataMatrix& x, int k, int restarts, std::uint64_t seed) {
  if (k <= 1) return trivial_partition(x.n);
  KMeansOptions opt;
  opt.restarts = restarts;
  opt.seed = derive_seed(seed, {seed_tag::full_fit, static_cast<std::uint64_t>(k)});
  return kmeans(x, k, {}, opt).partition;
}

MethodOutcome run_plain_method(const std::string& method, ReplicateRun& run) {
  const DataMatrix& x = run.data.x;
  const BenchOptions& bo = run.options;
  MethodOutcome out;

  if (method == "s4") {
    S4Options opt;
    opt.fraction = bo.selection.fraction;
    opt.b = bo.selection.b;
    opt.rho = bo.selection.rho;
    opt.s0 = bo.s0;
    opt.restarts = bo.selection.restarts;
    opt.subsample_restarts = bo.selection.subsample_restarts;
    opt.seed = run.seed;
    opt.threads = bo.selection.threads;
    const S4KResult res = s4_estimate_k(x, bo.k_min, bo.k_max, opt);
    out.k_hat = res.k_hat;
  } else if (method == "ps") {
    PsOptions opt;
    opt.n_splits = bo.selection.n_splits;
    opt.restarts = bo.selection.subsample_restarts;
    opt.threshold = bo.ps_threshold;
    opt.seed = run.seed;
    opt.threads = bo.selection.threads;
    const PsKResult res = ps_select_k(x, bo.k_min, bo.k_max, opt);
    out.k_hat = res.k_hat;
  } else {
    KmeansSweep& sweep = run.get_sweep();
    IndexCurve curve;
    if (method == "ch") {
      curve = ch_select(sweep, bo.k_min, bo.k_max);
    } else if (method == "kl") {
      curve = kl_select(sweep, bo.k_min, bo.k_max);
    } else if (method == "h") {
      curve = h_select(sweep, bo.k_min, bo.k_max);
    } else if (method == "silhouette" || method == "sil") {
      curve = silhouette_select(sweep, bo.k_min, bo.k_max);
    } else if (method == "gap-unif" || method == "gap-pca") {
      GapOptions opt;
      opt.b_references = bo.selection.b;
      opt.seed = run.seed;
      opt.threads = bo.selection.threads;
      curve = gap_select(sweep, bo.k_min, bo.k_max,
                         method == "gap-unif" ? GapReference::uniform
                                              : GapReference::pca,
                         opt);
    } else if (method == "jump") {
      curve = jump_select(sweep, bo.k_min, bo.k_max);
    } else {
      throw Error::validation("unknown benchmark method \"" + method + "\"");
    }
    out.k_hat = curve.chosen_k;
  }

  out.partition = fit_at(x, out.k_hat, bo.selection.restarts, run.seed);
  return out;
}

MethodOutcome run_sparse_method(const std::string& method, ReplicateRun& run) {
  const BenchOptions& bo = run.options;
  SelectionOptions sel = bo.selection;
  sel.seed = run.seed;
  const int k_min = std::max(2, bo.k_min);

  SelectionReport report;
  if (method == "sparse-s4") {
    report = select_from_table(SelectionMethod::s4, run.get_s4_table());
  } else if (method == "sparse-s4-naive") {
    report = select_from_table(SelectionMethod::s4_naive_sum, run.get_s4_table());
  } else if (method == "sparse-gap") {
    report = gap_joint_select(run.data.x, k_min, bo.k_max, run.get_grids(), sel);
  } else if (method == "sparse-ps") {
    report = ps_joint_select(run.data.x, k_min, bo.k_max, run.get_grids(), sel);
  } else {
    throw Error::validation("unknown benchmark method \"" + method + "\"");
  }

  MethodOutcome out;
  out.k_hat = report.k_hat;
  out.lambda_hat = report.lambda_hat;
  out.n_selected = report.n_selected;
  out.partition = std::move(report.partition);
  out.mask = std::move(report.mask);
  return out;
}

struct Accumulator {
  std::vector<double> values;
  void add(double v) {
    if (std::isfinite(v)) values.push_back(v);
  }
  double mean() const {
    if (values.empty()) return kNaN;
    double s = 0.0;
    for (double v : values) s += v;
    return s / values.size();
  }
  double sd() const {
    if (values.empty()) return kNaN;
    if (values.size() == 1) return 0.0;
    const double m = mean();
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return std::sqrt(s / (values.size() - 1));
  }
};

}  // namespace

BenchResult run_benchmark(const std::string& design,
                          const std::map<std::string, double>& design_params,
                          const std::vector<std::string>& methods,
                          const BenchOptions& options) {
  if (options.replicates < 1)
    throw Error::validation("benchmark needs at least one replicate");
  if (methods.empty())
    throw Error::validation("benchmark needs at least one method");

  BenchResult result;
  result.design = design;

  struct PerMethod {
    std::vector<int> k_hats;
    int correct = 0;
    Accumulator ari, jaccard, selected;
    double seconds = 0.0;
  };
  std::vector<PerMethod> stats(methods.size());

  for (int rep = 0; rep < options.replicates; ++rep) {
    const std::uint64_t rep_seed = derive_seed(
        options.selection.seed, {seed_tag::bench, static_cast<std::uint64_t>(rep)});
    const LabeledDataset data = generate_by_name(design, design_params, rep_seed);

    // Truth falls back to the one-cluster partition so structureless designs
    // can still score "correct k" and ARI.
    const Partition truth =
        data.truth ? *data.truth : trivial_partition(data.x.n);
    if (rep == 0) result.true_k = truth.k;

    ReplicateRun run{data, options,
                     derive_seed(rep_seed, {seed_tag::bench, 1}), {}, {}, {}};

    for (std::size_t m = 0; m < methods.size(); ++m) {
      const auto started = std::chrono::steady_clock::now();
      const MethodOutcome outcome = is_sparse_method(methods[m])
                                        ? run_sparse_method(methods[m], run)
                                        : run_plain_method(methods[m], run);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        started)
              .count();

      BenchDetail detail;
      detail.replicate = rep;
      detail.method = methods[m];
      detail.k_hat = outcome.k_hat;
      detail.lambda_hat = outcome.lambda_hat;
      detail.n_selected = outcome.n_selected;
      detail.ari = adjusted_rand_index(outcome.partition, truth);
      detail.jaccard = kNaN;
      if (outcome.mask && data.true_features &&
          (outcome.mask->count() > 0 || data.true_features->count() > 0))
        detail.jaccard = jaccard_index(*outcome.mask, *data.true_features);
      detail.seconds = seconds;
      result.details.push_back(detail);

      PerMethod& s = stats[m];
      s.k_hats.push_back(outcome.k_hat);
      if (outcome.k_hat == truth.k) ++s.correct;
      s.ari.add(detail.ari);
      s.jaccard.add(detail.jaccard);
      if (is_sparse_method(methods[m])) s.selected.add(outcome.n_selected);
      s.seconds += seconds;
    }
  }

  for (std::size_t m = 0; m < methods.size(); ++m) {
    const PerMethod& s = stats[m];
    BenchRow row;
    row.method = methods[m];
    row.replicates = options.replicates;
    row.frac_correct = double(s.correct) / options.replicates;
    double mean_k = 0.0;
    for (int k : s.k_hats) mean_k += k;
    row.mean_k = mean_k / s.k_hats.size();
    row.rmse_k = rmse_counts(s.k_hats, result.true_k);
    row.ari_mean = s.ari.mean();
    row.ari_sd = s.ari.sd();
    row.jaccard_mean = s.jaccard.mean();
    row.jaccard_sd = s.jaccard.sd();
    row.mean_selected = s.selected.mean();
    row.seconds = s.seconds;
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace sparseclust
