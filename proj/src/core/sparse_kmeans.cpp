#include "sparseclust/sparse_kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparseclust/error.hpp"
#include "sparseclust/rng.hpp"

namespace sparseclust {

namespace {

double l1_of_normalized(const std::vector<double>& v) {
  double s2 = 0.0, s1 = 0.0;
  for (double x : v) {
    s2 += x * x;
    s1 += x;
  }
  if (s2 <= 0.0) return 0.0;
  return s1 / std::sqrt(s2);
}

void normalize_l2(std::vector<double>& v) {
  double s2 = 0.0;
  for (double x : v) s2 += x * x;
  double norm = std::sqrt(s2);
  for (double& x : v) x /= norm;
}

}  // namespace

std::vector<double> soft_threshold(std::span<const double> a, double delta) {
  std::vector<double> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    double v = a[j] - delta;
    out[j] = v > 0.0 ? v : 0.0;
  }
  return out;
}

WeightSolution solve_weights(std::span<const double> a, double l1_bound) {
  if (a.empty()) {
    throw Error::validation("weight solver needs at least one score");
  }
  if (!(l1_bound >= 1.0)) {
    throw Error::validation("L1 bound must be >= 1, got " +
                            std::to_string(l1_bound));
  }
  std::vector<double> scores(a.begin(), a.end());
  double top = 0.0;
  for (double& s : scores) {
    if (!std::isfinite(s)) {
      throw Error::validation("weight solver scores must be finite");
    }
    if (s < 0.0) s = 0.0;
    top = std::max(top, s);
  }
  if (top <= 0.0) {
    throw Error::degenerate(
        "no between-cluster dispersion: all weight-solver scores are zero");
  }

  WeightSolution solution;
  std::vector<double> w = soft_threshold(scores, 0.0);
  if (l1_of_normalized(w) <= l1_bound) {
    solution.delta = 0.0;
    solution.w = std::move(w);
    normalize_l2(solution.w);
    return solution;
  }
  // The normalized L1 norm decreases continuously in the shift, from above
  // the bound at 0 toward (number of maxima)^{1/2} at the top score.  Halving
  // 90 times pins the crossing far below any tolerance we rely on.
  double lo = 0.0, hi = top;
  for (int iter = 0; iter < 90; ++iter) {
    double mid = 0.5 * (lo + hi);
    double l1 = l1_of_normalized(soft_threshold(scores, mid));
    if (l1 > l1_bound) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double delta = 0.5 * (lo + hi);
  w = soft_threshold(scores, delta);
  bool any = std::any_of(w.begin(), w.end(), [](double x) { return x > 0.0; });
  if (!any) {
    delta = lo;
    w = soft_threshold(scores, delta);
  }
  solution.delta = delta;
  solution.w = std::move(w);
  normalize_l2(solution.w);
  return solution;
}

KMeansFit uniform_first_fit(const DataMatrix& x, int k, int restarts,
                            std::uint64_t seed) {
  // Equal weights rescale every distance by the same factor, so the opening
  // fit is plain unweighted k-means.
  KMeansOptions options;
  options.restarts = restarts;
  options.seed = derive_seed(seed, {0});
  return kmeans(x, k, {}, options);
}

SparseFit sparse_kmeans(const DataMatrix& x, int k, double lambda,
                        const SparseKMeansOptions& options) {
  if (k < 2 || k > x.n) {
    throw Error::validation("sparse clustering needs k in [2, " +
                            std::to_string(x.n) + "], got " +
                            std::to_string(k));
  }
  double sqrt_p = std::sqrt(static_cast<double>(x.p));
  if (!(lambda >= 1.0) || lambda > sqrt_p * (1.0 + 1e-12)) {
    throw Error::validation("lambda=" + std::to_string(lambda) +
                            " must lie in [1, sqrt(p)=" +
                            std::to_string(sqrt_p) + "]");
  }
  lambda = std::min(lambda, sqrt_p);

  KMeansFit opening;
  const KMeansFit* fit = options.first_fit;
  if (!fit) {
    opening = uniform_first_fit(x, k, options.restarts, options.seed);
    fit = &opening;
  }

  SparseFit result;
  result.lambda = lambda;
  std::vector<int> labels = fit->partition.labels;
  std::vector<double> w_prev(x.p, 1.0 / sqrt_p);
  std::vector<double> a;
  WeightSolution ws;
  int outer = 0;
  for (outer = 1; outer <= options.max_outer; ++outer) {
    if (outer > 1) {
      KMeansOptions ko;
      ko.restarts = options.inner_restarts;
      ko.seed = derive_seed(options.seed, {static_cast<std::uint64_t>(outer)});
      ko.warm_labels = &labels;
      KMeansFit refit = kmeans(x, k, ws.w, ko);
      labels = refit.partition.labels;
    }
    a = bcss_per_feature(x, Partition(labels, k));
    ws = solve_weights(a, lambda);
    double obj = 0.0;
    for (int j = 0; j < x.p; ++j) obj += ws.w[j] * a[j];
    result.objective_trace.push_back(obj);
    double diff = 0.0, base = 0.0;
    for (int j = 0; j < x.p; ++j) {
      diff += std::abs(ws.w[j] - w_prev[j]);
      base += std::abs(w_prev[j]);
    }
    w_prev = ws.w;
    if (diff / base < options.tol) break;
  }
  result.outer_iterations = std::min(outer, options.max_outer);
  result.partition = Partition(std::move(labels), k);
  result.weights = std::move(ws.w);
  result.objective = result.objective_trace.back();
  result.mask = FeatureMask(x.p);
  for (int j = 0; j < x.p; ++j) {
    result.mask.selected[j] = result.weights[j] > kWeightSelectionFloor;
  }
  result.n_selected = result.mask.count();
  return result;
}

SparseFit sparse_kmeans(const DataMatrix& x, int k, double lambda, int restarts,
                        std::uint64_t seed) {
  SparseKMeansOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return sparse_kmeans(x, k, lambda, options);
}

int count_selected(const DataMatrix& x, int k, double lambda,
                   std::uint64_t seed) {
  return sparse_kmeans(x, k, lambda, 20, seed).n_selected;
}

}  // namespace sparseclust
