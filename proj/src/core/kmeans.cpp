#include "sparseclust/kmeans.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sparseclust/error.hpp"
#include "sparseclust/rng.hpp"

namespace sparseclust {

namespace {

// Feature weights enter k-means only through per-feature distance scaling, so
// a run on columns multiplied by sqrt(w_j) is exactly the weighted problem.
// Columns with zero weight cannot influence distances and are dropped, which
// keeps refinement passes cheap when most weights have been thresholded away.
struct Workspace {
  int n = 0;
  int p = 0;                  // working column count
  const double* data = nullptr;
  std::vector<double> owned;  // backing store when scaling was needed

  const double* row(int i) const {
    return data + static_cast<std::size_t>(i) * p;
  }
};

Workspace make_workspace(const DataMatrix& x, std::span<const double> weights) {
  Workspace ws;
  ws.n = x.n;
  if (weights.empty()) {
    ws.p = x.p;
    ws.data = x.values.data();
    return ws;
  }
  if (static_cast<int>(weights.size()) != x.p) {
    throw Error::validation("weight count " + std::to_string(weights.size()) +
                            " does not match feature count " +
                            std::to_string(x.p));
  }
  std::vector<int> active;
  active.reserve(x.p);
  for (int j = 0; j < x.p; ++j) {
    double w = weights[j];
    if (!std::isfinite(w) || w < 0.0) {
      throw Error::validation("feature weight " + std::to_string(j) +
                              " must be finite and non-negative");
    }
    if (w > 0.0) active.push_back(j);
  }
  if (active.empty()) {
    throw Error::validation("all feature weights are zero");
  }
  ws.p = static_cast<int>(active.size());
  ws.owned.resize(static_cast<std::size_t>(ws.n) * ws.p);
  std::vector<double> scale(ws.p);
  for (int jj = 0; jj < ws.p; ++jj) scale[jj] = std::sqrt(weights[active[jj]]);
  for (int i = 0; i < ws.n; ++i) {
    const double* src = x.row(i);
    double* dst = ws.owned.data() + static_cast<std::size_t>(i) * ws.p;
    for (int jj = 0; jj < ws.p; ++jj) dst[jj] = src[active[jj]] * scale[jj];
  }
  ws.data = ws.owned.data();
  return ws;
}

double sq_dist(const double* a, const double* b, int p) {
  double d = 0.0;
  for (int j = 0; j < p; ++j) {
    double diff = a[j] - b[j];
    d += diff * diff;
  }
  return d;
}

struct RunResult {
  std::vector<int> labels;
  double wcss = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::vector<double> trace;
};

void seed_plus_plus(const Workspace& ws, int k, Rng& rng,
                    std::vector<double>& centroids) {
  int n = ws.n, p = ws.p;
  centroids.assign(static_cast<std::size_t>(k) * p, 0.0);
  int first = rng.uniform_index(n);
  const double* r0 = ws.row(first);
  for (int j = 0; j < p; ++j) centroids[j] = r0[j];
  std::vector<double> d2(n);
  for (int i = 0; i < n; ++i) d2[i] = sq_dist(ws.row(i), centroids.data(), p);
  for (int t = 1; t < k; ++t) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += d2[i];
    int pick;
    if (total <= 0.0) {
      pick = rng.uniform_index(n);
    } else {
      double u = rng.uniform() * total;
      double cum = 0.0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        cum += d2[i];
        if (u < cum) {
          pick = i;
          break;
        }
      }
    }
    double* c = centroids.data() + static_cast<std::size_t>(t) * p;
    const double* r = ws.row(pick);
    for (int j = 0; j < p; ++j) c[j] = r[j];
    for (int i = 0; i < n; ++i) {
      double d = sq_dist(ws.row(i), c, p);
      if (d < d2[i]) d2[i] = d;
    }
  }
}

void centroids_from_labels(const Workspace& ws, int k,
                           const std::vector<int>& labels,
                           std::vector<double>& centroids) {
  int p = ws.p;
  centroids.assign(static_cast<std::size_t>(k) * p, 0.0);
  std::vector<int> sizes(k, 0);
  for (int i = 0; i < ws.n; ++i) {
    int c = labels[i];
    ++sizes[c];
    double* dst = centroids.data() + static_cast<std::size_t>(c) * p;
    const double* src = ws.row(i);
    for (int j = 0; j < p; ++j) dst[j] += src[j];
  }
  for (int c = 0; c < k; ++c) {
    if (sizes[c] == 0) {
      throw Error::validation("warm-start labels leave cluster " +
                              std::to_string(c) + " empty");
    }
    double* dst = centroids.data() + static_cast<std::size_t>(c) * p;
    for (int j = 0; j < p; ++j) dst[j] /= sizes[c];
  }
}

RunResult lloyd(const Workspace& ws, int k, int max_iterations,
                std::vector<double> centroids) {
  int n = ws.n, p = ws.p;
  RunResult run;
  run.labels.assign(n, -1);
  std::vector<int> prev(n, -2);
  std::vector<double> dist_best(n, 0.0);
  std::vector<int> sizes(k, 0);
  for (int iter = 1; iter <= max_iterations; ++iter) {
    for (int i = 0; i < n; ++i) {
      const double* r = ws.row(i);
      double best = std::numeric_limits<double>::infinity();
      int best_c = 0;
      for (int c = 0; c < k; ++c) {
        double d =
            sq_dist(r, centroids.data() + static_cast<std::size_t>(c) * p, p);
        if (d < best) {
          best = d;
          best_c = c;
        }
      }
      run.labels[i] = best_c;
      dist_best[i] = best;
    }
    sizes.assign(k, 0);
    for (int i = 0; i < n; ++i) ++sizes[run.labels[i]];
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      // Repair: hand this cluster the sample farthest from its own centroid,
      // drawing only from clusters that can spare a member.
      int move = -1;
      double worst = -1.0;
      for (int i = 0; i < n; ++i) {
        if (sizes[run.labels[i]] < 2) continue;
        if (dist_best[i] > worst) {
          worst = dist_best[i];
          move = i;
        }
      }
      if (move < 0) {
        throw Error::degenerate("cannot repair empty cluster " +
                                std::to_string(c));
      }
      --sizes[run.labels[move]];
      run.labels[move] = c;
      sizes[c] = 1;
      dist_best[move] = 0.0;
    }
    centroids_from_labels(ws, k, run.labels, centroids);
    double wcss = 0.0;
    for (int i = 0; i < n; ++i) {
      wcss += sq_dist(
          ws.row(i),
          centroids.data() + static_cast<std::size_t>(run.labels[i]) * p, p);
    }
    run.trace.push_back(wcss);
    run.wcss = wcss;
    run.iterations = iter;
    if (run.labels == prev) break;
    prev = run.labels;
  }
  return run;
}

}  // namespace

KMeansFit kmeans(const DataMatrix& x, int k, std::span<const double> weights,
                 const KMeansOptions& options) {
  if (k < 1 || k > x.n) {
    throw Error::validation("cluster count k=" + std::to_string(k) +
                            " must be in [1, " + std::to_string(x.n) + "]");
  }
  if (options.restarts < 1) {
    throw Error::validation("restarts must be >= 1, got " +
                            std::to_string(options.restarts));
  }
  if (options.warm_labels &&
      static_cast<int>(options.warm_labels->size()) != x.n) {
    throw Error::validation("warm-start label count does not match row count");
  }
  Workspace ws = make_workspace(x, weights);

  RunResult best;
  bool have_best = false;
  int restarts_used = 0;
  std::vector<double> centroids;
  if (options.warm_labels) {
    centroids_from_labels(ws, k, *options.warm_labels, centroids);
    best = lloyd(ws, k, options.max_iterations, std::move(centroids));
    have_best = true;
    ++restarts_used;
  }
  int restarts = k == 1 ? 1 : options.restarts;  // k=1 has a unique optimum
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(options.seed, {seed_tag::restart,
                                       static_cast<std::uint64_t>(r)}));
    seed_plus_plus(ws, k, rng, centroids);
    RunResult run = lloyd(ws, k, options.max_iterations, centroids);
    ++restarts_used;
    if (!have_best || run.wcss < best.wcss) {
      best = std::move(run);
      have_best = true;
    }
  }

  KMeansFit fit;
  fit.partition = Partition(best.labels, k);
  fit.wcss_weighted = best.wcss;
  fit.iterations = best.iterations;
  fit.restarts_used = restarts_used;
  fit.wcss_trace = std::move(best.trace);
  // Report centroids as plain per-cluster feature means of the original data;
  // weights shift assignments, not the mean that minimizes each cluster's
  // weighted scatter.
  fit.centroids.assign(static_cast<std::size_t>(k) * x.p, 0.0);
  std::vector<int> sizes(k, 0);
  for (int i = 0; i < x.n; ++i) {
    int c = fit.partition.labels[i];
    ++sizes[c];
    double* dst = fit.centroids.data() + static_cast<std::size_t>(c) * x.p;
    const double* src = x.row(i);
    for (int j = 0; j < x.p; ++j) dst[j] += src[j];
  }
  for (int c = 0; c < k; ++c) {
    double* dst = fit.centroids.data() + static_cast<std::size_t>(c) * x.p;
    for (int j = 0; j < x.p; ++j) dst[j] /= sizes[c];
  }
  return fit;
}

KMeansFit kmeans(const DataMatrix& x, int k, int restarts, std::uint64_t seed) {
  KMeansOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return kmeans(x, k, {}, options);
}

std::vector<int> assign(const DataMatrix& x, std::span<const double> centroids,
                        int k, std::span<const double> weights) {
  if (k < 1 || centroids.size() != static_cast<std::size_t>(k) * x.p) {
    throw Error::validation("centroid matrix size does not match k x p");
  }
  bool weighted = !weights.empty();
  if (weighted && static_cast<int>(weights.size()) != x.p) {
    throw Error::validation("weight count does not match feature count");
  }
  std::vector<int> labels(x.n);
  for (int i = 0; i < x.n; ++i) {
    const double* r = x.row(i);
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (int c = 0; c < k; ++c) {
      const double* cen = centroids.data() + static_cast<std::size_t>(c) * x.p;
      double d = 0.0;
      if (weighted) {
        for (int j = 0; j < x.p; ++j) {
          double diff = r[j] - cen[j];
          d += weights[j] * diff * diff;
        }
      } else {
        d = sq_dist(r, cen, x.p);
      }
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    labels[i] = best_c;
  }
  return labels;
}

}  // namespace sparseclust
