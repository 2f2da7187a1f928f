#include "sparseclust/indices.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "sparseclust/error.hpp"
#include "sparseclust/parallel.hpp"
#include "sparseclust/rng.hpp"

namespace sparseclust {

std::string index_method_name(IndexMethod method) {
  switch (method) {
    case IndexMethod::ch: return "ch";
    case IndexMethod::kl: return "kl";
    case IndexMethod::h: return "h";
    case IndexMethod::silhouette: return "silhouette";
    case IndexMethod::gap_uniform: return "gap-unif";
    case IndexMethod::gap_pca: return "gap-pca";
    case IndexMethod::jump: return "jump";
  }
  return "?";
}

KmeansSweep::KmeansSweep(const DataMatrix& x, int restarts, std::uint64_t seed)
    : x_(x), restarts_(restarts), seed_(seed) {}

const KMeansFit& KmeansSweep::fit(int k) {
  auto it = fits_.find(k);
  if (it == fits_.end()) {
    KMeansOptions options;
    options.restarts = restarts_;
    options.seed = derive_seed(seed_, {seed_tag::full_fit,
                                       static_cast<std::uint64_t>(k)});
    it = fits_.emplace(k, kmeans(x_, k, {}, options)).first;
  }
  return it->second;
}

double KmeansSweep::wcss(int k) { return fit(k).wcss_weighted; }

std::vector<double> wcss_curve(const DataMatrix& x, int k_min, int k_max,
                               int restarts, std::uint64_t seed) {
  if (k_min < 1 || k_min > k_max || k_max > x.n) {
    throw Error::validation("cluster-count range [" + std::to_string(k_min) +
                            ", " + std::to_string(k_max) +
                            "] is invalid for n=" + std::to_string(x.n));
  }
  KmeansSweep sweep(x, restarts, seed);
  std::vector<double> out;
  out.reserve(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k) out.push_back(sweep.wcss(k));
  return out;
}

namespace {

struct Range {
  int lo, hi;
  bool empty() const { return lo > hi; }
};

Range clamp_range(int k_min, int k_max, int lo_limit, int hi_limit,
                  const char* what) {
  Range r{std::max(k_min, lo_limit), std::min(k_max, hi_limit)};
  if (k_min > k_max || r.empty()) {
    throw Error::validation(std::string(what) +
                            " has no evaluable cluster counts in [" +
                            std::to_string(k_min) + ", " +
                            std::to_string(k_max) + "]");
  }
  return r;
}

int argmax_smallest_k(const std::vector<int>& ks,
                      const std::vector<double>& scores) {
  int best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = static_cast<int>(i);
  }
  return ks[best];
}

double total_ss(const DataMatrix& x) {
  double total = 0.0;
  for (double t : tss_per_feature(x)) total += t;
  return total;
}

}  // namespace

IndexCurve ch_select(KmeansSweep& sweep, int k_min, int k_max) {
  const DataMatrix& x = sweep.data();
  Range r = clamp_range(k_min, k_max, 2, x.n - 1, "variance-ratio criterion");
  double tss = total_ss(x);
  IndexCurve curve;
  curve.method = IndexMethod::ch;
  for (int k = r.lo; k <= r.hi; ++k) {
    double w = sweep.wcss(k);
    double b = tss - w;
    double score = (b / (k - 1)) / (w / (x.n - k));
    curve.k_values.push_back(k);
    curve.scores.push_back(score);
  }
  curve.chosen_k = argmax_smallest_k(curve.k_values, curve.scores);
  return curve;
}

IndexCurve kl_select(KmeansSweep& sweep, int k_min, int k_max) {
  const DataMatrix& x = sweep.data();
  Range r = clamp_range(k_min, k_max, 2, x.n - 2,
                        "successive-difference criterion");
  double exponent = 2.0 / x.p;
  auto diff = [&](int k) {
    double prev = k == 1 ? 0.0
                         : std::pow(static_cast<double>(k - 1), exponent) *
                               sweep.wcss(k - 1);
    return prev - std::pow(static_cast<double>(k), exponent) * sweep.wcss(k);
  };
  IndexCurve curve;
  curve.method = IndexMethod::kl;
  for (int k = r.lo; k <= r.hi; ++k) {
    double num = diff(k);
    double den = diff(k + 1);
    double score = den == 0.0 ? std::numeric_limits<double>::infinity()
                              : std::abs(num / den);
    curve.k_values.push_back(k);
    curve.scores.push_back(score);
  }
  curve.chosen_k = argmax_smallest_k(curve.k_values, curve.scores);
  return curve;
}

IndexCurve h_select(KmeansSweep& sweep, int k_min, int k_max, double cutoff) {
  const DataMatrix& x = sweep.data();
  Range r = clamp_range(k_min, k_max, 1, x.n - 1, "WCSS-drop rule");
  IndexCurve curve;
  curve.method = IndexMethod::h;
  for (int k = r.lo; k <= r.hi; ++k) {
    double wk = sweep.wcss(k);
    double wk1 = sweep.wcss(k + 1);
    double score;
    if (wk1 == 0.0) {
      score = wk == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      score = (wk / wk1 - 1.0) * (x.n - k - 1);
    }
    curve.k_values.push_back(k);
    curve.scores.push_back(score);
  }
  curve.chosen_k = 0;
  for (std::size_t i = 0; i < curve.k_values.size(); ++i) {
    if (curve.k_values[i] < 2) continue;  // a one-cluster answer is never taken
    if (curve.scores[i] <= cutoff) {
      curve.chosen_k = curve.k_values[i];
      break;
    }
  }
  if (curve.chosen_k == 0) curve.chosen_k = curve.k_values.back();
  return curve;
}

double mean_silhouette(const DataMatrix& x, const Partition& partition) {
  if (partition.n() != x.n) {
    throw Error::validation("partition size does not match row count");
  }
  int n = x.n, k = partition.k;
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      const double* a = x.row(i);
      const double* b = x.row(j);
      for (int f = 0; f < x.p; ++f) {
        double diff = a[f] - b[f];
        d2 += diff * diff;
      }
      double d = std::sqrt(d2);
      dist[static_cast<std::size_t>(i) * n + j] = d;
      dist[static_cast<std::size_t>(j) * n + i] = d;
    }
  }
  std::vector<int> sizes = partition.cluster_sizes();
  std::vector<double> to_cluster(k);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    int own = partition.labels[i];
    if (sizes[own] == 1) continue;  // convention: singletons contribute 0
    std::fill(to_cluster.begin(), to_cluster.end(), 0.0);
    const double* row = dist.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) to_cluster[partition.labels[j]] += row[j];
    double a = to_cluster[own] / (sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c == own) continue;
      b = std::min(b, to_cluster[c] / sizes[c]);
    }
    double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / n;
}

IndexCurve silhouette_select(KmeansSweep& sweep, int k_min, int k_max) {
  const DataMatrix& x = sweep.data();
  Range r = clamp_range(k_min, k_max, 2, x.n - 1, "silhouette criterion");
  IndexCurve curve;
  curve.method = IndexMethod::silhouette;
  for (int k = r.lo; k <= r.hi; ++k) {
    curve.k_values.push_back(k);
    curve.scores.push_back(mean_silhouette(x, sweep.fit(k).partition));
  }
  curve.chosen_k = argmax_smallest_k(curve.k_values, curve.scores);
  return curve;
}

namespace {

// Reference generators draw a synthetic dataset that mimics the observed
// spread but carries no cluster structure.
DataMatrix uniform_reference(const DataMatrix& x, Rng& rng) {
  std::vector<double> lo(x.p, std::numeric_limits<double>::infinity());
  std::vector<double> hi(x.p, -std::numeric_limits<double>::infinity());
  for (int i = 0; i < x.n; ++i) {
    const double* r = x.row(i);
    for (int j = 0; j < x.p; ++j) {
      lo[j] = std::min(lo[j], r[j]);
      hi[j] = std::max(hi[j], r[j]);
    }
  }
  DataMatrix out(x.n, x.p);
  for (int i = 0; i < x.n; ++i) {
    double* r = out.row(i);
    for (int j = 0; j < x.p; ++j) r[j] = rng.uniform(lo[j], hi[j]);
  }
  return out;
}

struct PcaFrame {
  Eigen::MatrixXd v;        // principal axes (columns)
  Eigen::RowVectorXd mean;  // column means
  Eigen::MatrixXd scores;   // centered data in the rotated frame
};

PcaFrame pca_frame(const DataMatrix& x) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(x.values.data(), x.n, x.p);
  PcaFrame frame;
  frame.mean = m.colwise().mean();
  Eigen::MatrixXd centered = m.rowwise() - frame.mean;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  frame.v = svd.matrixV();
  frame.scores = centered * frame.v;
  return frame;
}

DataMatrix pca_reference(const PcaFrame& frame, int n, int p, Rng& rng) {
  int r = static_cast<int>(frame.scores.cols());
  Eigen::VectorXd lo = frame.scores.colwise().minCoeff();
  Eigen::VectorXd hi = frame.scores.colwise().maxCoeff();
  Eigen::MatrixXd z(n, r);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r; ++j) z(i, j) = rng.uniform(lo[j], hi[j]);
  }
  Eigen::MatrixXd back = z * frame.v.transpose();
  back.rowwise() += frame.mean;
  DataMatrix out(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) out(i, j) = back(i, j);
  }
  return out;
}

}  // namespace

IndexCurve gap_select(KmeansSweep& sweep, int k_min, int k_max,
                      GapReference reference, const GapOptions& options) {
  const DataMatrix& x = sweep.data();
  Range r = clamp_range(k_min, k_max, 1, x.n - 1, "gap criterion");
  if (options.b_references < 2) {
    throw Error::validation("gap criterion needs at least 2 references, got " +
                            std::to_string(options.b_references));
  }
  int n_k = r.hi - r.lo + 1;
  std::vector<double> log_w(n_k);
  for (int k = r.lo; k <= r.hi; ++k) {
    double w = sweep.wcss(k);
    if (!(w > 0.0)) {
      throw Error::degenerate("WCSS is zero at k=" + std::to_string(k) +
                              "; gap criterion undefined");
    }
    log_w[k - r.lo] = std::log(w);
  }

  PcaFrame frame;
  if (reference == GapReference::pca) frame = pca_frame(x);

  int b = options.b_references;
  std::vector<std::vector<double>> ref_logs(b);
  parallel_for(b, options.threads, [&](int rep) {
    Rng rng(derive_seed(options.seed,
                        {seed_tag::reference, static_cast<std::uint64_t>(rep)}));
    DataMatrix ref = reference == GapReference::uniform
                         ? uniform_reference(x, rng)
                         : pca_reference(frame, x.n, x.p, rng);
    std::vector<double>& logs = ref_logs[rep];
    logs.resize(n_k);
    for (int k = r.lo; k <= r.hi; ++k) {
      KMeansOptions ko;
      ko.restarts = sweep.restarts();
      ko.seed = derive_seed(options.seed,
                            {seed_tag::reference, static_cast<std::uint64_t>(rep),
                             static_cast<std::uint64_t>(k)});
      double w = kmeans(ref, k, {}, ko).wcss_weighted;
      if (!(w > 0.0)) {
        throw Error::degenerate("reference WCSS is zero at k=" +
                                std::to_string(k));
      }
      logs[k - r.lo] = std::log(w);
    }
  });

  IndexCurve curve;
  curve.method = reference == GapReference::uniform ? IndexMethod::gap_uniform
                                                    : IndexMethod::gap_pca;
  std::vector<double> se(n_k);
  for (int i = 0; i < n_k; ++i) {
    double mean = 0.0;
    for (int rep = 0; rep < b; ++rep) mean += ref_logs[rep][i];
    mean /= b;
    double var = 0.0;
    for (int rep = 0; rep < b; ++rep) {
      double d = ref_logs[rep][i] - mean;
      var += d * d;
    }
    var /= b;
    se[i] = std::sqrt(var) * std::sqrt(1.0 + 1.0 / b);
    curve.k_values.push_back(r.lo + i);
    curve.scores.push_back(mean - log_w[i]);
  }
  if (options.one_se_rule) {
    curve.chosen_k = curve.k_values.back();
    for (int i = 0; i + 1 < n_k; ++i) {
      if (curve.scores[i] >= curve.scores[i + 1] - se[i + 1]) {
        curve.chosen_k = curve.k_values[i];
        break;
      }
    }
  } else {
    curve.chosen_k = argmax_smallest_k(curve.k_values, curve.scores);
  }
  curve.extras.emplace_back("se", std::move(se));
  return curve;
}

IndexCurve jump_select(KmeansSweep& sweep, int k_min, int k_max, double power) {
  const DataMatrix& x = sweep.data();
  Range r = clamp_range(k_min, k_max, 1, x.n, "jump criterion");
  double y = std::isfinite(power) ? power : -0.5 * x.p;
  auto transform = [&](int k) {
    double w = sweep.wcss(k);
    if (!(w > 0.0)) {
      throw Error::degenerate("WCSS is not positive at k=" + std::to_string(k) +
                              "; jump transform undefined");
    }
    return std::pow(w, y);
  };
  IndexCurve curve;
  curve.method = IndexMethod::jump;
  for (int k = r.lo; k <= r.hi; ++k) {
    double prev = k == 1 ? 0.0 : transform(k - 1);
    curve.k_values.push_back(k);
    curve.scores.push_back(transform(k) - prev);
  }
  curve.chosen_k = argmax_smallest_k(curve.k_values, curve.scores);
  return curve;
}

}  // namespace sparseclust
