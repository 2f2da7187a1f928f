#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sparseclust/data_model.hpp"
#include "sparseclust/kmeans.hpp"

namespace sparseclust {

enum class IndexMethod { ch, kl, h, silhouette, gap_uniform, gap_pca, jump };

std::string index_method_name(IndexMethod method);

struct IndexCurve {
  IndexMethod method = IndexMethod::ch;
  std::vector<int> k_values;   // the cluster counts actually evaluated
  std::vector<double> scores;  // one score per evaluated k
  int chosen_k = 0;
  // Named auxiliary curves aligned with k_values (e.g. gap standard errors).
  std::vector<std::pair<std::string, std::vector<double>>> extras;
};

// Memoizes one unweighted multi-restart fit per cluster count so several
// index criteria can share them.  Fits are pure functions of (data, restarts,
// seed, k); the cache never changes results.
class KmeansSweep {
 public:
  KmeansSweep(const DataMatrix& x, int restarts, std::uint64_t seed);

  const KMeansFit& fit(int k);
  double wcss(int k);
  const DataMatrix& data() const { return x_; }
  int restarts() const { return restarts_; }
  std::uint64_t seed() const { return seed_; }

 private:
  const DataMatrix& x_;
  int restarts_;
  std::uint64_t seed_;
  std::map<int, KMeansFit> fits_;
};

// Within-cluster sum of squares of the best fit at each k in [k_min, k_max].
std::vector<double> wcss_curve(const DataMatrix& x, int k_min, int k_max,
                               int restarts, std::uint64_t seed);

// Mean silhouette width of a partition under Euclidean distance; samples in
// singleton clusters contribute 0.
double mean_silhouette(const DataMatrix& x, const Partition& partition);

// Variance-ratio criterion, maximized.  Defined for k in [2, n-1].
IndexCurve ch_select(KmeansSweep& sweep, int k_min, int k_max);

// Successive-difference ratio criterion, maximized.  Needs fits at k-1 and
// k+1, so it is evaluated for k in [2, n-2]; a vanishing denominator scores
// +infinity.
IndexCurve kl_select(KmeansSweep& sweep, int k_min, int k_max);

// Relative WCSS-drop rule: the smallest evaluated k >= 2 whose statistic
// falls to the cutoff or below; the largest evaluated k when none does.
IndexCurve h_select(KmeansSweep& sweep, int k_min, int k_max,
                    double cutoff = 10.0);

// Mean silhouette width, maximized over k in [2, n-1].
IndexCurve silhouette_select(KmeansSweep& sweep, int k_min, int k_max);

enum class GapReference {
  uniform,  // independent uniforms over each feature's observed range
  pca       // uniforms in the principal-axes bounding box, rotated back
};

struct GapOptions {
  int b_references = 100;
  bool one_se_rule = false;  // smallest k with gap(k) >= gap(k+1) - se(k+1)
  std::uint64_t seed = 0;
  int threads = 1;
};

// Compares log WCSS against null references; maximized (k = 1 allowed).
// Extras carry the reference standard errors under key "se".
IndexCurve gap_select(KmeansSweep& sweep, int k_min, int k_max,
                      GapReference reference, const GapOptions& options);

// Largest jump of the power-transformed WCSS curve (k = 1 allowed, where the
// previous term is defined as zero).  A non-finite power requests the default
// exponent -p/2.
IndexCurve jump_select(KmeansSweep& sweep, int k_min, int k_max,
                       double power = std::numeric_limits<double>::quiet_NaN());

}  // namespace sparseclust
