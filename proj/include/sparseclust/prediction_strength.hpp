#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sparseclust/data_model.hpp"
#include "sparseclust/selection_types.hpp"

namespace sparseclust {

struct PsOptions {
  int n_splits = 5;
  int restarts = 20;
  double threshold = 0.8;  // minimal strength for a clustered verdict
  std::uint64_t seed = 0;
  int threads = 1;
};

struct PsValue {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation across splits / sqrt(splits)
};

// Cross-split reproducibility of a k-cluster solution: repeatedly halve the
// rows, cluster both halves, and measure how well train-side centroids keep
// test-side cluster mates together.  Each split's value is the worst
// per-test-cluster proportion of preserved co-assignments (clusters with
// fewer than two members are skipped; if none qualify the split scores 1).
PsValue prediction_strength(const DataMatrix& x, int k,
                            const PsOptions& options);

struct PsKResult {
  std::vector<int> k_values;
  std::vector<double> strength;
  std::vector<double> se;
  int k_hat = 0;
};

// Picks the k in [max(2, k_min), k_max] with the highest strength (ties ->
// smaller k); when every k fails strength + se >= threshold the data are
// declared unclustered (k_hat = 1).
PsKResult ps_select_k(const DataMatrix& x, int k_min, int k_max,
                      const PsOptions& options);

struct SparsePsValue {
  double ps = 0.0;
  double ps_se = 0.0;
  std::optional<double> f_ps;  // cross-split feature agreement
};

// Penalized variant: both halves get a sparse fit at (k, lambda); test rows
// are assigned to train centroids under the train-side feature weights.  The
// feature part is the precision of the test-side selection against the
// train-side mask, averaged over splits; a split where the test side selects
// nothing has no defined precision and is left out (all such -> missing).
SparsePsValue sparse_prediction_strength(const DataMatrix& x, int k,
                                         double lambda,
                                         const PsOptions& options,
                                         int sparse_restarts);

// Joint (k, lambda) choice: the strength table picks k by maximal strength
// (ties -> larger k, matching the concordance pipeline), then lambda within
// that row by strength + feature agreement (cells without the feature part
// are excluded; ties -> smaller lambda).  Never declares "no clusters".
SelectionReport ps_joint_select(const DataMatrix& x, int k_min, int k_max,
                                const std::vector<LambdaGrid>& grids,
                                const SelectionOptions& options);

}  // namespace sparseclust
