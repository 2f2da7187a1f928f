#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparseclust/data_model.hpp"
#include "sparseclust/kmeans.hpp"

namespace sparseclust {

// Feature weights of a penalized clustering together with the soft-threshold
// shift that produced them.
struct WeightSolution {
  std::vector<double> w;  // unit Euclidean norm, non-negative
  double delta = 0.0;     // applied soft-threshold shift
};

// Element-wise (a_j - delta)+ for non-negative scores.
std::vector<double> soft_threshold(std::span<const double> a, double delta);

// Maximizes sum_j w_j a_j subject to ||w||_2 <= 1, ||w||_1 <= l1_bound and
// w_j >= 0.  Closed form via soft-thresholding; the shift is found by
// bisection so the L1 norm meets an active bound to high precision.
WeightSolution solve_weights(std::span<const double> a, double l1_bound);

struct SparseKMeansOptions {
  int restarts = 20;       // restarts of the opening unweighted fit
  int inner_restarts = 5;  // restarts of each reweighted refit (plus warm start)
  int max_outer = 15;
  double tol = 1e-4;  // relative L1 change of weights that counts as converged
  std::uint64_t seed = 0;
  // Optional precomputed opening fit.  Must equal
  // uniform_first_fit(x, k, restarts, seed); callers that sweep many penalty
  // bounds over one dataset reuse it because it does not depend on the bound.
  const KMeansFit* first_fit = nullptr;
};

struct SparseFit {
  Partition partition;
  std::vector<double> weights;  // per-feature, unit L2 norm
  double lambda = 0.0;          // the L1 bound that was requested
  double objective = 0.0;       // sum_j w_j * BCSS_j at the final state
  FeatureMask mask;             // weights above the selection floor
  int n_selected = 0;
  int outer_iterations = 0;
  std::vector<double> objective_trace;  // objective after each weight update
};

// Weight floor below which a feature counts as unselected.
inline constexpr double kWeightSelectionFloor = 1e-10;

// Penalized k-means: alternates cluster refits under the current feature
// weights with optimal weight updates for the current clusters, starting from
// equal weights, until the weights stabilize.  lambda must lie in [1, sqrt(p)].
SparseFit sparse_kmeans(const DataMatrix& x, int k, double lambda,
                        const SparseKMeansOptions& options);

SparseFit sparse_kmeans(const DataMatrix& x, int k, double lambda, int restarts,
                        std::uint64_t seed);

// The opening unweighted fit of sparse_kmeans for the same (restarts, seed);
// shared across lambda values by grid and pipeline code.
KMeansFit uniform_first_fit(const DataMatrix& x, int k, int restarts,
                            std::uint64_t seed);

// Number of features sparse_kmeans keeps at the given bound.
int count_selected(const DataMatrix& x, int k, double lambda,
                   std::uint64_t seed);

}  // namespace sparseclust
