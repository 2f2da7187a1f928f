#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparseclust/data_model.hpp"

namespace sparseclust {

struct KMeansFit {
  Partition partition;
  std::vector<double> centroids;  // k * p row-major, per-cluster feature means
  double wcss_weighted = 0.0;     // sum_j w_j * WCSS_j (w_j = 1 when unweighted)
  int iterations = 0;             // Lloyd iterations of the winning restart
  int restarts_used = 0;
  std::vector<double> wcss_trace;  // weighted WCSS after each Lloyd iteration
};

struct KMeansOptions {
  int restarts = 20;
  int max_iterations = 100;
  std::uint64_t seed = 0;
  // Optional extra restart candidate seeded from an existing assignment; used
  // to warm-start refinement passes so the objective can only improve.
  const std::vector<int>* warm_labels = nullptr;
};

// Lloyd's algorithm with k-means++ seeding and multiple restarts.  The best
// restart by weighted WCSS wins; exact ties keep the earlier candidate.
// Non-negative feature weights scale squared distances per feature; an empty
// span means unweighted.  Empty clusters are repaired each iteration by moving
// the sample farthest from its centroid (among clusters of size >= 2, lowest
// sample index on ties).
KMeansFit kmeans(const DataMatrix& x, int k, std::span<const double> weights,
                 const KMeansOptions& options);

KMeansFit kmeans(const DataMatrix& x, int k, int restarts, std::uint64_t seed);

// Nearest-centroid labels under the given feature weights (ties -> lowest
// centroid index).  Unlike Partition, the result may leave centroids unused.
std::vector<int> assign(const DataMatrix& x, std::span<const double> centroids,
                        int k, std::span<const double> weights = {});

}  // namespace sparseclust
