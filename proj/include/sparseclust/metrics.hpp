#pragma once

#include <span>
#include <vector>

#include "sparseclust/data_model.hpp"

namespace sparseclust {

// Adjusted Rand index between two hard clusterings of the same samples.
// Chance-corrected; 1 for identical partitions (up to relabeling).  When both
// partitions are degenerate in the same way (all singletons or one block) the
// correction denominator vanishes and the value is defined as 1.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

double adjusted_rand_index(const Partition& a, const Partition& b);

// Jaccard similarity |A and B| / |A or B| between two feature selections.
// Exactly one empty mask -> 0; both empty is rejected.
double jaccard_index(const FeatureMask& a, const FeatureMask& b);

// Root mean squared error between estimated and true cluster counts.
double rmse_counts(std::span<const int> estimated, std::span<const int> truth);
double rmse_counts(std::span<const int> estimated, int true_k);

}  // namespace sparseclust
