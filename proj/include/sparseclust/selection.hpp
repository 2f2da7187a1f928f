#pragma once

#include <cstdint>
#include <vector>

#include "sparseclust/data_model.hpp"
#include "sparseclust/kmeans.hpp"
#include "sparseclust/selection_types.hpp"

namespace sparseclust {

// Builds the penalty grid for one cluster count: starting from {lambda0,
// sqrt(p)}, repeatedly inserts the geometric mean into the widest gap of the
// log feature-count profile (m insertions), then discards bounds whose
// full-data fit keeps every feature and bounds whose count falls below a kept
// bound to their left (restart noise at nearby bounds), so the final counts
// are non-decreasing.  All counts come from fits with the same fixed seed.
// An optional precomputed opening fit (see uniform_first_fit) avoids
// refitting it per bound.
LambdaGrid build_lambda_grid(const DataMatrix& x, int k, int m, double lambda0,
                             int restarts, std::uint64_t seed,
                             const KMeansFit* first_fit = nullptr);

// Grids for every k in [max(2, k_min), k_max] under the options' grid
// parameters, seeded independently per k.
std::vector<LambdaGrid> build_grids(const DataMatrix& x, int k_min, int k_max,
                                    const SelectionOptions& options);

// Scored (k, lambda) table shared by the concordance-based joint estimators:
// every cell carries the trimmed subject concordance of the full-data sparse
// fit against B subsample fits, plus the feature-selection concordance
// (missing when the full-data fit keeps every feature).
struct S4Table {
  std::vector<CellScore> cells;          // (k asc, lambda asc)
  std::vector<Partition> partitions;     // full-data fit per cell
  std::vector<FeatureMask> masks;        // full-data selection per cell
  std::uint64_t seed = 0;
  double build_seconds = 0.0;
};

S4Table compute_s4_table(const DataMatrix& x, int k_min, int k_max,
                         const std::vector<LambdaGrid>& grids,
                         const SelectionOptions& options);

// Pure selection rules over a scored table (exposed for rule-level tests).
// Two-stage: k by the concordance column alone (ties -> larger k), lambda
// within that row by concordance + feature score (undefined feature scores
// excluded, ties -> smaller lambda).
std::size_t two_stage_choice(const std::vector<CellScore>& cells);
// Single-stage argmax of concordance + feature score over all cells
// (ties -> larger k, then smaller lambda).
std::size_t naive_sum_choice(const std::vector<CellScore>& cells);

// Applies one of the two concordance-based rules to an already scored table
// (so the expensive table can be shared between them).
SelectionReport select_from_table(SelectionMethod method, const S4Table& table);

SelectionReport s4_joint_select(const DataMatrix& x, int k_min, int k_max,
                                const std::vector<LambdaGrid>& grids,
                                const SelectionOptions& options);

SelectionReport s4_naive_sum_select(const DataMatrix& x, int k_min, int k_max,
                                    const std::vector<LambdaGrid>& grids,
                                    const SelectionOptions& options);

// Bivariate gap estimator: compares each cell's log weighted between-cluster
// dispersion against fits of column-permuted references; k from the maximal
// gap (ties -> larger k), lambda as the smallest bound on that row within one
// reference standard deviation of the row maximum.
SelectionReport gap_joint_select(const DataMatrix& x, int k_min, int k_max,
                                 const std::vector<LambdaGrid>& grids,
                                 const SelectionOptions& options);

// Facade: builds grids and routes to the requested joint estimator.
SelectionReport estimate(SelectionMethod method, const DataMatrix& x,
                         int k_min, int k_max, const SelectionOptions& options);

}  // namespace sparseclust
