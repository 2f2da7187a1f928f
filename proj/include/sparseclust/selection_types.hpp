#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparseclust/data_model.hpp"

namespace sparseclust {

// Penalty grid for one cluster count: L1 bounds with the feature counts the
// full-data fit selects at each bound, sorted ascending with counts
// non-decreasing and no bound that keeps every feature.
struct LambdaGrid {
  int k = 0;
  std::vector<double> lambdas;
  std::vector<int> feature_counts;

  int size() const { return static_cast<int>(lambdas.size()); }
};

enum class SelectionMethod { s4, s4_naive_sum, gap_joint, ps_joint };

std::string selection_method_name(SelectionMethod method);

// One (k, lambda) grid cell with whichever scores the method computed.
struct CellScore {
  int k = 0;
  double lambda = 0.0;
  int n_selected = 0;  // features kept by the full-data fit at this cell
  std::optional<double> s_rho;     // trimmed subject concordance
  std::optional<double> f_score;   // feature-selection concordance
  std::optional<double> gap;       // log-dispersion gap vs. permuted references
  std::optional<double> gap_sd;    // spread of the reference log-dispersions
  std::optional<double> ps;        // cross-split co-assignment strength
  std::optional<double> ps_se;     // its standard error across splits
  std::optional<double> f_ps;      // cross-split feature agreement
};

struct SelectionReport {
  SelectionMethod method = SelectionMethod::s4;
  std::vector<CellScore> table;
  int k_hat = 0;
  double lambda_hat = 0.0;
  int n_selected = 0;
  Partition partition;  // full-data fit at the chosen cell
  FeatureMask mask;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
};

struct SelectionOptions {
  double fraction = 0.7;        // subsample fraction
  int b = 100;                  // subsamples / reference draws
  double rho = 5.0;             // trim percentage
  int restarts = 20;            // full-data k-means restarts
  int subsample_restarts = 10;  // subsample / reference / split restarts
  int inner_restarts = 5;       // reweighted refit restarts
  int n_splits = 5;             // cross-validation splits
  double lambda0 = 1.2;         // smallest penalty bound of the grid
  int grid_m = 28;              // grid refinement insertions
  std::uint64_t seed = 0;
  int threads = 1;
};

}  // namespace sparseclust
