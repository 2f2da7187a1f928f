#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sparseclust/selection_types.hpp"

namespace sparseclust {

// Replicated estimator comparison on a named synthetic design.  Method names:
//   plain cluster-count estimators: s4, ps, ch, kl, h, silhouette,
//     gap-unif, gap-pca, jump
//   joint (k, lambda) estimators:   sparse-s4, sparse-s4-naive, sparse-gap,
//     sparse-ps
// Within a replicate every method sees the same generated dataset, and the
// joint estimators share one penalty grid (plus one scored concordance table
// for the two concordance-based rules), so cross-method comparisons are
// paired.
struct BenchOptions {
  int replicates = 20;
  int k_min = 1;
  int k_max = 10;
  double s0 = 0.8;             // no-cluster cutoff of the concordance rule
  double ps_threshold = 0.8;   // no-cluster cutoff of the strength rule
  SelectionOptions selection;  // resampling scale, grid shape, restarts, seed
};

// One replicate of one method.  ari/jaccard are NaN when the design carries
// no ground truth of that kind (or the method selects no features).
struct BenchDetail {
  int replicate = 0;
  std::string method;
  int k_hat = 0;
  double lambda_hat = 0.0;  // NaN for plain estimators
  int n_selected = 0;       // -1 for plain estimators
  double ari = 0.0;
  double jaccard = 0.0;
  double seconds = 0.0;
};

struct BenchRow {
  std::string method;
  int replicates = 0;
  double frac_correct = 0.0;  // share of replicates with k_hat == true k
  double mean_k = 0.0;
  double rmse_k = 0.0;
  double ari_mean = 0.0, ari_sd = 0.0;          // NaN when never defined
  double jaccard_mean = 0.0, jaccard_sd = 0.0;  // NaN when never defined
  double mean_selected = 0.0;                   // NaN for plain estimators
  double seconds = 0.0;                         // total across replicates
};

struct BenchResult {
  std::string design;
  int true_k = 0;  // cluster count of the design (1 when truth is absent)
  std::vector<BenchRow> rows;        // one per method, input order
  std::vector<BenchDetail> details;  // replicate-level records
};

BenchResult run_benchmark(const std::string& design,
                          const std::map<std::string, double>& design_params,
                          const std::vector<std::string>& methods,
                          const BenchOptions& options);

}  // namespace sparseclust
