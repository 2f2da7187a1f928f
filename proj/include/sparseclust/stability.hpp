#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sparseclust/data_model.hpp"

namespace sparseclust {

// Row memberships of b subsamples, each holding floor(fraction * n) distinct
// rows drawn without replacement (stored sorted ascending).
struct SubsamplePlan {
  int n = 0;
  double fraction = 0.0;
  std::vector<std::vector<int>> kept;  // kept[b] = full-data row ids

  int b() const { return static_cast<int>(kept.size()); }
  int kept_size() const { return kept.empty() ? 0 : static_cast<int>(kept[0].size()); }
  // counts[i*n+j] = number of subsamples containing both rows; it is the
  // denominator pattern shared by every averaged co-assignment matrix built
  // from this plan.
  std::vector<std::uint16_t> pair_counts() const;
};

SubsamplePlan make_plan(int n, double fraction, int b, std::uint64_t seed);

// Per-subject agreement between a reference co-assignment matrix t (from the
// full-data clustering) and an averaged subsample matrix tbar.  For subject i
// the score rewards averaged co-assignment mass on pairs the reference joins
// and averaged separation mass on pairs it splits, each normalized by the
// defined cells of that type, then combines them as
//   score_i = joined-agreement + split-agreement - 1   (range [-1, 1]).
// A type with no defined cells contributes 1; a subject with no defined cells
// at all scores 0 and is reported in unscored_subjects of the caller.
std::vector<double> subject_scores(const ComembershipView& t,
                                   const MeanComembership& tbar);

struct ConcordanceResult {
  std::vector<double> per_subject;  // first-pass scores, before any trimming
  double trimmed_score = 0.0;       // mean score over survivors
  std::vector<int> dropped;         // trimmed subjects, in drop order
  std::vector<int> unscored_subjects;  // subjects with no defined cells
  double rho_percent = 0.0;
};

// Trimmed mean concordance: floor(rho_percent * n / 100) subjects are removed
// one at a time, always the current lowest scorer (lowest index on ties), and
// scores are recomputed among survivors after every removal.
ConcordanceResult trimmed_score(const ComembershipView& t,
                                const MeanComembership& tbar,
                                double rho_percent);

// Agreement between a full-data feature selection and per-feature selection
// frequencies across subsample fits, scored like subject_scores (selected
// frequency mass vs. unselected absence mass, minus 1).  Returns nothing when
// the full-data fit selected every feature (no specificity evidence).
std::optional<double> feature_concordance(const FeatureMask& full_selection,
                                          std::span<const double> sub_freq);

struct S4Options {
  double fraction = 0.7;       // subsample fraction
  int b = 100;                 // number of subsamples
  double rho = 5.0;            // trim percentage
  double s0 = 0.8;             // below this top score the answer is "no clusters"
  int restarts = 20;           // full-data k-means restarts
  int subsample_restarts = 10; // per-subsample k-means restarts
  std::uint64_t seed = 0;
  int threads = 1;
};

struct S4KResult {
  std::vector<int> k_values;
  std::vector<double> scores;  // trimmed concordance per k
  int k_hat = 0;
  double s_max = 0.0;
  std::vector<ConcordanceResult> details;  // aligned with k_values
};

// Estimates the cluster count by maximizing trimmed subsample concordance
// over k in [max(2, k_min), k_max]; ties prefer the larger k.  When even the
// best score stays below s0 the data are declared unclustered (k_hat = 1).
S4KResult s4_estimate_k(const DataMatrix& x, int k_min, int k_max,
                        const S4Options& options);

}  // namespace sparseclust
