#include "sparseclust/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sparseclust/error.hpp"
#include "sparseclust/kmeans.hpp"
#include "sparseclust/parallel.hpp"
#include "sparseclust/rng.hpp"

namespace sparseclust {

std::vector<std::uint16_t> SubsamplePlan::pair_counts() const {
  std::vector<std::uint16_t> counts(static_cast<std::size_t>(n) * n, 0);
  for (const auto& rows : kept) {
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t c = a; c < rows.size(); ++c) {
        ++counts[static_cast<std::size_t>(rows[a]) * n + rows[c]];
        if (c != a) ++counts[static_cast<std::size_t>(rows[c]) * n + rows[a]];
      }
    }
  }
  return counts;
}

SubsamplePlan make_plan(int n, double fraction, int b, std::uint64_t seed) {
  if (!(fraction > 0.0) || !(fraction < 1.0)) {
    throw Error::validation("subsample fraction must be in (0, 1), got " +
                            std::to_string(fraction));
  }
  if (b < 1) {
    throw Error::validation("subsample count must be >= 1, got " +
                            std::to_string(b));
  }
  int size = static_cast<int>(std::floor(fraction * n));
  if (size < 2) {
    throw Error::validation("subsample fraction " + std::to_string(fraction) +
                            " keeps fewer than 2 of " + std::to_string(n) +
                            " rows");
  }
  SubsamplePlan plan;
  plan.n = n;
  plan.fraction = fraction;
  plan.kept.resize(b);
  std::vector<int> ids(n);
  for (int rep = 0; rep < b; ++rep) {
    Rng rng(derive_seed(seed, {seed_tag::plan, static_cast<std::uint64_t>(rep)}));
    std::iota(ids.begin(), ids.end(), 0);
    // Partial Fisher-Yates: the first `size` slots become the subsample.
    for (int i = 0; i < size; ++i) {
      int j = i + rng.uniform_index(n - i);
      std::swap(ids[i], ids[j]);
    }
    plan.kept[rep].assign(ids.begin(), ids.begin() + size);
    std::sort(plan.kept[rep].begin(), plan.kept[rep].end());
  }
  return plan;
}

namespace {

// Scores subjects restricted to `alive` rows; `alive == nullptr` means all.
// Returns scores only for alive subjects (others get NaN) and appends
// subjects with no defined cells to `unscored` if given.
void masked_subject_scores(const ComembershipView& t,
                           const MeanComembership& tbar,
                           const std::vector<std::uint8_t>* alive,
                           std::vector<double>& out,
                           std::vector<int>* unscored) {
  int n = t.n();
  out.assign(n, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < n; ++i) {
    if (alive && !(*alive)[i]) continue;
    double joined_mass = 0.0, split_mass = 0.0;
    int joined_cells = 0, split_cells = 0;
    for (int j = 0; j < n; ++j) {
      if (alive && !(*alive)[j]) continue;
      if (!tbar.defined(i, j)) continue;
      if (t.at(i, j) == CoCell::together) {
        joined_mass += tbar.at(i, j);
        ++joined_cells;
      } else {
        split_mass += 1.0 - tbar.at(i, j);
        ++split_cells;
      }
    }
    if (joined_cells == 0 && split_cells == 0) {
      out[i] = 0.0;
      if (unscored) unscored->push_back(i);
      continue;
    }
    double joined = joined_cells > 0 ? joined_mass / joined_cells : 1.0;
    double split = split_cells > 0 ? split_mass / split_cells : 1.0;
    out[i] = joined + split - 1.0;
  }
}

}  // namespace

std::vector<double> subject_scores(const ComembershipView& t,
                                   const MeanComembership& tbar) {
  if (t.n() != tbar.n) {
    throw Error::validation("co-assignment matrices have mixed sizes");
  }
  std::vector<double> scores;
  masked_subject_scores(t, tbar, nullptr, scores, nullptr);
  return scores;
}

ConcordanceResult trimmed_score(const ComembershipView& t,
                                const MeanComembership& tbar,
                                double rho_percent) {
  if (t.n() != tbar.n) {
    throw Error::validation("co-assignment matrices have mixed sizes");
  }
  if (!(rho_percent >= 0.0) || rho_percent >= 100.0) {
    throw Error::validation("trim percentage must be in [0, 100), got " +
                            std::to_string(rho_percent));
  }
  int n = t.n();
  int n_drop = static_cast<int>(std::floor(rho_percent * n / 100.0));
  ConcordanceResult result;
  result.rho_percent = rho_percent;
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<double> scores;
  masked_subject_scores(t, tbar, &alive, scores, &result.unscored_subjects);
  result.per_subject = scores;
  for (int round = 0; round < n_drop; ++round) {
    int worst = -1;
    for (int i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      if (worst < 0 || scores[i] < scores[worst]) worst = i;
    }
    alive[worst] = 0;
    result.dropped.push_back(worst);
    masked_subject_scores(t, tbar, &alive, scores, nullptr);
  }
  double total = 0.0;
  int survivors = 0;
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    total += scores[i];
    ++survivors;
  }
  result.trimmed_score = total / survivors;
  return result;
}

std::optional<double> feature_concordance(const FeatureMask& full_selection,
                                          std::span<const double> sub_freq) {
  if (static_cast<int>(sub_freq.size()) != full_selection.size()) {
    throw Error::validation("selection frequency length does not match mask");
  }
  int selected = full_selection.count();
  if (selected == 0) {
    throw Error::validation("full-data fit selected no features");
  }
  if (selected == full_selection.size()) return std::nullopt;
  double kept_mass = 0.0, absent_mass = 0.0;
  for (int j = 0; j < full_selection.size(); ++j) {
    double f = sub_freq[j];
    if (!(f >= 0.0) || !(f <= 1.0)) {
      throw Error::validation("selection frequencies must lie in [0, 1]");
    }
    if (full_selection[j]) {
      kept_mass += f;
    } else {
      absent_mass += 1.0 - f;
    }
  }
  double kept = kept_mass / selected;
  double absent = absent_mass / (full_selection.size() - selected);
  return kept + absent - 1.0;
}

S4KResult s4_estimate_k(const DataMatrix& x, int k_min, int k_max,
                        const S4Options& options) {
  int lo = std::max(2, k_min);
  if (k_min > k_max || lo > k_max) {
    throw Error::validation("cluster-count range [" + std::to_string(k_min) +
                            ", " + std::to_string(k_max) + "] is invalid");
  }
  if (!(options.s0 >= 0.0) || !(options.s0 <= 1.0)) {
    throw Error::validation("no-cluster threshold s0 must be in [0, 1], got " +
                            std::to_string(options.s0));
  }
  SubsamplePlan plan = make_plan(x.n, options.fraction, options.b,
                                 derive_seed(options.seed, {seed_tag::plan}));
  if (k_max > plan.kept_size()) {
    throw Error::validation("k_max=" + std::to_string(k_max) +
                            " exceeds the subsample size " +
                            std::to_string(plan.kept_size()));
  }
  int n_k = k_max - lo + 1;

  // Full-data reference partitions, one per k.
  std::vector<Partition> full_parts(n_k);
  parallel_for(n_k, options.threads, [&](int ki) {
    int k = lo + ki;
    KMeansOptions ko;
    ko.restarts = options.restarts;
    ko.seed = derive_seed(options.seed,
                          {seed_tag::full_fit, static_cast<std::uint64_t>(k)});
    full_parts[ki] = kmeans(x, k, {}, ko).partition;
  });

  // Subsample partitions: task b owns its slot, so any thread count yields
  // the same reduction below.
  std::vector<std::vector<std::vector<int>>> sub_labels(
      plan.b(), std::vector<std::vector<int>>(n_k));
  parallel_for(plan.b(), options.threads, [&](int rep) {
    DataMatrix xb = x.rows_subset(plan.kept[rep]);
    for (int ki = 0; ki < n_k; ++ki) {
      int k = lo + ki;
      KMeansOptions ko;
      ko.restarts = options.subsample_restarts;
      ko.seed = derive_seed(options.seed,
                            {seed_tag::sub_fit, static_cast<std::uint64_t>(rep),
                             static_cast<std::uint64_t>(k)});
      sub_labels[rep][ki] = kmeans(xb, k, {}, ko).partition.labels;
    }
  });

  std::vector<std::uint16_t> counts = plan.pair_counts();
  S4KResult result;
  std::size_t nn = static_cast<std::size_t>(x.n) * x.n;
  for (int ki = 0; ki < n_k; ++ki) {
    // Sum restricted co-assignments across subsamples; sums are exact small
    // integers, so accumulation order cannot matter.
    std::vector<std::uint16_t> together(nn, 0);
    for (int rep = 0; rep < plan.b(); ++rep) {
      const auto& rows = plan.kept[rep];
      const auto& labels = sub_labels[rep][ki];
      for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t c = a; c < rows.size(); ++c) {
          if (labels[a] != labels[c]) continue;
          ++together[static_cast<std::size_t>(rows[a]) * x.n + rows[c]];
          if (c != a) {
            ++together[static_cast<std::size_t>(rows[c]) * x.n + rows[a]];
          }
        }
      }
    }
    MeanComembership tbar;
    tbar.n = x.n;
    tbar.means.resize(nn);
    tbar.counts.assign(counts.begin(), counts.end());
    for (std::size_t idx = 0; idx < nn; ++idx) {
      tbar.means[idx] = counts[idx] > 0
                            ? static_cast<double>(together[idx]) / counts[idx]
                            : 0.0;
    }
    ComembershipView t = comembership(full_parts[ki]);
    ConcordanceResult cell = trimmed_score(t, tbar, options.rho);
    result.k_values.push_back(lo + ki);
    result.scores.push_back(cell.trimmed_score);
    result.details.push_back(std::move(cell));
  }

  int best = 0;
  for (int i = 1; i < n_k; ++i) {
    if (result.scores[i] >= result.scores[best]) best = i;  // ties -> larger k
  }
  result.s_max = result.scores[best];
  result.k_hat = result.s_max < options.s0 ? 1 : result.k_values[best];
  return result;
}

}  // namespace sparseclust
