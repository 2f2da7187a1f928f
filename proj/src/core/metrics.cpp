#include "sparseclust/metrics.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "sparseclust/error.hpp"

namespace sparseclust {

namespace {

// Relabel arbitrary ids to dense 0..g-1 so contingency tables stay compact.
std::vector<int> densify(std::span<const int> labels, int& groups) {
  std::unordered_map<int, int> map;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = map.emplace(labels[i], static_cast<int>(map.size()));
    out[i] = it->second;
  }
  groups = static_cast<int>(map.size());
  return out;
}

double choose2(double m) { return m * (m - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw Error::validation("label vectors differ in length: " +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
  if (a.empty()) {
    throw Error::validation("label vectors are empty");
  }
  int ga = 0, gb = 0;
  std::vector<int> da = densify(a, ga);
  std::vector<int> db = densify(b, gb);
  std::vector<double> table(static_cast<std::size_t>(ga) * gb, 0.0);
  std::vector<double> row(ga, 0.0), col(gb, 0.0);
  for (std::size_t i = 0; i < da.size(); ++i) {
    table[static_cast<std::size_t>(da[i]) * gb + db[i]] += 1.0;
    row[da[i]] += 1.0;
    col[db[i]] += 1.0;
  }
  double sum_cells = 0.0;
  for (double c : table) sum_cells += choose2(c);
  double sum_rows = 0.0;
  for (double r : row) sum_rows += choose2(r);
  double sum_cols = 0.0;
  for (double c : col) sum_cols += choose2(c);
  double total = choose2(static_cast<double>(a.size()));
  double expected = sum_rows * sum_cols / total;
  double maximum = 0.5 * (sum_rows + sum_cols);
  double denom = maximum - expected;
  if (denom == 0.0) return 1.0;  // both partitions degenerate the same way
  return (sum_cells - expected) / denom;
}

double adjusted_rand_index(const Partition& a, const Partition& b) {
  return adjusted_rand_index(std::span<const int>(a.labels),
                             std::span<const int>(b.labels));
}

double jaccard_index(const FeatureMask& a, const FeatureMask& b) {
  if (a.size() != b.size()) {
    throw Error::validation("feature masks differ in length: " +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
  int both = 0, either = 0;
  for (int j = 0; j < a.size(); ++j) {
    bool ina = a[j], inb = b[j];
    both += ina && inb;
    either += ina || inb;
  }
  if (either == 0) {
    throw Error::validation("both feature masks are empty");
  }
  return static_cast<double>(both) / either;
}

double rmse_counts(std::span<const int> estimated, std::span<const int> truth) {
  if (estimated.size() != truth.size() || estimated.empty()) {
    throw Error::validation("count vectors must be equal-length and non-empty");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < estimated.size(); ++i) {
    double d = static_cast<double>(estimated[i]) - truth[i];
    sum += d * d;
  }
  return std::sqrt(sum / estimated.size());
}

double rmse_counts(std::span<const int> estimated, int true_k) {
  const std::vector<int> truth(estimated.size(), true_k);
  return rmse_counts(estimated, truth);
}

}  // namespace sparseclust
