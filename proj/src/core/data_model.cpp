#include "sparseclust/data_model.hpp"

#include <cmath>
#include <string>

#include "sparseclust/error.hpp"

namespace sparseclust {

DataMatrix::DataMatrix(int n_rows, int n_cols)
    : n(n_rows),
      p(n_cols),
      values(static_cast<std::size_t>(n_rows) * n_cols, 0.0) {}

DataMatrix::DataMatrix(int n_rows, int n_cols, std::vector<double> data)
    : n(n_rows), p(n_cols), values(std::move(data)) {
  if (n < 2) {
    throw Error::validation("data matrix needs at least 2 rows, got " +
                            std::to_string(n));
  }
  if (p < 1) {
    throw Error::validation("data matrix needs at least 1 column, got " +
                            std::to_string(p));
  }
  if (values.size() != static_cast<std::size_t>(n) * p) {
    throw Error::validation(
        "data matrix value count " + std::to_string(values.size()) +
        " does not match " + std::to_string(n) + "x" + std::to_string(p));
  }
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    if (!std::isfinite(values[idx])) {
      std::size_t i = idx / p, j = idx % p;
      throw Error::validation("non-finite value at row " + std::to_string(i) +
                              ", column " + std::to_string(j));
    }
  }
}

DataMatrix DataMatrix::rows_subset(std::span<const int> row_ids) const {
  DataMatrix out(static_cast<int>(row_ids.size()), p);
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    const double* src = row(row_ids[i]);
    double* dst = out.row(static_cast<int>(i));
    for (int j = 0; j < p; ++j) dst[j] = src[j];
  }
  return out;
}

Partition::Partition(std::vector<int> assignment, int n_clusters)
    : labels(std::move(assignment)), k(n_clusters) {
  if (k < 1) {
    throw Error::validation("partition needs at least 1 cluster, got " +
                            std::to_string(k));
  }
  std::vector<int> sizes(k, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int c = labels[i];
    if (c < 0 || c >= k) {
      throw Error::validation("label " + std::to_string(c) + " at row " +
                              std::to_string(i) + " is outside [0, " +
                              std::to_string(k) + ")");
    }
    ++sizes[c];
  }
  for (int c = 0; c < k; ++c) {
    if (sizes[c] == 0) {
      throw Error::validation("cluster " + std::to_string(c) + " is empty");
    }
  }
}

std::vector<int> Partition::cluster_sizes() const {
  std::vector<int> sizes(k, 0);
  for (int c : labels) ++sizes[c];
  return sizes;
}

int FeatureMask::count() const {
  int total = 0;
  for (std::uint8_t b : selected) total += b != 0;
  return total;
}

bool FeatureMask::all() const { return count() == size(); }

ComembershipView::ComembershipView(int n, CoCell fill)
    : n_(n),
      cells_(static_cast<std::size_t>(n) * n, static_cast<std::int8_t>(fill)) {}

void ComembershipView::set(int i, int j, CoCell value) {
  cells_[static_cast<std::size_t>(i) * n_ + j] = static_cast<std::int8_t>(value);
  cells_[static_cast<std::size_t>(j) * n_ + i] = static_cast<std::int8_t>(value);
}

ComembershipView comembership(const Partition& partition) {
  int n = partition.n();
  ComembershipView view(n, CoCell::apart);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (partition.labels[i] == partition.labels[j]) {
        view.set(i, j, CoCell::together);
      }
    }
  }
  return view;
}

ComembershipView restricted_comembership(const Partition& partition,
                                         std::span<const int> kept_rows,
                                         int full_n) {
  if (static_cast<int>(kept_rows.size()) != partition.n()) {
    throw Error::validation("kept row count " +
                            std::to_string(kept_rows.size()) +
                            " does not match partition size " +
                            std::to_string(partition.n()));
  }
  ComembershipView view(full_n, CoCell::missing);
  for (std::size_t a = 0; a < kept_rows.size(); ++a) {
    for (std::size_t b = a; b < kept_rows.size(); ++b) {
      bool together = partition.labels[a] == partition.labels[b];
      view.set(kept_rows[a], kept_rows[b],
               together ? CoCell::together : CoCell::apart);
    }
  }
  return view;
}

MeanComembership mean_comembership(std::span<const ComembershipView> views) {
  if (views.empty()) {
    throw Error::validation("mean comembership needs at least one matrix");
  }
  int n = views[0].n();
  for (const auto& v : views) {
    if (v.n() != n) {
      throw Error::validation("comembership matrices have mixed sizes");
    }
  }
  MeanComembership out;
  out.n = n;
  out.means.assign(static_cast<std::size_t>(n) * n, 0.0);
  out.counts.assign(static_cast<std::size_t>(n) * n, 0);
  for (const auto& v : views) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        CoCell c = v.at(i, j);
        if (c == CoCell::missing) continue;
        std::size_t idx = static_cast<std::size_t>(i) * n + j;
        out.means[idx] += c == CoCell::together ? 1.0 : 0.0;
        ++out.counts[idx];
      }
    }
  }
  for (std::size_t idx = 0; idx < out.means.size(); ++idx) {
    if (out.counts[idx] > 0) out.means[idx] /= out.counts[idx];
  }
  return out;
}

std::vector<double> wcss_per_feature(const DataMatrix& x,
                                     const Partition& partition) {
  if (partition.n() != x.n) {
    throw Error::validation("partition size " + std::to_string(partition.n()) +
                            " does not match row count " + std::to_string(x.n));
  }
  int k = partition.k, p = x.p;
  std::vector<double> sums(static_cast<std::size_t>(k) * p, 0.0);
  std::vector<int> sizes(k, 0);
  for (int i = 0; i < x.n; ++i) {
    int c = partition.labels[i];
    ++sizes[c];
    const double* r = x.row(i);
    double* s = sums.data() + static_cast<std::size_t>(c) * p;
    for (int j = 0; j < p; ++j) s[j] += r[j];
  }
  for (int c = 0; c < k; ++c) {
    double* s = sums.data() + static_cast<std::size_t>(c) * p;
    for (int j = 0; j < p; ++j) s[j] /= sizes[c];
  }
  std::vector<double> wcss(p, 0.0);
  for (int i = 0; i < x.n; ++i) {
    const double* r = x.row(i);
    const double* mean =
        sums.data() + static_cast<std::size_t>(partition.labels[i]) * p;
    for (int j = 0; j < p; ++j) {
      double d = r[j] - mean[j];
      wcss[j] += d * d;
    }
  }
  return wcss;
}

std::vector<double> tss_per_feature(const DataMatrix& x) {
  int p = x.p;
  std::vector<double> mean(p, 0.0);
  for (int i = 0; i < x.n; ++i) {
    const double* r = x.row(i);
    for (int j = 0; j < p; ++j) mean[j] += r[j];
  }
  for (int j = 0; j < p; ++j) mean[j] /= x.n;
  std::vector<double> tss(p, 0.0);
  for (int i = 0; i < x.n; ++i) {
    const double* r = x.row(i);
    for (int j = 0; j < p; ++j) {
      double d = r[j] - mean[j];
      tss[j] += d * d;
    }
  }
  return tss;
}

std::vector<double> bcss_per_feature(const DataMatrix& x,
                                     const Partition& partition) {
  std::vector<double> tss = tss_per_feature(x);
  std::vector<double> wcss = wcss_per_feature(x, partition);
  for (int j = 0; j < x.p; ++j) {
    double b = tss[j] - wcss[j];
    tss[j] = b > 0.0 ? b : 0.0;  // clamp tiny negative rounding residue
  }
  return tss;
}

}  // namespace sparseclust
