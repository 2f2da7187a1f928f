#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sparseclust {

// Dense row-major numeric matrix: n samples by p features.
struct DataMatrix {
  int n = 0;
  int p = 0;
  std::vector<double> values;  // size n * p, row-major

  DataMatrix() = default;
  DataMatrix(int n_rows, int n_cols);  // zero-filled
  // Validates n >= 2, p >= 1, size match, and that every entry is finite.
  DataMatrix(int n_rows, int n_cols, std::vector<double> data);

  double operator()(int i, int j) const {
    return values[static_cast<std::size_t>(i) * p + j];
  }
  double& operator()(int i, int j) {
    return values[static_cast<std::size_t>(i) * p + j];
  }
  const double* row(int i) const {
    return values.data() + static_cast<std::size_t>(i) * p;
  }
  double* row(int i) { return values.data() + static_cast<std::size_t>(i) * p; }

  // Copies the listed rows (in the given order) into a new matrix.
  DataMatrix rows_subset(std::span<const int> row_ids) const;
};

// Hard clustering of n samples into k non-empty clusters labeled 0..k-1.
struct Partition {
  std::vector<int> labels;
  int k = 0;

  Partition() = default;
  // Validates every label is in [0, k) and every cluster id is occupied.
  Partition(std::vector<int> assignment, int n_clusters);

  int n() const { return static_cast<int>(labels.size()); }
  std::vector<int> cluster_sizes() const;
};

// Binary feature-selection mask over p features.
struct FeatureMask {
  std::vector<std::uint8_t> selected;

  FeatureMask() = default;
  explicit FeatureMask(int n_features) : selected(n_features, 0) {}

  int size() const { return static_cast<int>(selected.size()); }
  int count() const;
  bool all() const;
  bool operator[](int j) const { return selected[j] != 0; }
};

// One cell of a pairwise co-assignment matrix.  "missing" marks pairs that a
// partial clustering (e.g. of a subsample) says nothing about.
enum class CoCell : std::int8_t { apart = 0, together = 1, missing = -1 };

// Symmetric n-by-n co-assignment matrix.  The diagonal of a full clustering
// is "together" by construction.
class ComembershipView {
 public:
  ComembershipView() = default;
  explicit ComembershipView(int n, CoCell fill = CoCell::missing);

  int n() const { return n_; }
  CoCell at(int i, int j) const {
    return static_cast<CoCell>(cells_[static_cast<std::size_t>(i) * n_ + j]);
  }
  void set(int i, int j, CoCell value);

 private:
  int n_ = 0;
  std::vector<std::int8_t> cells_;
};

// Entry-wise average of several co-assignment matrices where missing cells
// are excluded from their cell's average.  counts[i*n+j] is the number of
// matrices that had an opinion about the pair; 0 means the mean is undefined.
struct MeanComembership {
  int n = 0;
  std::vector<double> means;
  std::vector<int> counts;

  bool defined(int i, int j) const {
    return counts[static_cast<std::size_t>(i) * n + j] > 0;
  }
  double at(int i, int j) const {
    return means[static_cast<std::size_t>(i) * n + j];
  }
};

// Full-data co-assignment matrix of a partition (no missing cells).
ComembershipView comembership(const Partition& partition);

// Co-assignment matrix of a partition over a subsample, embedded in the
// full index space: rows/columns not in kept_rows are entirely missing.
// kept_rows[i] is the full-data index of subsample row i.
ComembershipView restricted_comembership(const Partition& partition,
                                         std::span<const int> kept_rows,
                                         int full_n);

MeanComembership mean_comembership(std::span<const ComembershipView> views);

// Per-feature within-cluster sum of squared deviations from cluster means.
std::vector<double> wcss_per_feature(const DataMatrix& x,
                                     const Partition& partition);

// Per-feature total sum of squares around the grand mean.
std::vector<double> tss_per_feature(const DataMatrix& x);

// Per-feature between-cluster sum of squares; equals tss - wcss feature-wise.
std::vector<double> bcss_per_feature(const DataMatrix& x,
                                     const Partition& partition);

}  // namespace sparseclust
