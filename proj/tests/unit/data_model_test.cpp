#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "sparseclust/data_model.hpp"
#include "sparseclust/error.hpp"
#include "sparseclust/rng.hpp"

using namespace sparseclust;

namespace {

DataMatrix random_matrix(int n, int p, std::uint64_t seed) {
  Rng rng(seed);
  DataMatrix x(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) x(i, j) = rng.normal();
  return x;
}

Partition random_partition(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> labels(n);
  for (;;) {
    std::vector<int> sizes(k, 0);
    for (int i = 0; i < n; ++i) {
      labels[i] = rng.uniform_index(k);
      ++sizes[labels[i]];
    }
    bool ok = true;
    for (int c = 0; c < k; ++c) ok = ok && sizes[c] > 0;
    if (ok) return Partition(labels, k);
  }
}

}  // namespace

TEST_SUITE("data_model") {

TEST_CASE("matrix construction validates shape and finiteness") {
  CHECK_NOTHROW(DataMatrix(2, 1, {0.0, 1.0}));
  CHECK_THROWS_AS(DataMatrix(1, 2, {0.0, 1.0}), Error);       // n < 2
  CHECK_THROWS_AS(DataMatrix(2, 2, {0.0, 1.0, 2.0}), Error);  // size mismatch
  CHECK_THROWS_AS(
      DataMatrix(2, 1, {0.0, std::numeric_limits<double>::quiet_NaN()}), Error);
  CHECK_THROWS_AS(
      DataMatrix(2, 1, {std::numeric_limits<double>::infinity(), 0.0}), Error);
}

TEST_CASE("matrix indexing is row-major") {
  DataMatrix x(2, 3, {1, 2, 3, 4, 5, 6});
  CHECK(x(0, 0) == 1);
  CHECK(x(0, 2) == 3);
  CHECK(x(1, 0) == 4);
  CHECK(x.row(1)[2] == 6);
}

TEST_CASE("rows_subset copies rows in the requested order") {
  DataMatrix x(3, 2, {1, 2, 3, 4, 5, 6});
  std::vector<int> ids{2, 0, 2};
  DataMatrix s = x.rows_subset(ids);
  CHECK(s.n == 3);
  CHECK(s.p == 2);
  CHECK(s(0, 0) == 5);
  CHECK(s(1, 0) == 1);
  CHECK(s(2, 1) == 6);
}

TEST_CASE("partition validates coverage of every cluster id") {
  CHECK_NOTHROW(Partition({0, 1, 0}, 2));
  CHECK_THROWS_AS(Partition({0, 2, 0}, 2), Error);  // label out of range
  CHECK_THROWS_AS(Partition({0, 0, 0}, 2), Error);  // cluster 1 empty
  CHECK_THROWS_AS(Partition({-1, 0, 1}, 2), Error);
  Partition p({1, 0, 1, 1}, 2);
  CHECK(p.n() == 4);
  CHECK(p.cluster_sizes() == std::vector<int>{1, 3});
}

TEST_CASE("feature mask counting") {
  FeatureMask m(4);
  CHECK(m.count() == 0);
  CHECK_FALSE(m.all());
  m.selected[1] = 1;
  m.selected[3] = 1;
  CHECK(m.count() == 2);
  CHECK(m[1]);
  CHECK_FALSE(m[0]);
  m.selected[0] = m.selected[2] = 1;
  CHECK(m.all());
}

TEST_CASE("co-assignment of a full partition") {
  Partition p({0, 0, 1, 1}, 2);
  ComembershipView t = comembership(p);
  CHECK(t.n() == 4);
  for (int i = 0; i < 4; ++i) CHECK(t.at(i, i) == CoCell::together);
  CHECK(t.at(0, 1) == CoCell::together);
  CHECK(t.at(1, 0) == CoCell::together);
  CHECK(t.at(2, 3) == CoCell::together);
  CHECK(t.at(0, 2) == CoCell::apart);
  CHECK(t.at(3, 1) == CoCell::apart);
}

TEST_CASE("restricted co-assignment marks absent rows as missing") {
  // Subsample rows {0, 2, 3} of a 5-sample dataset, clustered as {0}, {2, 3}.
  Partition sub({0, 1, 1}, 2);
  std::vector<int> kept{0, 2, 3};
  ComembershipView t = restricted_comembership(sub, kept, 5);
  CHECK(t.n() == 5);
  CHECK(t.at(0, 0) == CoCell::together);
  CHECK(t.at(2, 3) == CoCell::together);
  CHECK(t.at(0, 2) == CoCell::apart);
  CHECK(t.at(0, 1) == CoCell::missing);
  CHECK(t.at(1, 1) == CoCell::missing);
  CHECK(t.at(4, 3) == CoCell::missing);
}

TEST_CASE("mean co-assignment averages only defined cells") {
  // View A: pairs on rows {0,1,2}; view B: pairs on rows {1,2,3}.
  ComembershipView a = restricted_comembership(Partition({0, 0, 1}, 2),
                                               std::vector<int>{0, 1, 2}, 4);
  ComembershipView b = restricted_comembership(Partition({0, 1, 1}, 2),
                                               std::vector<int>{1, 2, 3}, 4);
  std::vector<ComembershipView> views{a, b};
  MeanComembership m = mean_comembership(views);
  CHECK(m.n == 4);
  // (0,1): only view A has an opinion -> together once out of one.
  CHECK(m.defined(0, 1));
  CHECK(m.at(0, 1) == 1.0);
  // (1,2): A says apart, B says apart -> 0 over two opinions.
  CHECK(m.at(1, 2) == 0.0);
  // (2,3): only B -> together.
  CHECK(m.at(2, 3) == 1.0);
  // (0,3): nobody saw both rows.
  CHECK_FALSE(m.defined(0, 3));
  CHECK(m.defined(1, 1));
  CHECK(m.at(1, 1) == 1.0);
}

TEST_CASE("mean co-assignment rejects mixed sizes") {
  ComembershipView a(3), b(4);
  std::vector<ComembershipView> views{a, b};
  CHECK_THROWS_AS(mean_comembership(views), Error);
}

TEST_CASE("sum-of-squares identity holds feature-wise") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DataMatrix x = random_matrix(37, 4, 100 + seed);
    Partition p = random_partition(37, 3, 200 + seed);
    auto wcss = wcss_per_feature(x, p);
    auto tss = tss_per_feature(x);
    auto bcss = bcss_per_feature(x, p);
    REQUIRE(wcss.size() == 4);
    for (int j = 0; j < 4; ++j) {
      CHECK(wcss[j] >= 0.0);
      CHECK(bcss[j] >= -1e-9);
      CHECK(std::abs(tss[j] - (wcss[j] + bcss[j])) <=
            1e-9 * std::max(1.0, std::abs(tss[j])));
    }
  }
}

TEST_CASE("centroid form equals the pairwise form of the within spread") {
  // sum_{i in c} (x_ij - mean_cj)^2 == sum_{i<i' in c} (x_ij - x_i'j)^2 / n_c
  DataMatrix x = random_matrix(25, 3, 7);
  Partition p = random_partition(25, 4, 8);
  auto wcss = wcss_per_feature(x, p);
  for (int j = 0; j < 3; ++j) {
    double pairwise = 0.0;
    for (int c = 0; c < p.k; ++c) {
      double acc = 0.0;
      int size = 0;
      for (int i = 0; i < x.n; ++i) {
        if (p.labels[i] != c) continue;
        ++size;
        for (int i2 = i + 1; i2 < x.n; ++i2) {
          if (p.labels[i2] != c) continue;
          double d = x(i, j) - x(i2, j);
          acc += d * d;
        }
      }
      pairwise += acc / size;
    }
    CHECK(std::abs(wcss[j] - pairwise) <=
          1e-9 * std::max(1.0, std::abs(wcss[j])));
  }
}

TEST_CASE("one cluster per sample has zero within spread") {
  DataMatrix x = random_matrix(6, 2, 3);
  std::vector<int> labels{0, 1, 2, 3, 4, 5};
  auto wcss = wcss_per_feature(x, Partition(labels, 6));
  for (double w : wcss) CHECK(w == 0.0);
}

}  // TEST_SUITE
