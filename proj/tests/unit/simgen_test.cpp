#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "sparseclust/data_model.hpp"
#include "sparseclust/error.hpp"
#include "sparseclust/rng.hpp"
#include "sparseclust/simgen.hpp"

using namespace sparseclust;

namespace {

std::vector<double> cluster_mean(const DataMatrix& x, const Partition& truth,
                                 int cluster, int j_begin, int j_end) {
  std::vector<double> mean(1, 0.0);
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < x.n; ++i) {
    if (truth.labels[i] != cluster) continue;
    for (int j = j_begin; j < j_end; ++j) {
      sum += x(i, j);
      ++count;
    }
  }
  mean[0] = sum / count;
  return mean;
}

std::vector<double> centroid(const DataMatrix& x, const Partition& truth,
                             int cluster) {
  std::vector<double> c(x.p, 0.0);
  int count = 0;
  for (int i = 0; i < x.n; ++i) {
    if (truth.labels[i] != cluster) continue;
    ++count;
    for (int j = 0; j < x.p; ++j) c[j] += x(i, j);
  }
  for (double& v : c) v /= count;
  return c;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d2 = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    d2 += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(d2);
}

// Greedily matches each cluster centroid to its nearest design center and
// checks the match is a bijection within tolerance.
void check_centers(const LabeledDataset& data,
                   const std::vector<std::vector<double>>& centers,
                   double tol) {
  REQUIRE(data.truth.has_value());
  std::vector<bool> used(centers.size(), false);
  for (int c = 0; c < data.truth->k; ++c) {
    std::vector<double> m = centroid(data.x, *data.truth, c);
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < centers.size(); ++t) {
      double d = dist(m, centers[t]);
      if (d < best_d) {
        best_d = d;
        best = t;
      }
    }
    CHECK(best_d < tol);
    CHECK(!used[best]);
    used[best] = true;
  }
}

double min_cross_pair_distance(const DataMatrix& x, const Partition& truth) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.n; ++i) {
    for (int j = i + 1; j < x.n; ++j) {
      if (truth.labels[i] == truth.labels[j]) continue;
      double d2 = 0.0;
      for (int f = 0; f < x.p; ++f) {
        double d = x(i, f) - x(j, f);
        d2 += d * d;
      }
      best = std::min(best, std::sqrt(d2));
    }
  }
  return best;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST_SUITE("simgen") {

TEST_CASE("design 1 is structureless uniform noise") {
  LabeledDataset d = generate_setting(1, 11);
  CHECK(d.x.n == 200);
  CHECK(d.x.p == 10);
  CHECK(!d.truth.has_value());
  CHECK(!d.true_features.has_value());
  CHECK(d.design_id == "setting1");
  CHECK(d.seed == 11);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (double v : d.x.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  CHECK(lo >= 0.0);
  CHECK(hi <= 1.0);
  CHECK(sum / d.x.values.size() == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("design 2 plants three unequal blobs at fixed centers") {
  LabeledDataset d = generate_setting(2, 12);
  CHECK(d.x.n == 100);
  CHECK(d.x.p == 2);
  REQUIRE(d.truth.has_value());
  CHECK(d.truth->k == 3);
  std::vector<int> sizes = d.truth->cluster_sizes();
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{25, 25, 50});
  check_centers(d, {{0.0, 0.0}, {0.0, 5.0}, {5.0, 3.0}}, 1.0);
  // The size-50 cluster sits at (5, 3).
  for (int c = 0; c < 3; ++c) {
    if (d.truth->cluster_sizes()[c] == 50)
      CHECK(dist(centroid(d.x, *d.truth, c), {5.0, 3.0}) < 1.0);
  }
}

TEST_CASE("designs 3 and 4 enforce the cross-cluster separation floor") {
  for (int id : {3, 4}) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      LabeledDataset d = generate_setting(id, seed);
      CHECK(d.x.p == (id == 3 ? 3 : 10));
      REQUIRE(d.truth.has_value());
      CHECK(d.truth->k == 4);
      for (int s : d.truth->cluster_sizes()) CHECK((s == 25 || s == 50));
      CHECK(min_cross_pair_distance(d.x, *d.truth) >= 1.0);
    }
  }
}

TEST_CASE("designs 5, 9, 10 are shifted noisy diagonals") {
  struct Case {
    int id;
    std::vector<double> shift;
  };
  for (const Case& c : {Case{5, {10.0, 10.0, 10.0}},
                        Case{9, {1.0, 1.0, 1.0}},
                        Case{10, {1.0, 0.0, 0.0}}}) {
    LabeledDataset d = generate_setting(c.id, 13);
    CHECK(d.x.n == 200);
    CHECK(d.x.p == 3);
    REQUIRE(d.truth.has_value());
    CHECK(d.truth->k == 2);
    CHECK(d.truth->cluster_sizes() == std::vector<int>{100, 100});
    std::vector<double> m0 = centroid(d.x, *d.truth, 0);
    std::vector<double> m1 = centroid(d.x, *d.truth, 1);
    for (int j = 0; j < 3; ++j)
      CHECK(std::fabs((m1[j] - m0[j]) - c.shift[j]) < 0.06);
    // Coordinates within a cluster ride the same diagonal parameter, so they
    // are strongly correlated.
    std::vector<double> f0, f1;
    for (int i = 0; i < 100; ++i) {
      f0.push_back(d.x(i, 0));
      f1.push_back(d.x(i, 1));
    }
    CHECK(correlation(f0, f1) > 0.85);
  }
}

TEST_CASE("designs 6-8 place four equal blobs on growing squares") {
  for (const auto& [id, side] : std::vector<std::pair<int, double>>{
           {6, 2.5}, {7, 3.0}, {8, 3.5}}) {
    LabeledDataset d = generate_setting(id, 14);
    CHECK(d.x.n == 100);
    CHECK(d.x.p == 2);
    REQUIRE(d.truth.has_value());
    CHECK(d.truth->k == 4);
    CHECK(d.truth->cluster_sizes() == std::vector<int>(4, 25));
    check_centers(d,
                  {{0.0, 0.0}, {0.0, side}, {side, 0.0}, {side, side}},
                  1.2);
  }
}

TEST_CASE("design ids outside 1-10 are rejected") {
  CHECK_THROWS_AS(generate_setting(0, 1), Error);
  CHECK_THROWS_AS(generate_setting(11, 1), Error);
}

TEST_CASE("high-dimensional independent design plants the first q features") {
  LabeledDataset d = generate_highdim_independent(50, 0.8, 15);
  CHECK(d.x.n == 99);
  CHECK(d.x.p == 1000);
  REQUIRE(d.truth.has_value());
  CHECK(d.truth->cluster_sizes() == std::vector<int>(3, 33));
  REQUIRE(d.true_features.has_value());
  CHECK(d.true_features->count() == 50);
  for (int j = 0; j < 50; ++j) CHECK(d.true_features->selected[j] == 1);
  CHECK(d.design_id == "hd-indep");
  // Informative-feature means are +u / 0 / -u in cluster order.
  const double expected[3] = {0.8, 0.0, -0.8};
  for (int c = 0; c < 3; ++c) {
    CHECK(std::fabs(cluster_mean(d.x, *d.truth, c, 0, 50)[0] - expected[c]) <
          0.1);
    CHECK(std::fabs(cluster_mean(d.x, *d.truth, c, 50, 1000)[0]) < 0.05);
  }
  CHECK_THROWS_AS(generate_highdim_independent(0, 0.8, 1), Error);
  CHECK_THROWS_AS(generate_highdim_independent(1000, 0.8, 1), Error);
}

TEST_CASE("block-mean design matches its published block table") {
  LabeledDataset d = generate_s1_design(16);
  CHECK(d.x.n == 99);
  CHECK(d.x.p == 300);
  REQUIRE(d.truth.has_value());
  CHECK(d.truth->cluster_sizes() == std::vector<int>(3, 33));
  REQUIRE(d.true_features.has_value());
  CHECK(d.true_features->count() == 150);
  for (int j = 0; j < 150; ++j) CHECK(d.true_features->selected[j] == 1);
  const double block_mean[3][3] = {
      {3.0, 0.6, 0.0}, {-1.0, 0.0, 0.0}, {-1.0, -1.5, 0.0}};
  const int bounds[4] = {0, 50, 150, 300};
  for (int c = 0; c < 3; ++c) {
    for (int b = 0; b < 3; ++b) {
      double m = cluster_mean(d.x, *d.truth, c, bounds[b], bounds[b + 1])[0];
      CHECK(std::fabs(m - block_mean[c][b]) < 0.1);
    }
  }
}

TEST_CASE("gene-module design appends noise genes after the module block") {
  GeneModuleParams params;
  params.modules = 4;
  params.module_size_mean = 8.0;
  params.n_noise = 40;
  LabeledDataset d = generate_gene_modules(params, 17);
  REQUIRE(d.truth.has_value());
  CHECK(d.truth->k == 3);
  CHECK(d.x.n == d.truth->n());
  REQUIRE(d.true_features.has_value());
  const int p_signal = d.x.p - 40;
  CHECK(p_signal >= 4);      // at least one gene per module
  CHECK(p_signal < 4 * 60);  // each module size stays below the Wishart df
  CHECK(d.true_features->count() == p_signal);
  for (int j = 0; j < p_signal; ++j) CHECK(d.true_features->selected[j] == 1);
  for (int j = p_signal; j < d.x.p; ++j)
    CHECK(d.true_features->selected[j] == 0);
  // Module genes ride templates in U(4,10); noise genes sit near their own
  // baseline in the same range.  Everything should live well inside (0, 14).
  for (double v : d.x.values) {
    CHECK(v > -10.0);
    CHECK(v < 24.0);
  }
}

TEST_CASE("gene-module parameter validation") {
  GeneModuleParams p;
  p.modules = 0;
  CHECK_THROWS_AS(generate_gene_modules(p, 1), Error);
  p = {};
  p.phi_cov = 1.0;
  CHECK_THROWS_AS(generate_gene_modules(p, 1), Error);
  p = {};
  p.effect_lower = 3.0;
  p.effect_upper = 2.0;
  CHECK_THROWS_AS(generate_gene_modules(p, 1), Error);
  p = {};
  p.effect_lower = 6.5;
  p.effect_upper = 7.0;
  CHECK_THROWS_AS(generate_gene_modules(p, 1), Error);
  p = {};
  p.wishart_df = 1.0;
  CHECK_THROWS_AS(generate_gene_modules(p, 1), Error);
}

TEST_CASE("scalar inverse-Wishart draws match the inverse-gamma mean") {
  Rng rng(42);
  const double c = 2.0, df = 6.0;
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> draw = sample_inverse_wishart({c}, 1, df, rng);
    REQUIRE(draw.size() == 1);
    CHECK(draw[0] > 0.0);
    sum += draw[0];
  }
  // E[X] = c / (df - 2) = 0.5 in one dimension.
  CHECK(sum / 10000 == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("bivariate inverse-Wishart draws match the matrix mean") {
  Rng rng(43);
  const double df = 10.0;
  const std::vector<double> phi = {1.0, 0.3, 0.3, 1.0};
  double sum00 = 0.0, sum01 = 0.0, sum11 = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    std::vector<double> m = sample_inverse_wishart(phi, 2, df, rng);
    REQUIRE(m.size() == 4);
    CHECK(m[1] == m[2]);                      // symmetric
    CHECK(m[0] > 0.0);
    CHECK(m[0] * m[3] - m[1] * m[2] > 0.0);   // positive definite (2x2)
    sum00 += m[0];
    sum01 += m[1];
    sum11 += m[3];
  }
  // E[X] = phi / (df - dim - 1) = phi / 7.
  CHECK(sum00 / draws == doctest::Approx(1.0 / 7.0).epsilon(0.07));
  CHECK(sum11 / draws == doctest::Approx(1.0 / 7.0).epsilon(0.07));
  CHECK(std::fabs(sum01 / draws - 0.3 / 7.0) < 0.01);
}

TEST_CASE("inverse-Wishart validation") {
  Rng rng(44);
  CHECK_THROWS_AS(sample_inverse_wishart({1.0}, 0, 5.0, rng), Error);
  CHECK_THROWS_AS(sample_inverse_wishart({1.0, 0.3}, 2, 5.0, rng), Error);
  CHECK_THROWS_AS(sample_inverse_wishart({1.0, 0.3, 0.3, 1.0}, 2, 1.0, rng),
                  Error);  // df <= dim - 1
  CHECK_THROWS_AS(sample_inverse_wishart({1.0, 0.3, 0.2, 1.0}, 2, 5.0, rng),
                  Error);  // asymmetric scale
}

TEST_CASE("generation is seed-deterministic and seed-sensitive") {
  for (const char* design : {"setting2", "setting5", "hd-indep", "s1"}) {
    LabeledDataset a = generate_by_name(design, {}, 7);
    LabeledDataset b = generate_by_name(design, {}, 7);
    LabeledDataset c = generate_by_name(design, {}, 8);
    CHECK(a.x.values == b.x.values);
    CHECK(a.x.values != c.x.values);
  }
  GeneModuleParams gm;
  gm.modules = 3;
  gm.module_size_mean = 6.0;
  gm.n_noise = 20;
  LabeledDataset a = generate_gene_modules(gm, 7);
  LabeledDataset b = generate_gene_modules(gm, 7);
  CHECK(a.x.values == b.x.values);
}

TEST_CASE("name dispatch routes parameters and rejects unknown input") {
  LabeledDataset named = generate_by_name("setting3", {}, 5);
  LabeledDataset direct = generate_setting(3, 5);
  CHECK(named.x.values == direct.x.values);
  LabeledDataset hd = generate_by_name("hd-indep", {{"q", 10.0}, {"u", 0.5}}, 5);
  CHECK(hd.true_features->count() == 10);
  LabeledDataset hd_default = generate_by_name("hd-indep", {}, 5);
  CHECK(hd_default.true_features->count() == 50);
  CHECK_THROWS_AS(generate_by_name("nonsense", {}, 1), Error);
  CHECK_THROWS_AS(generate_by_name("setting11", {}, 1), Error);
  CHECK_THROWS_AS(generate_by_name("settingx", {}, 1), Error);
  CHECK_THROWS_AS(generate_by_name("setting2", {{"q", 1.0}}, 1), Error);
  CHECK_THROWS_AS(generate_by_name("hd-indep", {{"bogus", 1.0}}, 1), Error);
  CHECK_THROWS_AS(generate_by_name("hd-indep", {{"q", 2.5}}, 1), Error);
  LabeledDataset gm = generate_by_name(
      "gene-module", {{"modules", 3.0}, {"n-noise", 10.0}}, 5);
  CHECK(gm.x.p == gm.true_features->count() + 10);
}

}  // TEST_SUITE
