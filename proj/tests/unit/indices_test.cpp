#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "sparseclust/data_model.hpp"
#include "sparseclust/error.hpp"
#include "sparseclust/indices.hpp"
#include "sparseclust/rng.hpp"

using namespace sparseclust;

namespace {

DataMatrix blobs3(int per, double sd, std::uint64_t seed) {
  Rng rng(seed);
  const double centers[3][2] = {{0, 0}, {14, 0}, {0, 14}};
  DataMatrix x(3 * per, 2);
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < per; ++i) {
      x(c * per + i, 0) = centers[c][0] + rng.normal(0.0, sd);
      x(c * per + i, 1) = centers[c][1] + rng.normal(0.0, sd);
    }
  }
  return x;
}

// Three coincident pairs: the within spread vanishes exactly at k = 3.
DataMatrix duplicate_pairs() {
  return DataMatrix(6, 2, {0, 0, 0, 0, 10, 0, 10, 0, 5, 8, 5, 8});
}

const std::vector<double>* extra(const IndexCurve& curve, const char* name) {
  for (const auto& [key, values] : curve.extras)
    if (key == name) return &values;
  return nullptr;
}

}  // namespace

TEST_SUITE("indices") {

TEST_CASE("the sweep serves one cached fit per cluster count") {
  DataMatrix x = blobs3(10, 0.6, 1);
  KmeansSweep sweep(x, 5, 9);
  const KMeansFit& first = sweep.fit(3);
  const KMeansFit& again = sweep.fit(3);
  CHECK(&first == &again);
  CHECK(sweep.wcss(3) == first.wcss_weighted);
  CHECK(sweep.restarts() == 5);
  CHECK(sweep.seed() == 9);
  CHECK(&sweep.data() == &x);
}

TEST_CASE("the spread curve never rises with more clusters") {
  DataMatrix x = blobs3(10, 0.8, 2);
  auto curve = wcss_curve(x, 1, 8, 8, 3);
  REQUIRE(curve.size() == 8);
  for (std::size_t i = 1; i < curve.size(); ++i)
    CHECK(curve[i] <= curve[i - 1] + 1e-9);
}

TEST_CASE("variance-ratio criterion peaks at the true count") {
  DataMatrix x = blobs3(12, 0.7, 3);
  KmeansSweep sweep(x, 8, 4);
  IndexCurve c = ch_select(sweep, 1, 8);
  CHECK(c.chosen_k == 3);
  CHECK(c.k_values.front() == 2);  // one cluster has no between-term
  CHECK(c.k_values.back() == 8);
}

TEST_CASE("variance-ratio domain is clamped to n - 1") {
  DataMatrix x(5, 1, {0, 1, 10, 11, 20});
  KmeansSweep sweep(x, 4, 5);
  IndexCurve c = ch_select(sweep, 2, 20);
  CHECK(c.k_values.back() == 4);
}

TEST_CASE("successive-difference criterion peaks at the true count") {
  DataMatrix x = blobs3(12, 0.7, 5);
  KmeansSweep sweep(x, 8, 6);
  IndexCurve c = kl_select(sweep, 2, 7);
  CHECK(c.chosen_k == 3);
  CHECK(c.k_values.back() <= x.n - 2);
}

TEST_CASE("a vanishing successive difference scores infinite") {
  DataMatrix x = duplicate_pairs();
  KmeansSweep sweep(x, 20, 7);
  IndexCurve c = kl_select(sweep, 2, 4);
  REQUIRE(c.k_values == std::vector<int>{2, 3, 4});
  CHECK(std::isinf(c.scores[1]));  // spread is exactly zero from k = 3 on
  CHECK(c.chosen_k == 3);          // first peak wins
}

TEST_CASE("relative-drop rule obeys its cutoff semantics") {
  DataMatrix x = blobs3(12, 0.7, 8);
  KmeansSweep sweep(x, 8, 9);
  // An infinite cutoff accepts the first eligible count...
  CHECK(h_select(sweep, 1, 6, std::numeric_limits<double>::infinity()).chosen_k
        == 2);
  // ...an impossible one falls back to the largest evaluated count...
  CHECK(h_select(sweep, 1, 6, -1.0).chosen_k == 6);
  // ...and the conventional cutoff lands on the true count here.
  IndexCurve c = h_select(sweep, 1, 6);
  CHECK(c.chosen_k == 3);
  CHECK(c.scores[1] > 10.0);   // k = 2 still splits a real group
  CHECK(c.scores[2] <= 10.0);  // k = 3 only shaves noise
}

TEST_CASE("silhouette hand case with a singleton") {
  DataMatrix x(3, 1, {0.0, 0.1, 10.0});
  Partition p({0, 0, 1}, 2);
  // s(0) = (10 - 0.1)/10, s(1) = (9.9 - 0.1)/9.9, singleton contributes 0.
  double expect = (9.9 / 10.0 + 9.8 / 9.9 + 0.0) / 3.0;
  CHECK(mean_silhouette(x, p) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("silhouette of all singletons is zero") {
  DataMatrix x(4, 1, {0, 1, 2, 3});
  CHECK(mean_silhouette(x, Partition({0, 1, 2, 3}, 4)) == 0.0);
  Partition p({0, 1}, 2);
  CHECK_THROWS_AS(mean_silhouette(x, p), Error);  // size mismatch
}

TEST_CASE("silhouette criterion peaks at the true count") {
  DataMatrix x = blobs3(12, 0.7, 10);
  KmeansSweep sweep(x, 8, 11);
  IndexCurve c = silhouette_select(sweep, 2, 7);
  CHECK(c.chosen_k == 3);
  for (double s : c.scores) {
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("gap criterion evaluates one cluster and peaks at the true count") {
  DataMatrix x = blobs3(12, 0.7, 12);
  KmeansSweep sweep(x, 8, 13);
  GapOptions opt;
  opt.b_references = 20;
  opt.seed = 14;
  IndexCurve uniform = gap_select(sweep, 1, 6, GapReference::uniform, opt);
  CHECK(uniform.k_values.front() == 1);
  CHECK(uniform.chosen_k == 3);
  const std::vector<double>* se = extra(uniform, "se");
  REQUIRE(se != nullptr);
  REQUIRE(se->size() == uniform.scores.size());
  for (double s : *se) CHECK(s >= 0.0);

  IndexCurve rotated = gap_select(sweep, 1, 6, GapReference::pca, opt);
  CHECK(rotated.chosen_k == 3);
}

TEST_CASE("gap one-SE variant stops at the first supported count") {
  DataMatrix x = blobs3(12, 0.7, 15);
  KmeansSweep sweep(x, 8, 16);
  GapOptions opt;
  opt.b_references = 20;
  opt.one_se_rule = true;
  opt.seed = 17;
  CHECK(gap_select(sweep, 1, 6, GapReference::uniform, opt).chosen_k == 3);
}

TEST_CASE("gap sees no structure in plain noise") {
  Rng rng(18);
  DataMatrix x(60, 2);
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 2; ++j) x(i, j) = rng.uniform();
  KmeansSweep sweep(x, 8, 19);
  GapOptions opt;
  opt.b_references = 20;
  opt.one_se_rule = true;
  opt.seed = 20;
  IndexCurve c = gap_select(sweep, 1, 6, GapReference::uniform, opt);
  CHECK(c.chosen_k == 1);
}

TEST_CASE("gap validates reference count and degenerate spread") {
  DataMatrix x = blobs3(10, 0.6, 21);
  KmeansSweep sweep(x, 5, 22);
  GapOptions opt;
  opt.b_references = 1;
  CHECK_THROWS_AS(gap_select(sweep, 1, 4, GapReference::uniform, opt), Error);
  opt.b_references = 5;
  DataMatrix dup = duplicate_pairs();
  KmeansSweep dup_sweep(dup, 10, 23);
  CHECK_THROWS_AS(gap_select(dup_sweep, 1, 4, GapReference::uniform, opt),
                  Error);
}

TEST_CASE("jump criterion evaluates one cluster and peaks at the true count") {
  DataMatrix x = blobs3(12, 0.7, 24);
  KmeansSweep sweep(x, 8, 25);
  IndexCurve c = jump_select(sweep, 1, 6);
  CHECK(c.k_values.front() == 1);
  CHECK(c.chosen_k == 3);
  // The default exponent is -p/2; passing it explicitly changes nothing.
  IndexCurve explicit_power = jump_select(sweep, 1, 6, -1.0);
  CHECK(explicit_power.scores == c.scores);
  CHECK(explicit_power.chosen_k == c.chosen_k);
  // A different exponent genuinely changes the curve.
  IndexCurve other = jump_select(sweep, 1, 6, -0.25);
  CHECK(other.scores != c.scores);
}

TEST_CASE("curves are reproducible for a fixed seed") {
  DataMatrix x = blobs3(10, 0.8, 26);
  KmeansSweep a(x, 6, 27), b(x, 6, 27);
  GapOptions opt;
  opt.b_references = 10;
  opt.seed = 28;
  IndexCurve ga = gap_select(a, 1, 5, GapReference::uniform, opt);
  IndexCurve gb = gap_select(b, 1, 5, GapReference::uniform, opt);
  CHECK(ga.scores == gb.scores);
  CHECK(*extra(ga, "se") == *extra(gb, "se"));
}

TEST_CASE("empty evaluable ranges are rejected") {
  DataMatrix x(4, 1, {0, 1, 2, 3});
  KmeansSweep sweep(x, 3, 29);
  CHECK_THROWS_AS(ch_select(sweep, 5, 7), Error);   // above n - 1
  CHECK_THROWS_AS(kl_select(sweep, 3, 2), Error);   // inverted
  CHECK_THROWS_AS(jump_select(sweep, 9, 9), Error); // above n
}

}  // TEST_SUITE
