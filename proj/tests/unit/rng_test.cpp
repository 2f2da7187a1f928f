#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "sparseclust/rng.hpp"

using namespace sparseclust;

TEST_SUITE("rng") {

TEST_CASE("derive_seed is a pure function of seed and path") {
  CHECK(derive_seed(42, {seed_tag::plan, 7}) ==
        derive_seed(42, {seed_tag::plan, 7}));
  CHECK(derive_seed(42, {}) == derive_seed(42, {}));
}

TEST_CASE("derive_seed separates seeds, tags, paths, and path order") {
  CHECK(derive_seed(1, {seed_tag::plan}) != derive_seed(2, {seed_tag::plan}));
  CHECK(derive_seed(1, {seed_tag::plan}) != derive_seed(1, {seed_tag::full_fit}));
  CHECK(derive_seed(1, {seed_tag::plan, 3}) != derive_seed(1, {seed_tag::plan}));
  CHECK(derive_seed(1, {1, 2}) != derive_seed(1, {2, 1}));
  // The raw seed must not collide with its own derived children.
  CHECK(derive_seed(1, {}) != 1);
}

TEST_CASE("derived seeds have no collisions over a realistic tree") {
  std::set<std::uint64_t> seen;
  int inserted = 0;
  for (std::uint64_t tag = 1; tag <= 9; ++tag) {
    for (std::uint64_t a = 0; a < 20; ++a) {
      for (std::uint64_t b = 0; b < 20; ++b) {
        seen.insert(derive_seed(123456789, {tag, a, b}));
        ++inserted;
      }
    }
  }
  CHECK(static_cast<int>(seen.size()) == inserted);
}

TEST_CASE("identical seeds reproduce identical streams") {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
    CHECK(a.uniform_index(17) == b.uniform_index(17));
  }
}

TEST_CASE("a copied generator continues the exact same stream") {
  Rng a(7);
  for (int i = 0; i < 13; ++i) a.normal();  // advance mid-stream
  Rng b = a;
  for (int i = 0; i < 50; ++i) {
    CHECK(a.normal(1.5, 2.0) == b.normal(1.5, 2.0));
    CHECK(a.poisson(4.0) == b.poisson(4.0));
    CHECK(a.chi_squared(9.0) == b.chi_squared(9.0));
  }
}

TEST_CASE("draws respect their supports") {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double v = rng.uniform(-2.0, 3.0);
    CHECK(v >= -2.0);
    CHECK(v < 3.0);
    int idx = rng.uniform_index(7);
    CHECK(idx >= 0);
    CHECK(idx < 7);
    CHECK(rng.poisson(3.0) >= 0);
    CHECK(rng.chi_squared(4.0) > 0.0);
  }
}

TEST_CASE("sample moments land near their targets") {
  Rng rng(11);
  const int draws = 20000;
  double nsum = 0.0, psum = 0.0, csum = 0.0;
  int heads = 0;
  for (int i = 0; i < draws; ++i) {
    nsum += rng.normal(2.0, 1.0);
    psum += rng.poisson(6.0);
    csum += rng.chi_squared(5.0);
    heads += rng.coin();
  }
  CHECK(std::abs(nsum / draws - 2.0) < 0.05);
  CHECK(std::abs(psum / draws - 6.0) < 0.1);
  CHECK(std::abs(csum / draws - 5.0) < 0.15);
  CHECK(std::abs(heads / static_cast<double>(draws) - 0.5) < 0.02);
}

}  // TEST_SUITE
