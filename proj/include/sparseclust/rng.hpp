#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sparseclust {

// Stateless 64-bit mixer used to derive independent child seeds from a root
// seed plus a structural path (task kind, replicate index, cluster count, ...).
// Every stochastic routine in the library owns a private stream derived this
// way, so results do not depend on scheduling or thread count.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(seed ^ 0x5ca1ab1e0ddba11ull);
  for (std::uint64_t v : path) h = splitmix64(h ^ v);
  return h;
}

// Labels for the first path component so unrelated subsystems can never
// collide on a derived stream.
namespace seed_tag {
inline constexpr std::uint64_t plan = 1;       // subsample membership plan
inline constexpr std::uint64_t full_fit = 2;   // full-data fits
inline constexpr std::uint64_t sub_fit = 3;    // subsample fits
inline constexpr std::uint64_t reference = 4;  // null-reference datasets
inline constexpr std::uint64_t split = 5;      // cross-validation halves
inline constexpr std::uint64_t grid = 6;       // penalty-grid construction
inline constexpr std::uint64_t restart = 7;    // k-means restart streams
inline constexpr std::uint64_t bench = 8;      // benchmark replicates
inline constexpr std::uint64_t sim = 9;        // dataset generators
}  // namespace seed_tag

// Thin wrapper around a Mersenne Twister with the handful of draw shapes the
// library needs.  Distribution objects are constructed per call so a copied
// Rng continues the exact same stream (no hidden cached spare values).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  // Uniform integer in [0, n).
  int uniform_index(int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(engine_);
  }
  double normal(double mean = 0.0, double sd = 1.0) {
    return std::normal_distribution<double>(mean, sd)(engine_);
  }
  int poisson(double mean) {
    return std::poisson_distribution<int>(mean)(engine_);
  }
  double chi_squared(double dof) {
    return std::chi_squared_distribution<double>(dof)(engine_);
  }
  bool coin() { return uniform_index(2) == 1; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sparseclust
