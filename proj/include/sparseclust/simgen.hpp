#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sparseclust/data_model.hpp"
#include "sparseclust/rng.hpp"

namespace sparseclust {

// A generated dataset together with whatever ground truth the design defines.
// `truth` is absent for the structureless design (one cluster); the feature
// mask is present only for high-dimensional designs that plant informative
// features.
struct LabeledDataset {
  DataMatrix x;
  std::optional<Partition> truth;
  std::optional<FeatureMask> true_features;
  std::string design_id;
  std::uint64_t seed = 0;
};

// Parameters of the correlated gene-module design: three sample clusters,
// `modules` blocks of co-expressed features riding on cluster-specific
// template means, plus independent noise features.
struct GeneModuleParams {
  int modules = 10;                 // number of feature modules
  double module_size_mean = 20.0;   // Poisson mean of genes per module
  double sigma1_sq = 0.2;           // subject-level variance around templates
  double sigma2_sq = 1.0;           // noise-gene variance
  int n_noise = 600;                // independent noise genes appended last
  double phi_cov = 0.3;             // off-diagonal weight of the Wishart scale
  double effect_lower = 2.0;        // template-separation constraint, lower
  double effect_upper = 2.5;        // template-separation constraint, upper
  double wishart_df = 60.0;         // inverse-Wishart degrees of freedom
  double cluster_size_means[3] = {40.0, 30.0, 20.0};  // Poisson means
};

// Ten numbered low-dimensional benchmark designs:
//   1  n=200, p=10, iid uniform [0,1] (no cluster structure; truth absent)
//   2  three 2-d spherical Gaussians at (0,0), (0,5), (5,3); sizes 25/25/50
//   3  four 3-d unit Gaussians, centers ~ N(0, 5 I), sizes 25 or 50 each;
//      any cross-cluster point pair closer than 1 rejects the whole draw
//   4  as 3 but p=10 and centers ~ N(0, 1.9 I)
//   5  two elongated diagonal clusters in 3-d: coordinates equal to 100
//      evenly spaced t in [-0.5, 0.5] plus N(0, 0.1^2) noise per entry;
//      the second cluster is shifted by +10 in every feature
//   6  four 2-d unit Gaussians on a square of side 2.5, 25 points each
//   7  as 6 with side 3
//   8  as 6 with side 3.5
//   9  as 5 but the second cluster is shifted by +1 in every feature
//  10  as 5 but the second cluster is shifted by +1 in the first feature only
LabeledDataset generate_setting(int id, std::uint64_t seed);

// Three clusters of 33 samples with p=1000 independent features; the first q
// features have per-cluster means +u / 0 / -u, the rest are standard normal.
// true_features marks the first q.
LabeledDataset generate_highdim_independent(int q, double u, std::uint64_t seed);

// Correlated gene-module design; see GeneModuleParams.  Pipeline per module m
// and cluster k: template means u_km ~ U(4,10) resampled until the largest
// pairwise cluster gap lies in [effect_lower, effect_upper]; subject-level
// means X_kmi ~ N(u_km, sigma1_sq); a module covariance drawn from
// InvWishart((1-phi)I + phi J, df) and rescaled to unit diagonal; gene vectors
// ~ MVN(X_kmi * 1, Sigma).  Noise genes are N(u_g, sigma2_sq) with
// u_g ~ U(4,10).  true_features marks every module gene.
LabeledDataset generate_gene_modules(const GeneModuleParams& params,
                                     std::uint64_t seed);

// Three clusters of 33 samples, p=300, block-structured means:
//   cluster 1: features 1-50 mean 3, 51-150 mean 0.6, 151-300 mean 0
//   cluster 2: features 1-50 mean -1, rest mean 0
//   cluster 3: features 1-50 mean -1, 51-150 mean -1.5, 151-300 mean 0
// All unit variance, independent.  true_features marks the first 150.
LabeledDataset generate_s1_design(std::uint64_t seed);

// One draw from the inverse-Wishart distribution with scale matrix `phi`
// (row-major dim x dim, symmetric positive definite) and `df` degrees of
// freedom (df > dim - 1), via the Bartlett decomposition of the inverse
// Wishart's underlying Wishart(phi^-1, df) draw.  Returns a row-major
// dim x dim symmetric positive-definite matrix.
std::vector<double> sample_inverse_wishart(const std::vector<double>& phi,
                                           int dim, double df, Rng& rng);
std::vector<double> sample_inverse_wishart(const std::vector<double>& phi,
                                           int dim, double df,
                                           std::uint64_t seed);

// Name-driven dispatcher used by the CLI and the benchmark runner.  Designs:
// "setting1".."setting10" (no params), "hd-indep" (q, u), "gene-module"
// (phi-cov, effect-lower, effect-upper, modules, module-size-mean, sigma1-sq,
// sigma2-sq, n-noise, wishart-df), "s1" (no params).  Unknown design names or
// parameter keys raise validation errors.
LabeledDataset generate_by_name(const std::string& design,
                                const std::map<std::string, double>& params,
                                std::uint64_t seed);

}  // namespace sparseclust
