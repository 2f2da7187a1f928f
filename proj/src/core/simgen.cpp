#include "sparseclust/simgen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "sparseclust/error.hpp"

namespace sparseclust {

namespace {

constexpr int kRejectionCap = 1000;      // whole-dataset rejection loops
constexpr int kConstraintCap = 100000;   // per-module template resampling

// Gaussian blobs: cluster c has `sizes[c]` samples drawn N(centers[c], sd^2 I).
DataMatrix gaussian_blobs(const std::vector<std::vector<double>>& centers,
                          const std::vector<int>& sizes, double sd, Rng& rng) {
  const int p = static_cast<int>(centers.front().size());
  const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
  DataMatrix x(n, p);
  int row = 0;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (int i = 0; i < sizes[c]; ++i, ++row)
      for (int j = 0; j < p; ++j)
        x(row, j) = rng.normal(centers[c][j], sd);
  }
  return x;
}

std::vector<int> block_labels(const std::vector<int>& sizes) {
  std::vector<int> labels;
  for (std::size_t c = 0; c < sizes.size(); ++c)
    labels.insert(labels.end(), sizes[c], static_cast<int>(c));
  return labels;
}

// Smallest Euclidean distance between points of different clusters.
double min_cross_cluster_distance(const DataMatrix& x,
                                  const std::vector<int>& labels) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.n; ++i) {
    for (int j = i + 1; j < x.n; ++j) {
      if (labels[i] == labels[j]) continue;
      double d2 = 0.0;
      for (int f = 0; f < x.p; ++f) {
        const double d = x(i, f) - x(j, f);
        d2 += d * d;
      }
      best = std::min(best, std::sqrt(d2));
    }
  }
  return best;
}

// Settings 3/4: clusters of 25 or 50 points around random centers, with the
// whole draw rejected while any cross-cluster point pair is closer than 1.
LabeledDataset random_center_setting(int id, int p, double center_var,
                                     std::uint64_t seed) {
  Rng rng(derive_seed(seed, {seed_tag::sim, static_cast<std::uint64_t>(id)}));
  const double center_sd = std::sqrt(center_var);
  for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
    std::vector<std::vector<double>> centers(4, std::vector<double>(p));
    for (auto& c : centers)
      for (double& v : c) v = rng.normal(0.0, center_sd);
    std::vector<int> sizes(4);
    for (int& s : sizes) s = rng.coin() ? 50 : 25;
    DataMatrix x = gaussian_blobs(centers, sizes, 1.0, rng);
    std::vector<int> labels = block_labels(sizes);
    if (min_cross_cluster_distance(x, labels) < 1.0) continue;
    LabeledDataset out;
    out.x = std::move(x);
    out.truth = Partition(std::move(labels), 4);
    out.design_id = "setting" + std::to_string(id);
    out.seed = seed;
    return out;
  }
  throw Error::degenerate("cluster separation rejection loop exceeded " +
                          std::to_string(kRejectionCap) + " attempts");
}

// Settings 5/9/10: two elongated diagonal clusters in 3-d.  `shift` is added
// to the second cluster after the noisy diagonal is laid down.
LabeledDataset diagonal_setting(int id, const std::vector<double>& shift,
                                std::uint64_t seed) {
  Rng rng(derive_seed(seed, {seed_tag::sim, static_cast<std::uint64_t>(id)}));
  const int per_cluster = 100;
  const int p = 3;
  DataMatrix x(2 * per_cluster, p);
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < per_cluster; ++i) {
      const int row = c * per_cluster + i;
      const double t = -0.5 + i / double(per_cluster - 1);
      for (int j = 0; j < p; ++j)
        x(row, j) = t + rng.normal(0.0, 0.1) + (c == 1 ? shift[j] : 0.0);
    }
  }
  LabeledDataset out;
  out.x = std::move(x);
  out.truth = Partition(block_labels({per_cluster, per_cluster}), 2);
  out.design_id = "setting" + std::to_string(id);
  out.seed = seed;
  return out;
}

// Settings 6/7/8: four unit Gaussians of 25 on the corners of a square.
LabeledDataset square_setting(int id, double side, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {seed_tag::sim, static_cast<std::uint64_t>(id)}));
  const std::vector<std::vector<double>> centers = {
      {0.0, 0.0}, {0.0, side}, {side, 0.0}, {side, side}};
  const std::vector<int> sizes(4, 25);
  LabeledDataset out;
  out.x = gaussian_blobs(centers, sizes, 1.0, rng);
  out.truth = Partition(block_labels(sizes), 4);
  out.design_id = "setting" + std::to_string(id);
  out.seed = seed;
  return out;
}

Eigen::MatrixXd to_eigen(const std::vector<double>& flat, int dim) {
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      m(i, j) = flat[static_cast<std::size_t>(i) * dim + j];
  return m;
}

std::vector<double> from_eigen(const Eigen::MatrixXd& m) {
  const int dim = static_cast<int>(m.rows());
  std::vector<double> flat(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      flat[static_cast<std::size_t>(i) * dim + j] = m(i, j);
  return flat;
}

Eigen::MatrixXd inverse_wishart_draw(const Eigen::MatrixXd& phi, double df,
                                     Rng& rng) {
  const int dim = static_cast<int>(phi.rows());
  if (!(df > dim - 1))
    throw Error::validation("inverse-Wishart df must exceed dim - 1");
  if (!phi.isApprox(phi.transpose(), 1e-10))
    throw Error::validation("inverse-Wishart scale matrix must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> phi_llt(phi);
  if (phi_llt.info() != Eigen::Success)
    throw Error::validation(
        "inverse-Wishart scale matrix must be positive definite");

  // Draw W ~ Wishart(phi^-1, df) by the Bartlett construction, then return
  // W^-1 ~ InvWishart(phi, df).
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd psi = phi_llt.solve(identity);
  Eigen::LLT<Eigen::MatrixXd> psi_llt(psi);
  if (psi_llt.info() != Eigen::Success)
    throw Error::degenerate("Wishart scale inversion lost positive definiteness");
  const Eigen::MatrixXd l = psi_llt.matrixL();

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    a(i, i) = std::sqrt(rng.chi_squared(df - i));
    for (int j = 0; j < i; ++j) a(i, j) = rng.normal();
  }
  const Eigen::MatrixXd factor = l * a;  // W = factor factor^T
  const Eigen::MatrixXd w = factor * factor.transpose();
  Eigen::LLT<Eigen::MatrixXd> w_llt(w);
  if (w_llt.info() != Eigen::Success)
    throw Error::degenerate("Wishart draw is numerically singular");
  Eigen::MatrixXd inv = w_llt.solve(identity);
  return 0.5 * (inv + inv.transpose());  // exact symmetry for downstream LLTs
}

void validate_gene_module_params(const GeneModuleParams& params) {
  if (params.modules < 1)
    throw Error::validation("gene-module design needs at least one module");
  if (params.module_size_mean <= 0.0)
    throw Error::validation("module size mean must be positive");
  if (params.sigma1_sq <= 0.0 || params.sigma2_sq <= 0.0)
    throw Error::validation("gene-module variances must be positive");
  if (params.n_noise < 0)
    throw Error::validation("noise gene count must be non-negative");
  if (!(params.phi_cov > 0.0) || !(params.phi_cov < 1.0))
    throw Error::validation("phi-cov must lie strictly inside (0, 1)");
  if (!(params.effect_lower <= params.effect_upper))
    throw Error::validation("effect-lower must not exceed effect-upper");
  if (params.effect_lower < 0.0)
    throw Error::validation("effect bounds must be non-negative");
  if (params.effect_lower > 6.0)
    throw Error::validation(
        "effect-lower above 6 is unattainable for U(4,10) templates");
  if (!(params.wishart_df > 1.0))
    throw Error::validation("wishart-df must exceed 1");
  for (double mean : params.cluster_size_means)
    if (mean <= 0.0)
      throw Error::validation("cluster size means must be positive");
}

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown_keys(const std::map<std::string, double>& params,
                         std::initializer_list<const char*> known) {
  for (const auto& [key, value] : params) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok)
      throw Error::validation("unknown design parameter \"" + key + "\"");
  }
}

}  // namespace

LabeledDataset generate_setting(int id, std::uint64_t seed) {
  switch (id) {
    case 1: {
      Rng rng(derive_seed(seed, {seed_tag::sim, 1}));
      DataMatrix x(200, 10);
      for (double& v : x.values) v = rng.uniform();
      LabeledDataset out;
      out.x = std::move(x);
      out.design_id = "setting1";
      out.seed = seed;
      return out;
    }
    case 2: {
      Rng rng(derive_seed(seed, {seed_tag::sim, 2}));
      const std::vector<std::vector<double>> centers = {
          {0.0, 0.0}, {0.0, 5.0}, {5.0, 3.0}};
      const std::vector<int> sizes = {25, 25, 50};
      LabeledDataset out;
      out.x = gaussian_blobs(centers, sizes, 1.0, rng);
      out.truth = Partition(block_labels(sizes), 3);
      out.design_id = "setting2";
      out.seed = seed;
      return out;
    }
    case 3:
      return random_center_setting(3, 3, 5.0, seed);
    case 4:
      return random_center_setting(4, 10, 1.9, seed);
    case 5:
      return diagonal_setting(5, {10.0, 10.0, 10.0}, seed);
    case 6:
      return square_setting(6, 2.5, seed);
    case 7:
      return square_setting(7, 3.0, seed);
    case 8:
      return square_setting(8, 3.5, seed);
    case 9:
      return diagonal_setting(9, {1.0, 1.0, 1.0}, seed);
    case 10:
      return diagonal_setting(10, {1.0, 0.0, 0.0}, seed);
    default:
      throw Error::validation("design id must be between 1 and 10, got " +
                              std::to_string(id));
  }
}

LabeledDataset generate_highdim_independent(int q, double u,
                                            std::uint64_t seed) {
  if (q <= 0 || q >= 1000)
    throw Error::validation("informative feature count must be in (0, 1000)");
  Rng rng(derive_seed(seed, {seed_tag::sim, 11}));
  const int per_cluster = 33;
  const int n = 3 * per_cluster;
  const int p = 1000;
  const double cluster_mean[3] = {u, 0.0, -u};
  DataMatrix x(n, p);
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < per_cluster; ++i) {
      const int row = c * per_cluster + i;
      for (int j = 0; j < p; ++j)
        x(row, j) = rng.normal(j < q ? cluster_mean[c] : 0.0, 1.0);
    }
  }
  LabeledDataset out;
  out.x = std::move(x);
  out.truth = Partition(block_labels({per_cluster, per_cluster, per_cluster}), 3);
  FeatureMask mask(p);
  for (int j = 0; j < q; ++j) mask.selected[j] = 1;
  out.true_features = std::move(mask);
  out.design_id = "hd-indep";
  out.seed = seed;
  return out;
}

LabeledDataset generate_gene_modules(const GeneModuleParams& params,
                                     std::uint64_t seed) {
  validate_gene_module_params(params);
  Rng rng(derive_seed(seed, {seed_tag::sim, 12}));

  // Cluster sizes, rejecting empty clusters.
  int cluster_size[3];
  for (int k = 0; k < 3; ++k) {
    int draw = 0;
    for (int attempt = 0; attempt < kRejectionCap && draw == 0; ++attempt)
      draw = rng.poisson(params.cluster_size_means[k]);
    if (draw == 0)
      throw Error::degenerate("could not draw a non-empty cluster size");
    cluster_size[k] = draw;
  }
  const int n = cluster_size[0] + cluster_size[1] + cluster_size[2];

  // Module sizes, rejecting empty modules and modules too large for the
  // Wishart draw (df must exceed the module dimension).
  std::vector<int> module_size(params.modules);
  for (int m = 0; m < params.modules; ++m) {
    int draw = 0;
    for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
      draw = rng.poisson(params.module_size_mean);
      if (draw > 0 && params.wishart_df > draw) break;
      draw = 0;
    }
    if (draw == 0)
      throw Error::degenerate("could not draw a usable module size");
    module_size[m] = draw;
  }
  const int p_signal = std::accumulate(module_size.begin(), module_size.end(), 0);
  const int p = p_signal + params.n_noise;

  DataMatrix x(n, p);
  std::vector<int> labels = block_labels(
      {cluster_size[0], cluster_size[1], cluster_size[2]});

  int feature_base = 0;
  for (int m = 0; m < params.modules; ++m) {
    const int dim = module_size[m];

    // Template means per cluster, resampled until the widest pairwise gap
    // lands inside the requested effect-size window.
    double templates[3];
    bool accepted = false;
    for (int attempt = 0; attempt < kConstraintCap && !accepted; ++attempt) {
      for (double& t : templates) t = rng.uniform(4.0, 10.0);
      const double gap =
          std::max({std::fabs(templates[0] - templates[1]),
                    std::fabs(templates[0] - templates[2]),
                    std::fabs(templates[1] - templates[2])});
      accepted = gap >= params.effect_lower && gap <= params.effect_upper;
    }
    if (!accepted)
      throw Error::degenerate(
          "template effect-size constraint not met within retry budget");

    // Wishart scale: (1-phi) I + phi J, shared across the module's clusters.
    Eigen::MatrixXd phi =
        Eigen::MatrixXd::Constant(dim, dim, params.phi_cov);
    phi.diagonal().setConstant(1.0);

    const double sigma1 = std::sqrt(params.sigma1_sq);
    int row = 0;
    for (int k = 0; k < 3; ++k) {
      const Eigen::MatrixXd sigma_raw =
          inverse_wishart_draw(phi, params.wishart_df, rng);
      // Rescale to unit diagonal so the draw acts as a correlation matrix.
      Eigen::VectorXd scale = sigma_raw.diagonal().array().sqrt().inverse();
      Eigen::MatrixXd sigma =
          scale.asDiagonal() * sigma_raw * scale.asDiagonal();
      sigma = 0.5 * (sigma + sigma.transpose());
      Eigen::LLT<Eigen::MatrixXd> llt(sigma);
      if (llt.info() != Eigen::Success)
        throw Error::degenerate("module covariance draw is not positive definite");
      const Eigen::MatrixXd chol = llt.matrixL();

      for (int i = 0; i < cluster_size[k]; ++i, ++row) {
        const double subject_mean = rng.normal(templates[k], sigma1);
        Eigen::VectorXd z(dim);
        for (int j = 0; j < dim; ++j) z(j) = rng.normal();
        const Eigen::VectorXd gene = chol * z;
        for (int j = 0; j < dim; ++j)
          x(row, feature_base + j) = subject_mean + gene(j);
      }
    }
    feature_base += dim;
  }

  // Independent noise genes with gene-specific baseline expression.
  const double sigma2 = std::sqrt(params.sigma2_sq);
  for (int g = 0; g < params.n_noise; ++g) {
    const double baseline = rng.uniform(4.0, 10.0);
    for (int i = 0; i < n; ++i)
      x(i, p_signal + g) = rng.normal(baseline, sigma2);
  }

  LabeledDataset out;
  out.x = std::move(x);
  out.truth = Partition(std::move(labels), 3);
  FeatureMask mask(p);
  for (int j = 0; j < p_signal; ++j) mask.selected[j] = 1;
  out.true_features = std::move(mask);
  out.design_id = "gene-module";
  out.seed = seed;
  return out;
}

LabeledDataset generate_s1_design(std::uint64_t seed) {
  Rng rng(derive_seed(seed, {seed_tag::sim, 13}));
  const int per_cluster = 33;
  const int n = 3 * per_cluster;
  const int p = 300;
  // Block means per cluster over features [0,50), [50,150), [150,300).
  const double block_mean[3][3] = {
      {3.0, 0.6, 0.0}, {-1.0, 0.0, 0.0}, {-1.0, -1.5, 0.0}};
  DataMatrix x(n, p);
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < per_cluster; ++i) {
      const int row = c * per_cluster + i;
      for (int j = 0; j < p; ++j) {
        const int block = j < 50 ? 0 : (j < 150 ? 1 : 2);
        x(row, j) = rng.normal(block_mean[c][block], 1.0);
      }
    }
  }
  LabeledDataset out;
  out.x = std::move(x);
  out.truth = Partition(block_labels({per_cluster, per_cluster, per_cluster}), 3);
  FeatureMask mask(p);
  for (int j = 0; j < 150; ++j) mask.selected[j] = 1;
  out.true_features = std::move(mask);
  out.design_id = "s1";
  out.seed = seed;
  return out;
}

std::vector<double> sample_inverse_wishart(const std::vector<double>& phi,
                                           int dim, double df, Rng& rng) {
  if (dim < 1) throw Error::validation("matrix dimension must be positive");
  if (phi.size() != static_cast<std::size_t>(dim) * dim)
    throw Error::validation("scale matrix size does not match dimension");
  return from_eigen(inverse_wishart_draw(to_eigen(phi, dim), df, rng));
}

std::vector<double> sample_inverse_wishart(const std::vector<double>& phi,
                                           int dim, double df,
                                           std::uint64_t seed) {
  Rng rng(derive_seed(seed, {seed_tag::sim, 14}));
  return sample_inverse_wishart(phi, dim, df, rng);
}

LabeledDataset generate_by_name(const std::string& design,
                                const std::map<std::string, double>& params,
                                std::uint64_t seed) {
  if (design.rfind("setting", 0) == 0) {
    reject_unknown_keys(params, {});
    const std::string tail = design.substr(7);
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(tail, &used);
      if (used != tail.size()) id = 0;
    } catch (const std::exception&) {
      id = 0;
    }
    if (id < 1 || id > 10)
      throw Error::validation("unknown design \"" + design + "\"");
    return generate_setting(id, seed);
  }
  if (design == "hd-indep") {
    reject_unknown_keys(params, {"q", "u"});
    const double q = require_param(params, "q", 50.0);
    const double u = require_param(params, "u", 0.8);
    if (q != std::floor(q))
      throw Error::validation("parameter q must be an integer");
    return generate_highdim_independent(static_cast<int>(q), u, seed);
  }
  if (design == "gene-module") {
    reject_unknown_keys(params,
                        {"phi-cov", "effect-lower", "effect-upper", "modules",
                         "module-size-mean", "sigma1-sq", "sigma2-sq",
                         "n-noise", "wishart-df"});
    GeneModuleParams gm;
    gm.phi_cov = require_param(params, "phi-cov", gm.phi_cov);
    gm.effect_lower = require_param(params, "effect-lower", gm.effect_lower);
    gm.effect_upper = require_param(params, "effect-upper", gm.effect_upper);
    gm.modules =
        static_cast<int>(require_param(params, "modules", gm.modules));
    gm.module_size_mean =
        require_param(params, "module-size-mean", gm.module_size_mean);
    gm.sigma1_sq = require_param(params, "sigma1-sq", gm.sigma1_sq);
    gm.sigma2_sq = require_param(params, "sigma2-sq", gm.sigma2_sq);
    gm.n_noise = static_cast<int>(require_param(params, "n-noise", gm.n_noise));
    gm.wishart_df = require_param(params, "wishart-df", gm.wishart_df);
    return generate_gene_modules(gm, seed);
  }
  if (design == "s1") {
    reject_unknown_keys(params, {});
    return generate_s1_design(seed);
  }
  throw Error::validation("unknown design \"" + design + "\"");
}

}  // namespace sparseclust
