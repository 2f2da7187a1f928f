// Command-line front end.  Every operation goes through the C API in
// sparseclust.h; exit codes mirror sc_status (0 ok, 2 validation, 3 I/O,
// 4 numerical degeneracy).
#include <cinttypes>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "sparseclust.h"

namespace {

int fail(sc_status status) {
  std::fprintf(stderr, "error: %s\n", sc_last_error());
  return static_cast<int>(status);
}

// Knobs shared by the estimation subcommands.
void add_scale_options(CLI::App* cmd, sc_params& p) {
  cmd->add_option("--B", p.b, "subsamples / reference draws")
      ->capture_default_str();
  cmd->add_option("--restarts", p.restarts, "full-data k-means restarts")
      ->capture_default_str();
  cmd->add_option("--subsample-restarts", p.subsample_restarts,
                  "subsample / split / reference k-means restarts")
      ->capture_default_str();
  cmd->add_option("--inner-restarts", p.inner_restarts,
                  "reweighted refit restarts")
      ->capture_default_str();
  cmd->add_option("--n-splits", p.n_splits, "cross-validation splits")
      ->capture_default_str();
  cmd->add_option("--seed", p.seed, "root random seed")->capture_default_str();
  cmd->add_option("--threads", p.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
}

void add_concordance_options(CLI::App* cmd, sc_params& p) {
  cmd->add_option("--f", p.fraction, "subsample fraction")
      ->capture_default_str();
  cmd->add_option("--rho", p.rho, "trim percentage")->capture_default_str();
  cmd->add_option("--s0", p.s0, "no-cluster concordance cutoff")
      ->capture_default_str();
  cmd->add_option("--ps-threshold", p.ps_threshold,
                  "no-cluster strength cutoff")
      ->capture_default_str();
}

void add_grid_options(CLI::App* cmd, sc_params& p) {
  cmd->add_option("--grid-m", p.grid_m, "penalty-grid refinement insertions")
      ->capture_default_str();
  cmd->add_option("--lambda0", p.lambda0, "smallest penalty bound")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster-count and sparse-clustering model selection"};
  app.require_subcommand(1);

  // ------------------------------------------------------------ estimate-k
  auto* estimate = app.add_subcommand(
      "estimate-k", "Estimate the cluster count on a numeric CSV");
  std::string ek_input, ek_method = "s4", ek_out;
  bool ek_header = false;
  sc_params ek_params;
  sc_params_init(&ek_params);
  estimate->add_option("--input", ek_input, "numeric CSV, rows = samples")
      ->required();
  estimate->add_flag("--header", ek_header, "first input line is a header");
  estimate
      ->add_option("--method", ek_method,
                   "s4|ps|ch|kl|h|sil|silhouette|gap-unif|gap-pca|jump")
      ->capture_default_str();
  estimate->add_option("--k-min", ek_params.k_min, "smallest candidate k")
      ->capture_default_str();
  estimate->add_option("--k-max", ek_params.k_max, "largest candidate k")
      ->capture_default_str();
  add_concordance_options(estimate, ek_params);
  add_scale_options(estimate, ek_params);
  estimate->add_option("--out", ek_out, "report file to write")->required();

  // -------------------------------------------------------- sparse-estimate
  auto* sparse = app.add_subcommand(
      "sparse-estimate",
      "Jointly estimate the cluster count and the feature-sparsity penalty");
  std::string sp_input, sp_method = "s4", sp_out, sp_table;
  bool sp_header = false;
  sc_params sp_params;
  sc_params_init(&sp_params);
  sp_params.k_min = 2;
  sp_params.k_max = 7;
  sparse->add_option("--input", sp_input, "numeric CSV, rows = samples")
      ->required();
  sparse->add_flag("--header", sp_header, "first input line is a header");
  sparse->add_option("--method", sp_method, "s4|gap|ps|s4-naive")
      ->capture_default_str();
  sparse->add_option("--k-min", sp_params.k_min, "smallest candidate k")
      ->capture_default_str();
  sparse->add_option("--k-max", sp_params.k_max, "largest candidate k")
      ->capture_default_str();
  add_grid_options(sparse, sp_params);
  add_concordance_options(sparse, sp_params);
  add_scale_options(sparse, sp_params);
  sparse->add_option("--out", sp_out, "report file to write")->required();
  sparse->add_option("--table", sp_table, "flat TSV of the score table");

  // --------------------------------------------------------------- simulate
  auto* simulate =
      app.add_subcommand("simulate", "Generate a synthetic benchmark dataset");
  std::string sim_design, sim_params_text, sim_out, sim_truth;
  std::uint64_t sim_seed = 0;
  simulate
      ->add_option("--design", sim_design,
                   "setting1..setting10|hd-indep|gene-module|s1")
      ->required();
  simulate->add_option("--params", sim_params_text,
                       "design parameters as key=value,key=value");
  simulate->add_option("--seed", sim_seed, "root random seed")
      ->capture_default_str();
  simulate->add_option("--out", sim_out, "CSV file to write")->required();
  simulate->add_option("--truth", sim_truth,
                       "sidecar file for ground-truth labels");

  // -------------------------------------------------------------- benchmark
  auto* benchmark = app.add_subcommand(
      "benchmark", "Replicated estimator comparison on a synthetic design");
  std::string bm_design, bm_params_text, bm_methods, bm_out, bm_report,
      bm_details;
  int bm_replicates = 20;
  sc_params bm_params;
  sc_params_init(&bm_params);
  bm_params.b = 50;  // desk-scale default; raise --B for full-scale runs
  benchmark
      ->add_option("--design", bm_design,
                   "setting1..setting10|hd-indep|gene-module|s1")
      ->required();
  benchmark->add_option("--params", bm_params_text,
                        "design parameters as key=value,key=value");
  benchmark
      ->add_option("--methods", bm_methods,
                   "comma list: s4,ps,ch,kl,h,silhouette,gap-unif,gap-pca,"
                   "jump,sparse-s4,sparse-s4-naive,sparse-gap,sparse-ps")
      ->required();
  benchmark->add_option("--replicates", bm_replicates, "replicate count")
      ->capture_default_str();
  benchmark->add_option("--k-min", bm_params.k_min, "smallest candidate k")
      ->capture_default_str();
  benchmark->add_option("--k-max", bm_params.k_max, "largest candidate k")
      ->capture_default_str();
  add_grid_options(benchmark, bm_params);
  add_concordance_options(benchmark, bm_params);
  add_scale_options(benchmark, bm_params);
  benchmark->add_option("--out", bm_out, "summary table TSV to write")
      ->required();
  benchmark->add_option("--report", bm_report,
                        "also write the full structured report here");
  benchmark->add_option("--details", bm_details,
                        "also write the per-replicate detail TSV here");

  // ---------------------------------------------------------------- indices
  auto* indices = app.add_subcommand(
      "indices", "Evaluate every classical index curve on a numeric CSV");
  std::string ix_input, ix_out;
  bool ix_header = false;
  sc_params ix_params;
  sc_params_init(&ix_params);
  indices->add_option("--input", ix_input, "numeric CSV, rows = samples")
      ->required();
  indices->add_flag("--header", ix_header, "first input line is a header");
  indices->add_option("--k-min", ix_params.k_min, "smallest candidate k")
      ->capture_default_str();
  indices->add_option("--k-max", ix_params.k_max, "largest candidate k")
      ->capture_default_str();
  indices->add_option("--B", ix_params.b, "gap reference draws")
      ->capture_default_str();
  indices->add_option("--restarts", ix_params.restarts, "k-means restarts")
      ->capture_default_str();
  indices->add_option("--seed", ix_params.seed, "root random seed")
      ->capture_default_str();
  indices->add_option("--threads", ix_params.threads,
                      "worker threads (0 = hardware)")
      ->capture_default_str();
  indices->add_option("--out", ix_out, "curves TSV to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand(estimate)) {
    sc_dataset* data = nullptr;
    sc_status status =
        sc_dataset_load(ek_input.c_str(), ek_header ? 1 : 0, nullptr, &data);
    if (status != SC_OK) return fail(status);
    sc_report* report = nullptr;
    status = sc_estimate_k(data, ek_method.c_str(), &ek_params, &report);
    sc_dataset_free(data);
    if (status != SC_OK) return fail(status);
    status = sc_report_save(report, ek_out.c_str());
    if (status != SC_OK) {
      sc_report_free(report);
      return fail(status);
    }
    std::printf("method\t%s\nk_hat\t%d\n", ek_method.c_str(),
                sc_report_k(report));
    sc_report_free(report);
    return 0;
  }

  if (app.got_subcommand(sparse)) {
    sc_dataset* data = nullptr;
    sc_status status =
        sc_dataset_load(sp_input.c_str(), sp_header ? 1 : 0, nullptr, &data);
    if (status != SC_OK) return fail(status);
    sc_report* report = nullptr;
    status = sc_sparse_estimate(data, sp_method.c_str(), &sp_params, &report);
    sc_dataset_free(data);
    if (status != SC_OK) return fail(status);
    status = sc_report_save(report, sp_out.c_str());
    if (status == SC_OK && !sp_table.empty())
      status = sc_report_save_table(report, "scores", sp_table.c_str());
    if (status != SC_OK) {
      sc_report_free(report);
      return fail(status);
    }
    std::printf("method\t%s\nk_hat\t%d\nlambda_hat\t%g\nn_selected\t%d\n",
                sp_method.c_str(), sc_report_k(report),
                sc_report_lambda(report), sc_report_n_selected(report));
    sc_report_free(report);
    return 0;
  }

  if (app.got_subcommand(simulate)) {
    sc_dataset* data = nullptr;
    sc_status status = sc_dataset_simulate(
        sim_design.c_str(),
        sim_params_text.empty() ? nullptr : sim_params_text.c_str(), sim_seed,
        &data);
    if (status != SC_OK) return fail(status);
    status = sc_dataset_save(data, sim_out.c_str(),
                             sim_truth.empty() ? nullptr : sim_truth.c_str());
    if (status != SC_OK) {
      sc_dataset_free(data);
      return fail(status);
    }
    std::printf("design\t%s\nn\t%d\np\t%d\n", sim_design.c_str(),
                sc_dataset_rows(data), sc_dataset_cols(data));
    sc_dataset_free(data);
    return 0;
  }

  if (app.got_subcommand(benchmark)) {
    sc_report* report = nullptr;
    sc_status status = sc_benchmark(
        bm_design.c_str(),
        bm_params_text.empty() ? nullptr : bm_params_text.c_str(),
        bm_methods.c_str(), bm_replicates, &bm_params, &report);
    if (status != SC_OK) return fail(status);
    status = sc_report_save_table(report, "summary", bm_out.c_str());
    if (status == SC_OK && !bm_report.empty())
      status = sc_report_save(report, bm_report.c_str());
    if (status == SC_OK && !bm_details.empty())
      status = sc_report_save_table(report, "details", bm_details.c_str());
    sc_report_free(report);
    if (status != SC_OK) return fail(status);
    std::printf("design\t%s\nmethods\t%s\nreplicates\t%d\nout\t%s\n",
                bm_design.c_str(), bm_methods.c_str(), bm_replicates,
                bm_out.c_str());
    return 0;
  }

  if (app.got_subcommand(indices)) {
    sc_dataset* data = nullptr;
    sc_status status =
        sc_dataset_load(ix_input.c_str(), ix_header ? 1 : 0, nullptr, &data);
    if (status != SC_OK) return fail(status);
    sc_report* report = nullptr;
    status = sc_index_curves(data, &ix_params, &report);
    sc_dataset_free(data);
    if (status != SC_OK) return fail(status);
    status = sc_report_save_table(report, "curves", ix_out.c_str());
    sc_report_free(report);
    if (status != SC_OK) return fail(status);
    std::printf("out\t%s\n", ix_out.c_str());
    return 0;
  }

  return 2;  // unreachable: a subcommand is required
}
