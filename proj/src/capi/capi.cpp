#include "sparseclust.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sparseclust/bench.hpp"
#include "sparseclust/csv.hpp"
#include "sparseclust/error.hpp"
#include "sparseclust/indices.hpp"
#include "sparseclust/kmeans.hpp"
#include "sparseclust/metrics.hpp"
#include "sparseclust/prediction_strength.hpp"
#include "sparseclust/report.hpp"
#include "sparseclust/selection.hpp"
#include "sparseclust/simgen.hpp"
#include "sparseclust/stability.hpp"
#include "sparseclust/text.hpp"

namespace sc = sparseclust;

struct sc_dataset {
  sc::LabeledDataset data;
};

struct sc_report {
  sc::ReportDoc doc;
  int k_hat = 0;
  double lambda_hat = 0.0;
  int n_selected = 0;
  std::vector<int> labels;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
sc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SC_OK;
  } catch (const sc::Error& error) {
    g_last_error = error.what();
    return static_cast<sc_status>(static_cast<int>(error.kind()));
  } catch (const std::exception& error) {
    g_last_error = error.what();
    return SC_ERR_DEGENERATE;
  }
}

void require(bool condition, const std::string& message) {
  if (!condition) throw sc::Error::validation(message);
}

std::map<std::string, double> parse_kv_list(const char* text) {
  std::map<std::string, double> out;
  if (text == nullptr) return out;
  std::string_view rest(text);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    std::string_view pair = sc::trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view()
                                           : rest.substr(comma + 1);
    if (pair.empty()) continue;
    const std::size_t eq = pair.find('=');
    double value = 0.0;
    if (eq == std::string_view::npos ||
        !sc::parse_double(sc::trim(pair.substr(eq + 1)), value))
      throw sc::Error::validation("malformed parameter \"" + std::string(pair) +
                                  "\" (expected key=value)");
    out[std::string(sc::trim(pair.substr(0, eq)))] = value;
  }
  return out;
}

std::vector<std::string> parse_name_list(const char* text) {
  std::vector<std::string> out;
  if (text == nullptr) return out;
  std::string_view rest(text);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    std::string_view name = sc::trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view()
                                           : rest.substr(comma + 1);
    if (!name.empty()) out.emplace_back(name);
  }
  return out;
}

sc_params checked_params(const sc_params* params) {
  sc_params out;
  if (params == nullptr)
    sc_params_init(&out);
  else
    out = *params;
  require(out.k_min >= 1, "k_min must be at least 1");
  require(out.k_max >= out.k_min, "k_max must be at least k_min");
  require(out.b >= 1, "b must be positive");
  require(out.fraction > 0.0 && out.fraction < 1.0,
          "fraction must lie strictly inside (0, 1)");
  require(out.rho >= 0.0 && out.rho < 100.0, "rho must lie in [0, 100)");
  require(out.restarts >= 1 && out.subsample_restarts >= 1 &&
              out.inner_restarts >= 1,
          "restart counts must be positive");
  require(out.n_splits >= 2, "n_splits must be at least 2");
  require(out.grid_m >= 0, "grid_m must be non-negative");
  require(out.lambda0 >= 1.0, "lambda0 must be at least 1");
  require(out.threads >= 0, "threads must be non-negative");
  return out;
}

sc::SelectionOptions selection_options(const sc_params& p) {
  sc::SelectionOptions sel;
  sel.fraction = p.fraction;
  sel.b = p.b;
  sel.rho = p.rho;
  sel.restarts = p.restarts;
  sel.subsample_restarts = p.subsample_restarts;
  sel.inner_restarts = p.inner_restarts;
  sel.n_splits = p.n_splits;
  sel.lambda0 = p.lambda0;
  sel.grid_m = p.grid_m;
  sel.seed = p.seed;
  sel.threads = p.threads;
  return sel;
}

std::string cell(double value) {
  if (std::isnan(value)) return "NA";
  return sc::format_double(value);
}

std::string cell(const std::optional<double>& value) {
  return value ? sc::format_double(*value) : "NA";
}

void add_param_meta(sc::ReportDoc& doc, const sc_params& p) {
  doc.add_meta("k_min", p.k_min);
  doc.add_meta("k_max", p.k_max);
  doc.add_meta("fraction", p.fraction);
  doc.add_meta("b", p.b);
  doc.add_meta("rho", p.rho);
  doc.add_meta("s0", p.s0);
  doc.add_meta("restarts", p.restarts);
  doc.add_meta("subsample_restarts", p.subsample_restarts);
  doc.add_meta("inner_restarts", p.inner_restarts);
  doc.add_meta("n_splits", p.n_splits);
  doc.add_meta("lambda0", p.lambda0);
  doc.add_meta("grid_m", p.grid_m);
  doc.add_meta("ps_threshold", p.ps_threshold);
  doc.add_meta("seed", std::to_string(p.seed));
  doc.add_meta("threads", p.threads);
}

// Full-data fit at the chosen cluster count, on the same derived stream the
// estimators use internally for their full-data fits.
std::vector<int> labels_at(const sc::DataMatrix& x, int k, int restarts,
                           std::uint64_t seed) {
  if (k <= 1) return std::vector<int>(x.n, 0);
  sc::KMeansOptions opt;
  opt.restarts = restarts;
  opt.seed =
      sc::derive_seed(seed, {sc::seed_tag::full_fit, static_cast<std::uint64_t>(k)});
  return sc::kmeans(x, k, {}, opt).partition.labels;
}

void add_labels_table(sc_report& report) {
  sc::ReportDoc::Table table;
  table.name = "labels";
  table.columns = {"label"};
  for (int label : report.labels) table.rows.push_back({std::to_string(label)});
  report.doc.tables.push_back(std::move(table));
}

sc_report* build_estimate_k_report(const sc::DataMatrix& x,
                                   const std::string& method,
                                   const sc_params& p) {
  auto report = std::make_unique<sc_report>();
  sc::ReportDoc& doc = report->doc;
  doc.add_meta("command", "estimate-k");
  doc.add_meta("method", method);
  doc.add_meta("n", x.n);
  doc.add_meta("p", x.p);
  add_param_meta(doc, p);

  sc::ReportDoc::Table scores;
  scores.name = "scores";

  if (method == "s4") {
    sc::S4Options opt;
    opt.fraction = p.fraction;
    opt.b = p.b;
    opt.rho = p.rho;
    opt.s0 = p.s0;
    opt.restarts = p.restarts;
    opt.subsample_restarts = p.subsample_restarts;
    opt.seed = p.seed;
    opt.threads = p.threads;
    const sc::S4KResult res = sc::s4_estimate_k(x, p.k_min, p.k_max, opt);
    report->k_hat = res.k_hat;
    doc.add_meta("k_hat", res.k_hat);
    doc.add_meta("s_max", res.s_max);
    scores.columns = {"k", "score"};
    for (std::size_t i = 0; i < res.k_values.size(); ++i)
      scores.rows.push_back(
          {std::to_string(res.k_values[i]), cell(res.scores[i])});
  } else if (method == "ps") {
    sc::PsOptions opt;
    opt.n_splits = p.n_splits;
    opt.restarts = p.subsample_restarts;
    opt.threshold = p.ps_threshold;
    opt.seed = p.seed;
    opt.threads = p.threads;
    const sc::PsKResult res = sc::ps_select_k(x, p.k_min, p.k_max, opt);
    report->k_hat = res.k_hat;
    doc.add_meta("k_hat", res.k_hat);
    scores.columns = {"k", "strength", "se"};
    for (std::size_t i = 0; i < res.k_values.size(); ++i)
      scores.rows.push_back({std::to_string(res.k_values[i]),
                             cell(res.strength[i]), cell(res.se[i])});
  } else {
    sc::KmeansSweep sweep(x, p.restarts, p.seed);
    sc::IndexCurve curve;
    if (method == "ch") {
      curve = sc::ch_select(sweep, p.k_min, p.k_max);
    } else if (method == "kl") {
      curve = sc::kl_select(sweep, p.k_min, p.k_max);
    } else if (method == "h") {
      curve = sc::h_select(sweep, p.k_min, p.k_max);
    } else if (method == "sil" || method == "silhouette") {
      curve = sc::silhouette_select(sweep, p.k_min, p.k_max);
    } else if (method == "gap-unif" || method == "gap-pca") {
      sc::GapOptions opt;
      opt.b_references = p.b;
      opt.seed = p.seed;
      opt.threads = p.threads;
      curve = sc::gap_select(sweep, p.k_min, p.k_max,
                             method == "gap-unif" ? sc::GapReference::uniform
                                                  : sc::GapReference::pca,
                             opt);
    } else if (method == "jump") {
      curve = sc::jump_select(sweep, p.k_min, p.k_max);
    } else {
      throw sc::Error::validation("unknown estimation method \"" + method +
                                  "\"");
    }
    report->k_hat = curve.chosen_k;
    doc.add_meta("k_hat", curve.chosen_k);
    scores.columns = {"k", "score"};
    for (const auto& [name, values] : curve.extras)
      scores.columns.push_back(name);
    for (std::size_t i = 0; i < curve.k_values.size(); ++i) {
      std::vector<std::string> row = {std::to_string(curve.k_values[i]),
                                      cell(curve.scores[i])};
      for (const auto& [name, values] : curve.extras) {
        (void)name;
        row.push_back(cell(values[i]));
      }
      scores.rows.push_back(std::move(row));
    }
  }

  doc.tables.push_back(std::move(scores));
  report->labels = labels_at(x, report->k_hat, p.restarts, p.seed);
  add_labels_table(*report);
  return report.release();
}

sc_report* build_sparse_report(const sc::DataMatrix& x,
                               const std::string& method, const sc_params& p) {
  sc::SelectionMethod selection_method;
  if (method == "s4") {
    selection_method = sc::SelectionMethod::s4;
  } else if (method == "s4-naive") {
    selection_method = sc::SelectionMethod::s4_naive_sum;
  } else if (method == "gap") {
    selection_method = sc::SelectionMethod::gap_joint;
  } else if (method == "ps") {
    selection_method = sc::SelectionMethod::ps_joint;
  } else {
    throw sc::Error::validation("unknown joint estimation method \"" + method +
                                "\"");
  }

  const sc::SelectionReport result = sc::estimate(
      selection_method, x, std::max(2, p.k_min), p.k_max, selection_options(p));

  auto report = std::make_unique<sc_report>();
  sc::ReportDoc& doc = report->doc;
  doc.add_meta("command", "sparse-estimate");
  doc.add_meta("method", sc::selection_method_name(result.method));
  doc.add_meta("n", x.n);
  doc.add_meta("p", x.p);
  add_param_meta(doc, p);
  doc.add_meta("k_hat", result.k_hat);
  doc.add_meta("lambda_hat", result.lambda_hat);
  doc.add_meta("n_selected", result.n_selected);
  doc.add_meta("runtime_seconds", result.runtime_seconds);

  sc::ReportDoc::Table scores;
  scores.name = "scores";
  scores.columns = {"k", "lambda", "n_selected"};
  const bool has_s = std::any_of(result.table.begin(), result.table.end(),
                                 [](const sc::CellScore& c) { return c.s_rho.has_value(); });
  const bool has_gap = std::any_of(result.table.begin(), result.table.end(),
                                   [](const sc::CellScore& c) { return c.gap.has_value(); });
  const bool has_ps = std::any_of(result.table.begin(), result.table.end(),
                                  [](const sc::CellScore& c) { return c.ps.has_value(); });
  if (has_s) {
    scores.columns.push_back("s_rho");
    scores.columns.push_back("f_score");
  }
  if (has_gap) {
    scores.columns.push_back("gap");
    scores.columns.push_back("gap_sd");
  }
  if (has_ps) {
    scores.columns.push_back("ps");
    scores.columns.push_back("ps_se");
    scores.columns.push_back("f_ps");
  }
  for (const sc::CellScore& c : result.table) {
    std::vector<std::string> row = {std::to_string(c.k),
                                    sc::format_double(c.lambda),
                                    std::to_string(c.n_selected)};
    if (has_s) {
      row.push_back(cell(c.s_rho));
      row.push_back(cell(c.f_score));
    }
    if (has_gap) {
      row.push_back(cell(c.gap));
      row.push_back(cell(c.gap_sd));
    }
    if (has_ps) {
      row.push_back(cell(c.ps));
      row.push_back(cell(c.ps_se));
      row.push_back(cell(c.f_ps));
    }
    scores.rows.push_back(std::move(row));
  }
  doc.tables.push_back(std::move(scores));

  sc::ReportDoc::Table features;
  features.name = "selected-features";
  features.columns = {"feature_index"};
  for (int j = 0; j < result.mask.size(); ++j)
    if (result.mask[j]) features.rows.push_back({std::to_string(j)});
  doc.tables.push_back(std::move(features));

  report->k_hat = result.k_hat;
  report->lambda_hat = result.lambda_hat;
  report->n_selected = result.n_selected;
  report->labels = result.partition.labels;
  add_labels_table(*report);
  return report.release();
}

sc_report* build_indices_report(const sc::DataMatrix& x, const sc_params& p) {
  sc::KmeansSweep sweep(x, p.restarts, p.seed);
  sc::GapOptions gap_opt;
  gap_opt.b_references = p.b;
  gap_opt.seed = p.seed;
  gap_opt.threads = p.threads;

  struct NamedCurve {
    std::string column;
    sc::IndexCurve curve;
  };
  std::vector<NamedCurve> curves;
  curves.push_back({"ch", sc::ch_select(sweep, p.k_min, p.k_max)});
  curves.push_back({"kl", sc::kl_select(sweep, p.k_min, p.k_max)});
  curves.push_back({"h", sc::h_select(sweep, p.k_min, p.k_max)});
  curves.push_back({"silhouette", sc::silhouette_select(sweep, p.k_min, p.k_max)});
  curves.push_back({"gap-unif", sc::gap_select(sweep, p.k_min, p.k_max,
                                               sc::GapReference::uniform, gap_opt)});
  curves.push_back({"gap-pca", sc::gap_select(sweep, p.k_min, p.k_max,
                                              sc::GapReference::pca, gap_opt)});
  curves.push_back({"jump", sc::jump_select(sweep, p.k_min, p.k_max)});

  auto report = std::make_unique<sc_report>();
  sc::ReportDoc& doc = report->doc;
  doc.add_meta("command", "indices");
  doc.add_meta("n", x.n);
  doc.add_meta("p", x.p);
  add_param_meta(doc, p);
  for (const NamedCurve& nc : curves)
    doc.add_meta("k_hat_" + nc.column, nc.curve.chosen_k);

  sc::ReportDoc::Table table;
  table.name = "curves";
  table.columns = {"k"};
  for (const NamedCurve& nc : curves) {
    table.columns.push_back(nc.column);
    for (const auto& [extra, values] : nc.curve.extras) {
      (void)values;
      table.columns.push_back(nc.column + "-" + extra);
    }
  }
  for (int k = p.k_min; k <= p.k_max; ++k) {
    std::vector<std::string> row = {std::to_string(k)};
    for (const NamedCurve& nc : curves) {
      const auto& ks = nc.curve.k_values;
      const auto at = std::find(ks.begin(), ks.end(), k);
      const bool present = at != ks.end();
      const std::size_t idx = present ? std::size_t(at - ks.begin()) : 0;
      row.push_back(present ? cell(nc.curve.scores[idx]) : "NA");
      for (const auto& [extra, values] : nc.curve.extras) {
        (void)extra;
        row.push_back(present ? cell(values[idx]) : "NA");
      }
    }
    table.rows.push_back(std::move(row));
  }
  doc.tables.push_back(std::move(table));
  return report.release();
}

sc_report* build_benchmark_report(const std::string& design,
                                  const std::map<std::string, double>& dparams,
                                  const std::vector<std::string>& methods,
                                  int replicates, const sc_params& p) {
  sc::BenchOptions options;
  options.replicates = replicates;
  options.k_min = p.k_min;
  options.k_max = p.k_max;
  options.s0 = p.s0;
  options.ps_threshold = p.ps_threshold;
  options.selection = selection_options(p);

  const sc::BenchResult result =
      sc::run_benchmark(design, dparams, methods, options);

  auto report = std::make_unique<sc_report>();
  sc::ReportDoc& doc = report->doc;
  doc.add_meta("command", "benchmark");
  doc.add_meta("design", result.design);
  doc.add_meta("true_k", result.true_k);
  doc.add_meta("replicates", replicates);
  add_param_meta(doc, p);

  sc::ReportDoc::Table summary;
  summary.name = "summary";
  summary.columns = {"method",       "design",     "replicates", "frac_correct",
                     "mean_k",       "rmse_k",     "ari_mean",   "ari_sd",
                     "jaccard_mean", "jaccard_sd", "mean_selected", "seconds"};
  for (const sc::BenchRow& row : result.rows)
    summary.rows.push_back({row.method, result.design,
                            std::to_string(row.replicates),
                            cell(row.frac_correct), cell(row.mean_k),
                            cell(row.rmse_k), cell(row.ari_mean),
                            cell(row.ari_sd), cell(row.jaccard_mean),
                            cell(row.jaccard_sd), cell(row.mean_selected),
                            cell(row.seconds)});
  doc.tables.push_back(std::move(summary));

  sc::ReportDoc::Table details;
  details.name = "details";
  details.columns = {"replicate", "method",  "k_hat",   "lambda_hat",
                     "n_selected", "ari",    "jaccard", "seconds"};
  for (const sc::BenchDetail& d : result.details)
    details.rows.push_back(
        {std::to_string(d.replicate), d.method, std::to_string(d.k_hat),
         cell(d.lambda_hat),
         d.n_selected < 0 ? "NA" : std::to_string(d.n_selected), cell(d.ari),
         cell(d.jaccard), cell(d.seconds)});
  doc.tables.push_back(std::move(details));
  return report.release();
}

}  // namespace

extern "C" {

const char* sc_version(void) { return "1.0.0"; }

const char* sc_last_error(void) { return g_last_error.c_str(); }

void sc_params_init(sc_params* params) {
  if (params == nullptr) return;
  params->k_min = 1;
  params->k_max = 10;
  params->fraction = 0.7;
  params->b = 100;
  params->rho = 5.0;
  params->s0 = 0.8;
  params->restarts = 20;
  params->subsample_restarts = 10;
  params->inner_restarts = 5;
  params->n_splits = 5;
  params->lambda0 = 1.2;
  params->grid_m = 28;
  params->ps_threshold = 0.8;
  params->seed = 0;
  params->threads = 1;
}

sc_status sc_dataset_create(int n, int p, const double* values,
                            sc_dataset** out) {
  return guarded([&] {
    require(values != nullptr && out != nullptr, "null pointer argument");
    require(n >= 2 && p >= 1, "need n >= 2 and p >= 1");
    std::vector<double> copy(values, values + std::size_t(n) * p);
    auto handle = std::make_unique<sc_dataset>();
    handle->data.x = sc::DataMatrix(n, p, std::move(copy));
    handle->data.design_id = "array";
    *out = handle.release();
  });
}

sc_status sc_dataset_load(const char* csv_path, int has_header,
                          const char* truth_path, sc_dataset** out) {
  return guarded([&] {
    require(csv_path != nullptr && out != nullptr, "null pointer argument");
    std::optional<std::string> truth;
    if (truth_path != nullptr) truth = truth_path;
    auto handle = std::make_unique<sc_dataset>();
    handle->data = sc::load_csv(csv_path, has_header != 0, truth);
    *out = handle.release();
  });
}

sc_status sc_dataset_simulate(const char* design, const char* params,
                              uint64_t seed, sc_dataset** out) {
  return guarded([&] {
    require(design != nullptr && out != nullptr, "null pointer argument");
    auto handle = std::make_unique<sc_dataset>();
    handle->data = sc::generate_by_name(design, parse_kv_list(params), seed);
    *out = handle.release();
  });
}

sc_status sc_dataset_save(const sc_dataset* data, const char* csv_path,
                          const char* truth_path) {
  return guarded([&] {
    require(data != nullptr && csv_path != nullptr, "null pointer argument");
    sc::save_matrix_csv(csv_path, data->data.x);
    if (truth_path != nullptr) {
      require(data->data.truth.has_value(),
              "dataset carries no ground-truth labels to save");
      sc::save_labels_csv(truth_path, *data->data.truth);
    }
  });
}

int sc_dataset_rows(const sc_dataset* data) {
  return data == nullptr ? 0 : data->data.x.n;
}

int sc_dataset_cols(const sc_dataset* data) {
  return data == nullptr ? 0 : data->data.x.p;
}

int sc_dataset_has_truth(const sc_dataset* data) {
  return data != nullptr && data->data.truth.has_value() ? 1 : 0;
}

sc_status sc_dataset_truth(const sc_dataset* data, int32_t* out) {
  return guarded([&] {
    require(data != nullptr && out != nullptr, "null pointer argument");
    require(data->data.truth.has_value(),
            "dataset carries no ground-truth labels");
    const std::vector<int>& labels = data->data.truth->labels;
    for (std::size_t i = 0; i < labels.size(); ++i)
      out[i] = static_cast<int32_t>(labels[i]);
  });
}

void sc_dataset_free(sc_dataset* data) { delete data; }

sc_status sc_estimate_k(const sc_dataset* data, const char* method,
                        const sc_params* params, sc_report** out) {
  return guarded([&] {
    require(data != nullptr && method != nullptr && out != nullptr,
            "null pointer argument");
    const sc_params p = checked_params(params);
    *out = build_estimate_k_report(data->data.x, method, p);
  });
}

sc_status sc_sparse_estimate(const sc_dataset* data, const char* method,
                             const sc_params* params, sc_report** out) {
  return guarded([&] {
    require(data != nullptr && method != nullptr && out != nullptr,
            "null pointer argument");
    const sc_params p = checked_params(params);
    *out = build_sparse_report(data->data.x, method, p);
  });
}

sc_status sc_index_curves(const sc_dataset* data, const sc_params* params,
                          sc_report** out) {
  return guarded([&] {
    require(data != nullptr && out != nullptr, "null pointer argument");
    const sc_params p = checked_params(params);
    *out = build_indices_report(data->data.x, p);
  });
}

sc_status sc_benchmark(const char* design, const char* design_params,
                       const char* methods, int replicates,
                       const sc_params* params, sc_report** out) {
  return guarded([&] {
    require(design != nullptr && methods != nullptr && out != nullptr,
            "null pointer argument");
    const sc_params p = checked_params(params);
    *out = build_benchmark_report(design, parse_kv_list(design_params),
                                  parse_name_list(methods), replicates, p);
  });
}

int sc_report_k(const sc_report* report) {
  return report == nullptr ? 0 : report->k_hat;
}

double sc_report_lambda(const sc_report* report) {
  return report == nullptr ? 0.0 : report->lambda_hat;
}

int sc_report_n_selected(const sc_report* report) {
  return report == nullptr ? 0 : report->n_selected;
}

int sc_report_label_count(const sc_report* report) {
  return report == nullptr ? 0 : static_cast<int>(report->labels.size());
}

sc_status sc_report_labels(const sc_report* report, int32_t* out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null pointer argument");
    for (std::size_t i = 0; i < report->labels.size(); ++i)
      out[i] = static_cast<int32_t>(report->labels[i]);
  });
}

size_t sc_report_text_size(const sc_report* report) {
  if (report == nullptr) return 0;
  return sc::write_report(report->doc).size() + 1;
}

sc_status sc_report_text(const sc_report* report, char* buffer, size_t size) {
  return guarded([&] {
    require(report != nullptr && buffer != nullptr, "null pointer argument");
    const std::string text = sc::write_report(report->doc);
    require(size >= text.size() + 1,
            "buffer too small; query sc_report_text_size first");
    std::memcpy(buffer, text.data(), text.size());
    buffer[text.size()] = '\0';
  });
}

sc_status sc_report_save(const sc_report* report, const char* path) {
  return guarded([&] {
    require(report != nullptr && path != nullptr, "null pointer argument");
    sc::save_report(report->doc, path);
  });
}

sc_status sc_report_save_table(const sc_report* report, const char* table,
                               const char* path) {
  return guarded([&] {
    require(report != nullptr && table != nullptr && path != nullptr,
            "null pointer argument");
    const sc::ReportDoc::Table* found = report->doc.find_table(table);
    require(found != nullptr,
            "report has no table named \"" + std::string(table) + "\"");
    sc::save_table_tsv(*found, path);
  });
}

void sc_report_free(sc_report* report) { delete report; }

sc_status sc_ari(const int32_t* a, const int32_t* b, int n, double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr,
            "null pointer argument");
    require(n >= 1, "need at least one sample");
    std::vector<int> va(a, a + n), vb(b, b + n);
    *out = sc::adjusted_rand_index(va, vb);
  });
}

sc_status sc_jaccard(const uint8_t* a, const uint8_t* b, int p, double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr,
            "null pointer argument");
    require(p >= 1, "need at least one feature");
    sc::FeatureMask ma(p), mb(p);
    for (int j = 0; j < p; ++j) {
      ma.selected[j] = a[j] ? 1 : 0;
      mb.selected[j] = b[j] ? 1 : 0;
    }
    *out = sc::jaccard_index(ma, mb);
  });
}

}  // extern "C"
