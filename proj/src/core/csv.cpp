#include "sparseclust/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "sparseclust/error.hpp"
#include "sparseclust/text.hpp"

namespace sparseclust {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::io("cannot open \"" + path + "\" for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  // Drop trailing blank lines so a final newline does not read as a row.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_cells(const std::string& line) {
  std::vector<std::string_view> cells;
  std::string_view rest(line);
  while (true) {
    const std::size_t comma = rest.find(',');
    if (comma == std::string_view::npos) {
      cells.push_back(trim(rest));
      break;
    }
    cells.push_back(trim(rest.substr(0, comma)));
    rest.remove_prefix(comma + 1);
  }
  return cells;
}

Partition load_truth_file(const std::string& path, int n) {
  const std::vector<std::string> lines = read_lines(path);
  if (static_cast<int>(lines.size()) != n)
    throw Error::validation("truth file \"" + path + "\" has " +
                            std::to_string(lines.size()) + " labels but the data has " +
                            std::to_string(n) + " rows");
  std::vector<int> raw(n);
  for (int i = 0; i < n; ++i) {
    if (!parse_int(trim(lines[i]), raw[i]))
      throw Error::validation("truth file \"" + path + "\" line " +
                              std::to_string(i + 1) + " is not an integer label");
  }
  // Normalize arbitrary integer codings to dense 0..k-1 by sorted value.
  std::map<int, int> dense;
  for (int v : raw) dense.emplace(v, 0);
  int next = 0;
  for (auto& [value, id] : dense) {
    (void)value;
    id = next++;
  }
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = dense[raw[i]];
  return Partition(std::move(labels), next);
}

}  // namespace

LabeledDataset load_csv(const std::string& path, bool has_header,
                        const std::optional<std::string>& truth_path) {
  std::vector<std::string> lines = read_lines(path);
  const int first_row = has_header ? 1 : 0;
  const int n = static_cast<int>(lines.size()) - first_row;
  if (n < 2)
    throw Error::validation("\"" + path + "\" has " + std::to_string(std::max(n, 0)) +
                            " data rows; at least 2 are required");

  std::vector<double> values;
  int p = -1;
  for (int r = 0; r < n; ++r) {
    const std::vector<std::string_view> cells = split_cells(lines[first_row + r]);
    if (p < 0) {
      p = static_cast<int>(cells.size());
      values.reserve(static_cast<std::size_t>(n) * p);
    } else if (static_cast<int>(cells.size()) != p) {
      throw Error::validation("\"" + path + "\" row " +
                              std::to_string(first_row + r + 1) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(p));
    }
    for (int c = 0; c < p; ++c) {
      double v = 0.0;
      if (!parse_double(cells[c], v) || !std::isfinite(v))
        throw Error::validation("\"" + path + "\" cell (" +
                                std::to_string(first_row + r + 1) + "," +
                                std::to_string(c + 1) + ") is not a finite number");
      values.push_back(v);
    }
  }

  LabeledDataset out;
  out.x = DataMatrix(n, p, std::move(values));
  out.design_id = "csv";
  if (truth_path) out.truth = load_truth_file(*truth_path, n);
  return out;
}

void save_matrix_csv(const std::string& path, const DataMatrix& x) {
  std::ostringstream body;
  for (int i = 0; i < x.n; ++i) {
    for (int j = 0; j < x.p; ++j) {
      if (j > 0) body << ',';
      body << format_double(x(i, j));
    }
    body << '\n';
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error::io("cannot open \"" + path + "\" for writing");
  out << body.str();
  if (!out) throw Error::io("failed writing \"" + path + "\"");
}

void save_labels_csv(const std::string& path, const Partition& truth) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error::io("cannot open \"" + path + "\" for writing");
  for (int label : truth.labels) out << label << '\n';
  if (!out) throw Error::io("failed writing \"" + path + "\"");
}

}  // namespace sparseclust
