#include "sparseclust/report.hpp"

#include <fstream>
#include <sstream>

#include "sparseclust/error.hpp"
#include "sparseclust/text.hpp"

namespace sparseclust {

namespace {
constexpr const char* kMagic = "sparseclust-report 1";

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> cells;
  while (true) {
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      cells.emplace_back(line);
      break;
    }
    cells.emplace_back(line.substr(0, tab));
    line.remove_prefix(tab + 1);
  }
  return cells;
}
}  // namespace

void ReportDoc::add_meta(const std::string& key, const std::string& value) {
  meta.emplace_back(key, value);
}
void ReportDoc::add_meta(const std::string& key, double value) {
  meta.emplace_back(key, format_double(value));
}
void ReportDoc::add_meta(const std::string& key, int value) {
  meta.emplace_back(key, std::to_string(value));
}

std::string ReportDoc::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  return {};
}

const ReportDoc::Table* ReportDoc::find_table(const std::string& name) const {
  for (const Table& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

std::string write_report(const ReportDoc& doc) {
  std::ostringstream out;
  out << kMagic << '\n';
  out << "[meta]\n";
  for (const auto& [key, value] : doc.meta) out << key << " = " << value << '\n';
  for (const ReportDoc::Table& table : doc.tables) {
    out << "[table " << table.name << "]\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c > 0) out << '\t';
      out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out << '\t';
        out << row[c];
      }
      out << '\n';
    }
  }
  return out.str();
}

void save_report(const ReportDoc& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error::io("cannot open \"" + path + "\" for writing");
  out << write_report(doc);
  if (!out) throw Error::io("failed writing \"" + path + "\"");
}

ReportDoc parse_report(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || std::string(trim(line)) != kMagic)
    throw Error::validation("not a recognized report document");

  ReportDoc doc;
  enum class Section { none, meta, table_header, table_rows };
  Section section = Section::none;
  ReportDoc::Table* current = nullptr;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view == "[meta]") {
      section = Section::meta;
      continue;
    }
    if (view.rfind("[table ", 0) == 0 && view.back() == ']') {
      doc.tables.emplace_back();
      current = &doc.tables.back();
      current->name = std::string(view.substr(7, view.size() - 8));
      section = Section::table_header;
      continue;
    }
    switch (section) {
      case Section::meta: {
        const std::size_t eq = view.find(" = ");
        if (eq == std::string_view::npos)
          throw Error::validation("malformed metadata line \"" +
                                  std::string(view) + "\"");
        doc.meta.emplace_back(std::string(view.substr(0, eq)),
                              std::string(view.substr(eq + 3)));
        break;
      }
      case Section::table_header:
        current->columns = split_tabs(line);
        section = Section::table_rows;
        break;
      case Section::table_rows: {
        std::vector<std::string> cells = split_tabs(line);
        if (cells.size() != current->columns.size())
          throw Error::validation("table \"" + current->name +
                                  "\" row has wrong cell count");
        current->rows.push_back(std::move(cells));
        break;
      }
      case Section::none:
        throw Error::validation("content before any report section");
    }
  }
  return doc;
}

ReportDoc load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error::io("cannot open \"" + path + "\" for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_report(buffer.str());
}

std::string write_table_tsv(const ReportDoc::Table& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << '\t';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << '\t';
      out << row[c];
    }
    out << '\n';
  }
  return out.str();
}

void save_table_tsv(const ReportDoc::Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error::io("cannot open \"" + path + "\" for writing");
  out << write_table_tsv(table);
  if (!out) throw Error::io("failed writing \"" + path + "\"");
}

}  // namespace sparseclust
