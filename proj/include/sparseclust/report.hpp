#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sparseclust {

// Self-describing structured text document: an ordered key/value metadata
// block followed by named tab-separated tables.  Serialized form:
//
//   sparseclust-report 1
//   [meta]
//   key = value
//   [table <name>]
//   col1<TAB>col2
//   v11<TAB>v12
//
// Every numeric value is written in shortest round-trip decimal form, so
// re-reading a document reproduces each score bit-for-bit.
struct ReportDoc {
  struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
  };

  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Table> tables;

  void add_meta(const std::string& key, const std::string& value);
  void add_meta(const std::string& key, double value);
  void add_meta(const std::string& key, int value);
  // Empty string when the key is absent.
  std::string meta_value(const std::string& key) const;
  const Table* find_table(const std::string& name) const;
};

std::string write_report(const ReportDoc& doc);
void save_report(const ReportDoc& doc, const std::string& path);
ReportDoc parse_report(const std::string& text);
ReportDoc load_report(const std::string& path);

// Flat TSV rendering of one table (header row + data rows).
std::string write_table_tsv(const ReportDoc::Table& table);
void save_table_tsv(const ReportDoc::Table& table, const std::string& path);

}  // namespace sparseclust
