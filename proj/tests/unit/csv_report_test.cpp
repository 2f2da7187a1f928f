#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sparseclust/csv.hpp"
#include "sparseclust/data_model.hpp"
#include "sparseclust/error.hpp"
#include "sparseclust/report.hpp"
#include "sparseclust/text.hpp"

using namespace sparseclust;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "sparseclust-tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool message_contains(const Error& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("text") {

TEST_CASE("format_double round-trips awkward values bit for bit") {
  for (double v : {0.1 + 0.2, 1e-17, 1.0 / 3.0, 0.5, 3.0, -2.75e-8, 1e300,
                   123456789.123456789, -0.0, 6.02e23}) {
    double back = 0.0;
    REQUIRE(parse_double(format_double(v), back));
    CHECK(back == v);
    CHECK(std::signbit(back) == std::signbit(v));
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.1 + 0.2) != "0.3");  // and still parses back exactly
}

TEST_CASE("parse_double consumes the whole string or fails") {
  double v = 0.0;
  CHECK(parse_double("1.5", v));
  CHECK(v == 1.5);
  CHECK(parse_double("1e3", v));
  CHECK(v == 1000.0);
  CHECK(parse_double("-0.25", v));
  CHECK(v == -0.25);
  CHECK(!parse_double("1.5x", v));
  CHECK(!parse_double("", v));
  CHECK(!parse_double(" 1.5", v));
  CHECK(!parse_double("1.5 ", v));
  CHECK(!parse_double("1,5", v));
}

TEST_CASE("parse_int is equally strict") {
  int v = 0;
  CHECK(parse_int("42", v));
  CHECK(v == 42);
  CHECK(parse_int("-7", v));
  CHECK(v == -7);
  CHECK(parse_int("042", v));
  CHECK(v == 42);
  CHECK(!parse_int("4.2", v));
  CHECK(!parse_int("+5", v));
  CHECK(!parse_int("", v));
  CHECK(!parse_int("x", v));
}

TEST_CASE("trim strips spaces, tabs and carriage returns") {
  CHECK(trim(" \tx y\t \r") == "x y");
  CHECK(trim("") == "");
  CHECK(trim("   ") == "");
  CHECK(trim("plain") == "plain");
}

}  // TEST_SUITE

TEST_SUITE("csv") {

TEST_CASE("matrices survive a save/load cycle bit for bit") {
  DataMatrix x(3, 3, {0.1 + 0.2, 1e-17, -1.0 / 3.0,
                      1e30, -2.75e-8, 123456789.123456789,
                      0.0, -5.5, 42.0});
  fs::path path = temp_file("roundtrip.csv");
  save_matrix_csv(path.string(), x);
  LabeledDataset back = load_csv(path.string(), false);
  CHECK(back.x.n == 3);
  CHECK(back.x.p == 3);
  CHECK(back.x.values == x.values);
  CHECK(back.design_id == "csv");
  CHECK(!back.truth.has_value());
  // Identical matrices produce identical bytes.
  fs::path again = temp_file("roundtrip2.csv");
  save_matrix_csv(again.string(), back.x);
  CHECK(read_file(path) == read_file(again));
}

TEST_CASE("a header line is skipped when requested") {
  fs::path path = temp_file("header.csv");
  write_file(path, "f1,f2\n1,2\n3,4\n");
  LabeledDataset d = load_csv(path.string(), true);
  CHECK(d.x.n == 2);
  CHECK(d.x.p == 2);
  CHECK(d.x.values == std::vector<double>{1, 2, 3, 4});
  // Without the flag the header reads as a data row and fails to parse.
  CHECK_THROWS_AS(load_csv(path.string(), false), Error);
}

TEST_CASE("whitespace and trailing blank lines are tolerated") {
  fs::path path = temp_file("spaces.csv");
  write_file(path, " 1 ,\t2\n 3,4 \r\n\n\n");
  LabeledDataset d = load_csv(path.string(), false);
  CHECK(d.x.n == 2);
  CHECK(d.x.values == std::vector<double>{1, 2, 3, 4});
}

TEST_CASE("parse failures name the offending 1-based cell") {
  fs::path path = temp_file("badcell.csv");
  write_file(path, "1,2\n3,x\n");
  try {
    load_csv(path.string(), false);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
    CHECK(message_contains(e, "(2,2)"));
  }
  // With a header the physical line number is reported, not the data row.
  fs::path with_header = temp_file("badcell2.csv");
  write_file(with_header, "h1,h2\n1,2\n3,nan\n");
  try {
    load_csv(with_header.string(), true);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(message_contains(e, "(3,2)"));
  }
}

TEST_CASE("ragged rows and tiny files are rejected") {
  fs::path ragged = temp_file("ragged.csv");
  write_file(ragged, "1,2\n3\n");
  try {
    load_csv(ragged.string(), false);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(message_contains(e, "row 2"));
  }
  fs::path tiny = temp_file("tiny.csv");
  write_file(tiny, "1,2\n");
  CHECK_THROWS_AS(load_csv(tiny.string(), false), Error);
}

TEST_CASE("a missing file is an io error") {
  try {
    load_csv("/nonexistent/nowhere.csv", false);
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}

TEST_CASE("truth sidecars accept any integer coding") {
  fs::path data = temp_file("truth-data.csv");
  write_file(data, "1,0\n2,0\n3,0\n");
  fs::path truth = temp_file("truth-labels.csv");
  write_file(truth, "5\n5\n-2\n");
  LabeledDataset d = load_csv(data.string(), false, truth.string());
  REQUIRE(d.truth.has_value());
  CHECK(d.truth->k == 2);
  // Codes are densified by sorted value: -2 -> 0, 5 -> 1.
  CHECK(d.truth->labels == std::vector<int>{1, 1, 0});

  fs::path short_truth = temp_file("truth-short.csv");
  write_file(short_truth, "1\n2\n");
  CHECK_THROWS_AS(load_csv(data.string(), false, short_truth.string()), Error);
  fs::path bad_truth = temp_file("truth-bad.csv");
  write_file(bad_truth, "1\ntwo\n3\n");
  CHECK_THROWS_AS(load_csv(data.string(), false, bad_truth.string()), Error);
}

TEST_CASE("labels are written one per line") {
  Partition truth({0, 1, 0, 2}, 3);
  fs::path path = temp_file("labels-out.csv");
  save_labels_csv(path.string(), truth);
  CHECK(read_file(path) == "0\n1\n0\n2\n");
}

}  // TEST_SUITE

TEST_SUITE("report") {

namespace {

ReportDoc sample_doc() {
  ReportDoc doc;
  doc.add_meta("method", "s4");
  doc.add_meta("k_hat", 3);
  doc.add_meta("score", 0.1 + 0.2);
  ReportDoc::Table table;
  table.name = "cells";
  table.columns = {"k", "lambda"};
  table.rows = {{"2", "1.5"}, {"3", "2.25"}};
  doc.tables.push_back(table);
  ReportDoc::Table empty;
  empty.name = "notes";
  empty.columns = {"text"};
  doc.tables.push_back(empty);
  return doc;
}

}  // namespace

TEST_CASE("documents serialize to the documented layout") {
  ReportDoc doc = sample_doc();
  CHECK(write_report(doc) ==
        "sparseclust-report 1\n"
        "[meta]\n"
        "method = s4\n"
        "k_hat = 3\n"
        "score = 0.30000000000000004\n"
        "[table cells]\n"
        "k\tlambda\n"
        "2\t1.5\n"
        "3\t2.25\n"
        "[table notes]\n"
        "text\n");
}

TEST_CASE("parsing its own output reproduces the document exactly") {
  ReportDoc doc = sample_doc();
  ReportDoc back = parse_report(write_report(doc));
  CHECK(back.meta == doc.meta);
  REQUIRE(back.tables.size() == 2);
  for (std::size_t t = 0; t < 2; ++t) {
    CHECK(back.tables[t].name == doc.tables[t].name);
    CHECK(back.tables[t].columns == doc.tables[t].columns);
    CHECK(back.tables[t].rows == doc.tables[t].rows);
  }
  double score = 0.0;
  REQUIRE(parse_double(back.meta_value("score"), score));
  CHECK(score == 0.1 + 0.2);  // numeric meta is bit-exact after re-reading
}

TEST_CASE("lookup helpers answer misses gracefully") {
  ReportDoc doc = sample_doc();
  CHECK(doc.meta_value("absent") == "");
  CHECK(doc.find_table("absent") == nullptr);
  REQUIRE(doc.find_table("cells") != nullptr);
  CHECK(doc.find_table("cells")->rows.size() == 2);
}

TEST_CASE("file round-trip and CRLF input both work") {
  ReportDoc doc = sample_doc();
  fs::path path = temp_file("doc.report");
  save_report(doc, path.string());
  ReportDoc back = load_report(path.string());
  CHECK(back.meta == doc.meta);
  CHECK(back.tables.size() == doc.tables.size());

  std::string text = write_report(doc);
  std::string crlf;
  for (char ch : text) {
    if (ch == '\n') crlf += '\r';
    crlf += ch;
  }
  ReportDoc tolerant = parse_report(crlf);
  CHECK(tolerant.meta == doc.meta);
  CHECK(tolerant.tables[0].rows == doc.tables[0].rows);
}

TEST_CASE("malformed documents are rejected with validation errors") {
  CHECK_THROWS_AS(parse_report("not a report\n"), Error);
  CHECK_THROWS_AS(parse_report(""), Error);
  CHECK_THROWS_AS(
      parse_report("sparseclust-report 1\n[meta]\nno equals sign\n"), Error);
  CHECK_THROWS_AS(
      parse_report("sparseclust-report 1\nstray content\n"), Error);
  CHECK_THROWS_AS(parse_report("sparseclust-report 1\n"
                               "[table t]\n"
                               "a\tb\n"
                               "1\n"),
                  Error);
  CHECK_THROWS_AS(load_report("/nonexistent/nowhere.report"), Error);
}

TEST_CASE("single tables render as flat TSV") {
  ReportDoc::Table table;
  table.name = "t";
  table.columns = {"a", "b"};
  table.rows = {{"1", "2"}, {"3", "4"}};
  CHECK(write_table_tsv(table) == "a\tb\n1\t2\n3\t4\n");
  fs::path path = temp_file("table.tsv");
  save_table_tsv(table, path.string());
  CHECK(read_file(path) == "a\tb\n1\t2\n3\t4\n");
}

}  // TEST_SUITE
