#pragma once

#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "mhm/restriction.hpp"

namespace mhm {

/// A named table of string cells. Rationals enter as "num/den".
struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

/// Output of one CLI command. Emission order is the insertion order, so a
/// report built deterministically renders byte-identically.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::deque<ReportTable> tables;  // references stay valid as tables are added
  std::vector<std::string> notes;
  bool ok = true;

  ReportTable& table(const std::string& name, std::vector<std::string> columns);
  std::string to_tsv() const;
  std::string to_json() const;
  std::string render(const std::string& format) const;  // "tsv" or "json"
};

/// Appends one record per (mode, α, j, p) to the "restriction" table, with
/// dim Gr^F_p H^j computed both ways, and one per (mode, α, j, weight) to
/// the "weights" table when weights were computed.
void add_restriction_records(Report& report, const RestrictionResult& res);

}  // namespace mhm
