// Machine-readable run reports.
//
// Every command produces a Report; the JSON rendering is the lossless one
// (rationals as numerator/denominator integer strings), CSV is the tabular
// hand-off for plotting. CSV output contains no timing and no other
// run-to-run noise: identical inputs must give byte-identical files.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coprime/rat.hpp"

namespace coprime {

struct ReportEntry {
  std::string name;
  Rat value;
  std::optional<std::string> mode;  // "exhaustive", "montecarlo", "exact", ...
  std::optional<Rat> tail_bound;
  std::optional<std::pair<Rat, Rat>> ci;
};

/// An explicit table overrides the generic one-row-per-result CSV layout
/// (the density commands pin their own column sets).
struct ReportTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  std::map<std::string, std::string> params;
  std::vector<ReportEntry> results;
  double timing_ms = 0.0;
  std::optional<ReportTable> table;
};

/// JSON per the fixed schema:
/// {command, params, results: [{name, num, den, decimal, mode, tail_bound?,
/// ci?}], timing_ms}. Key order is deterministic.
std::string report_to_json(const Report& report);

/// Inverse of report_to_json for the schema fields (the CSV table is a
/// rendering, not part of the schema, and is not round-tripped).
Report report_from_json(const std::string& json_text);

/// CSV: a header row plus one record per result (or the explicit table).
/// Rationals appear as "num/den" strings plus a rounded decimal column.
std::string report_to_csv(const Report& report);

}  // namespace coprime
