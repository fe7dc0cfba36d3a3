#pragma once

// Result tables and their file formats.
//
// results.csv (schema 1):
//   # schema=1
//   graph,n,statistic,mean,stderr,samples,seed,horizon,r,provenance
// Means and errors are printed with 12 significant digits; r is empty when
// the statistic does not depend on a radius; provenance is "exact" or "mc".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rangewalk/estimators.hpp"

namespace rangewalk {

struct ReportRow {
  std::string graph;
  std::uint64_t n = 0;
  std::string statistic;
  Estimate value;
  std::optional<std::uint32_t> r;
  bool exact = false;
  bool entropy_unit = false;  // rescaled by --bits
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<ReportRow> rows;
  std::vector<Check> checks;

  bool passed() const;
  void add(ReportRow row) { rows.push_back(std::move(row)); }
  void check(std::string name, bool ok, std::string detail);
  /// Rows matching (graph, statistic), in insertion order.
  std::vector<const ReportRow*> series(const std::string& graph, const std::string& statistic) const;
};

std::string results_csv(const ExperimentReport& report, bool bits = false);
nlohmann::json results_json(const ExperimentReport& report, bool bits = false);

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// Minimal static line chart: axes, ticks, one polyline per series, legend.
std::string svg_line_chart(const std::string& title, const std::string& y_label,
                           const std::vector<PlotSeries>& series, bool log_x = true);

}  // namespace rangewalk
