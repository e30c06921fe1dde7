#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "betaflow/experiments.hpp"

namespace betaflow {

struct OutputFormats {
  bool csv = true;
  bool json = true;
  bool svg = false;

  /// Comma list drawn from {csv, json, svg}.
  static OutputFormats parse(const std::string& text);
  std::string to_string() const;
};

/// Header line plus one line per row. Doubles use 17 significant digits.
std::string format_csv(const ReportTable& table);

std::string format_double(double x);

nlohmann::ordered_json report_to_json(const ExperimentReport& report);

constexpr int kHistogramBins = 64;

/// Counts over kHistogramBins equal bins on [-A - 0.1, A + 0.1]; values
/// outside are clamped into the end bins.
std::vector<std::size_t> histogram_counts(const RootSample& sample);

/// Self-contained SVG bar chart of histogram_counts(sample).
std::string svg_histogram(const RootSample& sample);

/// Writes <experiment>_<table>.csv, <experiment>.json and
/// <experiment>_hist_<label>.svg as selected. Returns the paths written.
/// Throws IoError on any filesystem failure.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& dir,
                                                OutputFormats formats);

}  // namespace betaflow
