#include "betaflow/report_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "betaflow/errors.hpp"

namespace betaflow {

OutputFormats OutputFormats::parse(const std::string& text) {
  OutputFormats f{false, false, false};
  std::stringstream ss(text);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") f.csv = true;
    else if (item == "json") f.json = true;
    else if (item == "svg") f.svg = true;
    else throw InvalidParameter("unknown output format '" + item + "'");
    any = true;
  }
  if (!any) throw InvalidParameter("no output format selected");
  return f;
}

std::string OutputFormats::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(csv, "csv");
  add(json, "json");
  add(svg, "svg");
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return std::get<std::string>(c);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << body;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string sanitize(const std::string& label) {
  std::string out = label;
  for (char& ch : out)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.')) ch = '_';
  return out;
}

}  // namespace

std::string format_csv(const ReportTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw InvalidParameter("row width does not match the columns of table " + table.name);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  j["config"] = report.config;
  j["passed"] = report.passed();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& [name, ok] : report.checks) checks.push_back({{"name", name}, {"passed", ok}});
  j["checks"] = checks;
  j["aggregates"] = report.aggregates;
  auto tables = nlohmann::ordered_json::array();
  for (const auto& t : report.tables) {
    nlohmann::ordered_json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      auto jr = nlohmann::ordered_json::array();
      for (const auto& c : row) jr.push_back(cell_json(c));
      rows.push_back(std::move(jr));
    }
    jt["rows"] = std::move(rows);
    tables.push_back(std::move(jt));
  }
  j["tables"] = std::move(tables);
  return j;
}

std::vector<std::size_t> histogram_counts(const RootSample& sample) {
  const double lo = -sample.support_bound - 0.1;
  const double hi = sample.support_bound + 0.1;
  const double width = (hi - lo) / kHistogramBins;
  std::vector<std::size_t> counts(kHistogramBins, 0);
  for (double x : sample.roots) {
    auto bin = static_cast<long>(std::floor((x - lo) / width));
    bin = std::clamp(bin, 0L, static_cast<long>(kHistogramBins - 1));
    ++counts[static_cast<std::size_t>(bin)];
  }
  return counts;
}

std::string svg_histogram(const RootSample& sample) {
  constexpr double kWidth = 640, kHeight = 320, kMargin = 40;
  const auto counts = histogram_counts(sample);
  const std::size_t peak = std::max<std::size_t>(1, *std::max_element(counts.begin(), counts.end()));
  const double bar = (kWidth - 2 * kMargin) / kHistogramBins;
  const double plot_h = kHeight - 2 * kMargin;
  const double lo = -sample.support_bound - 0.1;
  const double hi = sample.support_bound + 0.1;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" "
      << "text-anchor=\"middle\">" << sample.label << " (" << sample.roots.size() << " roots)</text>\n";
  for (int b = 0; b < kHistogramBins; ++b) {
    const double h = plot_h * static_cast<double>(counts[b]) / static_cast<double>(peak);
    svg << "<rect x=\"" << format_double(kMargin + b * bar) << "\" y=\""
        << format_double(kHeight - kMargin - h) << "\" width=\"" << format_double(bar * 0.9)
        << "\" height=\"" << format_double(h) << "\" fill=\"steelblue\"/>\n";
  }
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << format_double(lo) << "</text>\n";
  svg << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << format_double(hi)
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& dir,
                                                OutputFormats formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  const std::string stem = sanitize(report.experiment);
  if (formats.csv) {
    for (const auto& t : report.tables) {
      auto path = dir / (stem + "_" + sanitize(t.name) + ".csv");
      write_file(path, format_csv(t));
      written.push_back(path);
    }
  }
  if (formats.json) {
    auto path = dir / (stem + ".json");
    write_file(path, report_to_json(report).dump(2) + "\n");
    written.push_back(path);
  }
  if (formats.svg) {
    for (const auto& s : report.root_samples) {
      auto path = dir / (stem + "_hist_" + sanitize(s.label) + ".svg");
      write_file(path, svg_histogram(s));
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace betaflow
