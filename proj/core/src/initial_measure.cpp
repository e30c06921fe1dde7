#include "betaflow/initial_measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "betaflow/errors.hpp"

namespace betaflow {

namespace {

double parse_double(std::string_view text, const std::string& context) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw InvalidParameter("cannot parse number '" + std::string(text) + "' in " + context);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::string fmt(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::vector<double> read_roots_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open roots file '" + path + "'");
  std::vector<double> roots;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    roots.push_back(parse_double(line, path));
  }
  if (roots.empty()) throw InvalidParameter("roots file '" + path + "' is empty");
  return roots;
}

InitialMeasureSpec InitialMeasureSpec::parse(const std::string& text, std::size_t n) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidParameter("initial measure '" + text + "' lacks a kind");
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);

  InitialMeasureSpec spec;
  spec.n = n;
  if (kind == "uniform" || kind == "uniform_interval") {
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw InvalidParameter("uniform needs two endpoints: uniform:a,b");
    spec.kind = MeasureKind::UniformInterval;
    spec.lo = parse_double(parts[0], text);
    spec.hi = parse_double(parts[1], text);
    if (!(spec.lo < spec.hi)) throw InvalidParameter("uniform interval needs a < b");
  } else if (kind == "semicircle") {
    spec.kind = MeasureKind::Semicircle;
    spec.variance = parse_double(body, text);
    if (!(spec.variance > 0.0)) throw InvalidParameter("semicircle variance must be positive");
  } else if (kind == "atoms" || kind == "two_atoms") {
    spec.kind = MeasureKind::Atoms;
    double total = 0.0;
    for (const auto& item : split(body, ',')) {
      const auto sep = item.rfind(':');
      if (sep == std::string::npos) throw InvalidParameter("atoms entries are x:w, got '" + item + "'");
      const double x = parse_double(item.substr(0, sep), text);
      const double w = parse_double(item.substr(sep + 1), text);
      if (!(w > 0.0)) throw InvalidParameter("atom weights must be positive");
      spec.atoms.emplace_back(x, w);
      total += w;
    }
    if (spec.atoms.empty()) throw InvalidParameter("atoms list is empty");
    for (auto& [x, w] : spec.atoms) w /= total;
    std::sort(spec.atoms.begin(), spec.atoms.end());
  } else if (kind == "file") {
    spec.kind = MeasureKind::ExplicitList;
    spec.path = body;
    spec.explicit_roots = read_roots_file(body);
    std::sort(spec.explicit_roots.begin(), spec.explicit_roots.end());
    if (spec.n == 0) spec.n = spec.explicit_roots.size();
  } else {
    throw InvalidParameter("unknown initial measure kind '" + kind + "'");
  }
  return spec;
}

InitialMeasureSpec InitialMeasureSpec::with_degree(std::size_t degree) const {
  InitialMeasureSpec copy = *this;
  copy.n = kind == MeasureKind::ExplicitList ? explicit_roots.size() : degree;
  return copy;
}

std::string InitialMeasureSpec::to_string() const {
  switch (kind) {
    case MeasureKind::UniformInterval:
      return "uniform:" + fmt(lo) + "," + fmt(hi);
    case MeasureKind::Semicircle:
      return "semicircle:" + fmt(variance);
    case MeasureKind::Atoms: {
      std::string s = "atoms:";
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) s += ",";
        s += fmt(atoms[i].first) + ":" + fmt(atoms[i].second);
      }
      return s;
    }
    case MeasureKind::ExplicitList:
      return "file:" + path;
  }
  return {};
}

double InitialMeasureSpec::support_bound() const {
  double a = 0.0;
  switch (kind) {
    case MeasureKind::UniformInterval:
      a = std::max(std::abs(lo), std::abs(hi));
      break;
    case MeasureKind::Semicircle:
      a = 2.0 * std::sqrt(variance);
      break;
    case MeasureKind::Atoms:
      for (const auto& [x, w] : atoms) a = std::max(a, std::abs(x));
      break;
    case MeasureKind::ExplicitList:
      for (double x : explicit_roots) a = std::max(a, std::abs(x));
      break;
  }
  return a > 0.0 ? a : 1.0;
}

double semicircle_cdf(double x, double variance) {
  const double r = 2.0 * std::sqrt(variance);
  if (x <= -r) return 0.0;
  if (x >= r) return 1.0;
  const double t = x / r;
  return 0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / std::numbers::pi;
}

double semicircle_quantile(double u, double variance) {
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidParameter("quantile level must be in [0, 1]");
  const double r = 2.0 * std::sqrt(variance);
  double lo = -r, hi = r;
  while (hi - lo > 1e-13 * r) {
    const double mid = 0.5 * (lo + hi);
    if (semicircle_cdf(mid, variance) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RootVector make_initial(const InitialMeasureSpec& spec) {
  if (spec.kind == MeasureKind::ExplicitList) {
    if (spec.n != 0 && spec.n != spec.explicit_roots.size())
      throw InvalidParameter("explicit root list has " + std::to_string(spec.explicit_roots.size()) +
                             " entries, expected " + std::to_string(spec.n));
    return RootVector::from_unsorted(spec.explicit_roots);
  }
  if (spec.n < 2) throw InvalidParameter("initial degree must be >= 2");
  const std::size_t n = spec.n;
  std::vector<double> roots(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(n));
    switch (spec.kind) {
      case MeasureKind::UniformInterval:
        roots[j] = spec.lo + (spec.hi - spec.lo) * u;
        break;
      case MeasureKind::Semicircle:
        roots[j] = semicircle_quantile(u, spec.variance);
        break;
      case MeasureKind::Atoms: {
        // Smallest atom whose cumulative weight reaches u.
        double cum = 0.0;
        roots[j] = spec.atoms.back().first;
        for (const auto& [x, w] : spec.atoms) {
          cum += w;
          if (cum >= u) {
            roots[j] = x;
            break;
          }
        }
        break;
      }
      case MeasureKind::ExplicitList:
        break;
    }
  }
  return RootVector::from_unsorted(std::move(roots));
}

}  // namespace betaflow
