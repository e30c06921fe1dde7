#include "betaflow_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "betaflow/errors.hpp"

namespace betaflow::cli {

namespace {

using nlohmann::json;

// Values gathered from the config file and flags before defaults apply.
struct RawConfig {
  std::optional<std::string> experiment;
  std::optional<std::vector<std::size_t>> n_grid;
  std::optional<std::vector<double>> taus;
  std::optional<std::vector<std::string>> betas;
  std::optional<long long> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> initial;
  std::optional<double> z;
  std::optional<double> delta;
  std::optional<double> threshold;
  std::optional<std::string> out;
  std::optional<std::string> formats;
};

[[noreturn]] void invalid(const std::string& msg) { throw ConfigError(kExitInvalidParameter, msg); }

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) invalid("empty entry in list '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) invalid("empty list");
  return out;
}

double to_double(const std::string& s, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) invalid(std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s, const char* what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) invalid(std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

std::vector<double> doubles_of(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& s : split(text)) out.push_back(to_double(s, what));
  return out;
}

std::vector<std::size_t> sizes_of(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  for (const auto& s : split(text)) out.push_back(to_size(s, what));
  return out;
}

// A JSON value that may be a scalar, an array, or a comma string.
std::vector<std::string> json_list(const json& v) {
  std::vector<std::string> out;
  auto scalar = [](const json& x) -> std::string {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_number()) {
      std::ostringstream s;
      s.precision(17);
      s << x.get<double>();
      return s.str();
    }
    invalid("expected a number or string, got " + x.dump());
  };
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(scalar(x));
  } else if (v.is_string()) {
    out = split(v.get<std::string>());
  } else {
    out.push_back(scalar(v));
  }
  if (out.empty()) invalid("empty list in config file");
  return out;
}

void load_file(const std::filesystem::path& path, RawConfig& raw) {
  std::ifstream in(path);
  if (!in) throw ConfigError(kExitIo, "cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    invalid("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) invalid("config file must hold a JSON object");
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "experiment") raw.experiment = v.get<std::string>();
      else if (key == "n") raw.n_grid = std::vector<std::size_t>{v.get<std::size_t>()};
      else if (key == "n_grid") {
        std::vector<std::size_t> grid;
        for (const auto& s : json_list(v)) grid.push_back(to_size(s, "n_grid entry"));
        raw.n_grid = grid;
      } else if (key == "tau" || key == "taus") {
        std::vector<double> taus;
        for (const auto& s : json_list(v)) taus.push_back(to_double(s, "tau"));
        raw.taus = taus;
      } else if (key == "betas" || key == "beta") raw.betas = json_list(v);
      else if (key == "trials") raw.trials = v.get<long long>();
      else if (key == "seed") raw.seed = v.get<std::uint64_t>();
      else if (key == "initial") raw.initial = v.get<std::string>();
      else if (key == "z") raw.z = v.get<double>();
      else if (key == "delta") raw.delta = v.get<double>();
      else if (key == "threshold") raw.threshold = v.get<double>();
      else if (key == "out") raw.out = v.get<std::string>();
      else if (key == "formats") {
        std::string joined;
        for (const auto& s : json_list(v)) joined += (joined.empty() ? "" : ",") + s;
        raw.formats = joined;
      } else invalid("unknown config key '" + key + "'");
    }
  } catch (const json::type_error& e) {
    invalid(std::string("config file value has the wrong type: ") + e.what());
  }
}

struct Defaults {
  std::vector<std::size_t> n_grid;
  std::vector<std::string> betas;
  std::size_t trials;
};

Defaults defaults_for(const std::string& experiment) {
  if (experiment == "beta-independence") return {{250, 500, 1000}, {"1", "2"}, 20};
  if (experiment == "triangular") return {{200}, {"1"}, 100};
  if (experiment == "corollary") return {{250, 500, 1000}, {"2"}, 20};
  if (experiment == "minors") return {{16}, {"2"}, 10000};
  if (experiment == "simulate") return {{100}, {"2"}, 1};
  return {{}, {}, 1};
}

RunConfig resolve(const RawConfig& raw) {
  RunConfig cfg;
  if (!raw.experiment) throw ConfigError(kExitUnknownExperiment, "no experiment given");
  cfg.experiment = *raw.experiment;
  if (std::find(kExperiments.begin(), kExperiments.end(), cfg.experiment) == kExperiments.end())
    throw ConfigError(kExitUnknownExperiment, "unknown experiment '" + cfg.experiment + "'");

  const auto def = defaults_for(cfg.experiment);
  cfg.seed = raw.seed.value_or(42);
  cfg.out_dir = raw.out.value_or("betaflow-out");
  try {
    cfg.formats = OutputFormats::parse(raw.formats.value_or(cfg.experiment == "all" ? "csv" : "csv,json"));
  } catch (const InvalidParameter& e) {
    invalid(e.what());
  }
  if (cfg.experiment == "all") return cfg;

  cfg.n_grid = raw.n_grid.value_or(def.n_grid);
  cfg.taus = raw.taus.value_or(std::vector<double>{0.5});
  const long long trials = raw.trials.value_or(static_cast<long long>(def.trials));
  if (trials < 1) invalid("trials must be at least 1");
  cfg.trials = static_cast<std::size_t>(trials);
  cfg.delta = raw.delta.value_or(0.1);
  cfg.threshold = raw.threshold.value_or(0.01);

  if (cfg.n_grid.empty()) invalid("n grid is empty");
  for (auto n : cfg.n_grid)
    if (n < 2) invalid("n must be at least 2");
  for (double t : cfg.taus)
    if (!(t > 0.0 && t < 1.0)) invalid("tau must lie in (0, 1), got " + std::to_string(t));
  if (!(cfg.delta > 0.0)) invalid("delta must be positive");
  if (!(cfg.threshold > 0.0)) invalid("threshold must be positive");

  const bool single_n = cfg.experiment == "triangular" || cfg.experiment == "minors" ||
                        cfg.experiment == "simulate";
  if (single_n && cfg.n_grid.size() != 1) invalid(cfg.experiment + " takes a single n");
  if (cfg.experiment != "beta-independence" && cfg.experiment != "minors" && cfg.taus.size() != 1)
    invalid(cfg.experiment + " takes a single tau");

  try {
    for (const auto& b : raw.betas.value_or(def.betas)) cfg.betas.push_back(InverseTemperature::parse(b));
  } catch (const InvalidParameter& e) {
    invalid(e.what());
  }
  if (cfg.experiment == "minors") {
    if (cfg.n_grid[0] > 64) invalid("minors needs n <= 64");
    for (auto b : cfg.betas)
      if (b.is_infinite() || (b.value() != 1.0 && b.value() != 2.0)) invalid("minors needs beta 1 or 2");
  }

  try {
    cfg.initial = InitialMeasureSpec::parse(raw.initial.value_or("uniform:-1,1"), cfg.n_grid[0]);
  } catch (const IoError& e) {
    throw ConfigError(kExitIo, e.what());
  } catch (const InvalidParameter& e) {
    invalid(e.what());
  }
  const double a = cfg.initial.support_bound();
  cfg.z = raw.z.value_or(a + 2.0);
  if (!(cfg.z > a + 1.0))
    throw ConfigError(kExitEvalPoint, "z = " + std::to_string(cfg.z) + " must exceed A + 1 = " +
                                          std::to_string(a + 1.0));
  return cfg;
}

}  // namespace

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["n_grid"] = n_grid;
  j["tau"] = taus;
  auto b = nlohmann::ordered_json::array();
  for (auto beta : betas) b.push_back(beta.to_string());
  j["betas"] = b;
  j["trials"] = trials;
  j["seed"] = seed;
  j["initial"] = experiment == "all" ? std::string() : initial.to_string();
  j["z"] = z;
  j["delta"] = delta;
  j["threshold"] = threshold;
  j["out"] = out_dir.string();
  j["formats"] = formats.to_string();
  return j.dump(2);
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv) {
  CLI::App app{"Simulator for the randomized iterated-derivative flow on real-rooted polynomials"};
  app.set_version_flag("--version", "betaflow 0.1.0");

  std::string experiment, config_path, n_grid, taus, betas, initial, out, formats;
  std::size_t n = 0;
  long long trials = 0;
  std::uint64_t seed = 0;
  double z = 0, delta = 0, threshold = 0;

  auto* exp_opt = app.add_option("experiment,--experiment", experiment,
                                 "simulate | beta-independence | triangular | corollary | minors | all");
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  auto* n_opt = app.add_option("--n", n, "Degree of the initial polynomial");
  auto* grid_opt = app.add_option("--n-grid", n_grid, "Comma list of degrees");
  auto* tau_opt = app.add_option("--tau", taus, "Step fraction(s) in (0,1), comma list");
  auto* betas_opt = app.add_option("--betas,--beta", betas, "Comma list of inverse temperatures; inf allowed");
  auto* trials_opt = app.add_option("--trials", trials, "Independent chains per configuration");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed");
  auto* init_opt = app.add_option("--initial", initial,
                                  "uniform:a,b | semicircle:var | atoms:x1:w1,... | file:<path>");
  auto* z_opt = app.add_option("--z", z, "Evaluation point, must exceed A + 1");
  auto* delta_opt = app.add_option("--delta", delta, "Increment threshold (triangular)");
  auto* thr_opt = app.add_option("--threshold", threshold, "Delta_n threshold (corollary)");
  auto* out_opt = app.add_option("--out", out, "Output directory");
  auto* fmt_opt = app.add_option("--formats", formats, "Comma list from csv,json,svg");
  n_opt->excludes(grid_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    std::cout << "betaflow 0.1.0\n";
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    invalid(e.what());
  }

  RawConfig raw;
  if (!config_path.empty()) load_file(config_path, raw);
  if (*exp_opt) raw.experiment = experiment;
  if (*n_opt) raw.n_grid = std::vector<std::size_t>{n};
  if (*grid_opt) raw.n_grid = sizes_of(n_grid, "n-grid entry");
  if (*tau_opt) raw.taus = doubles_of(taus, "tau");
  if (*betas_opt) raw.betas = split(betas);
  if (*trials_opt) raw.trials = trials;
  if (*seed_opt) raw.seed = seed;
  if (*init_opt) raw.initial = initial;
  if (*z_opt) raw.z = z;
  if (*delta_opt) raw.delta = delta;
  if (*thr_opt) raw.threshold = threshold;
  if (*out_opt) raw.out = out;
  if (*fmt_opt) raw.formats = formats;
  return resolve(raw);
}

}  // namespace betaflow::cli
