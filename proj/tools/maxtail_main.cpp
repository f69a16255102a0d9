#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxtail/generic_hidden.hpp"
#include "maxtail/montecarlo.hpp"
#include "maxtail/pareto_hidden.hpp"
#include "maxtail/quadrature.hpp"
#include "maxtail/statistics.hpp"

namespace {

// Exit codes: 0 success, 2 invalid arguments or validation failure,
// 3 I/O failure.
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
  return buf;
}

// Insertion-ordered JSON object, numbers at 17 significant digits.
class JsonObject {
 public:
  void add_number(const std::string& key, double v) {
    fields_.emplace_back(key, format_double(v, 17));
  }
  void add_integer(const std::string& key, long long v) {
    fields_.emplace_back(key, std::to_string(v));
  }
  void add_unsigned(const std::string& key, unsigned long long v) {
    fields_.emplace_back(key, std::to_string(v));
  }
  void add_bool(const std::string& key, bool v) {
    fields_.emplace_back(key, v ? "true" : "false");
  }
  void add_string(const std::string& key, const std::string& v) {
    fields_.emplace_back(key, "\"" + v + "\"");
  }

  void write(std::ostream& os) const {
    os << "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      os << "  \"" << fields_[i].first << "\": " << fields_[i].second;
      if (i + 1 < fields_.size()) os << ",";
      os << "\n";
    }
    os << "}\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

struct OutputTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> rows;
  int precision = 10;

  void write(std::ostream& os) const {
    for (std::size_t i = 0; i < column_names.size(); ++i) {
      os << column_names[i];
      if (i + 1 < column_names.size()) os << ",";
    }
    os << "\n";
    for (const std::vector<double>& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << format_double(row[i], precision);
        if (i + 1 < row.size()) os << ",";
      }
      os << "\n";
    }
  }
};

// Writes to --out PATH when given, stdout otherwise.
void emit(const std::string& out_path, const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream file(out_path);
  if (!file) {
    throw IoFailure("cannot open output file: " + out_path);
  }
  writer(file);
  if (!file.good()) {
    throw IoFailure("failed while writing output file: " + out_path);
  }
}

maxtail::DistributionModel parse_model(const std::string& text) {
  const auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::tolower(c); });

  std::vector<double> params;
  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string piece;
    while (std::getline(rest, piece, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(piece, &used);
        if (used != piece.size()) throw std::invalid_argument(piece);
        params.push_back(v);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad distribution parameter: " + piece);
      }
    }
  }

  const auto expect = [&params, &name](std::size_t k) {
    if (params.size() != k) {
      throw std::invalid_argument(name + " takes " + std::to_string(k) +
                                  " parameters");
    }
  };

  if (name == "pareto") {
    expect(2);
    return maxtail::Pareto{{params[0], params[1]}};
  }
  if (name == "gaussian") {
    if (params.empty()) return maxtail::Gaussian{};
    expect(2);
    return maxtail::Gaussian{params[0], params[1]};
  }
  if (name == "lognormal") {
    if (params.empty()) return maxtail::Lognormal{};
    expect(2);
    return maxtail::Lognormal{params[0], params[1]};
  }
  throw std::invalid_argument(
      "unknown distribution '" + name +
      "' (expected pareto:alpha,scale | gaussian:mean,sd | lognormal:mu,sigma)");
}

std::string trimmed(const std::string& line) {
  std::size_t b = 0;
  std::size_t e = line.size();
  while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
  return line.substr(b, e - b);
}

bool parse_full_double(const std::string& text, double* out) {
  if (text.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) return false;
  *out = v;
  return true;
}

// Single numeric column, optional one-line header.
std::vector<double> read_value_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoFailure("cannot open input file: " + path);
  }
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string t = trimmed(raw);
    if (!t.empty()) lines.push_back(std::move(t));
  }
  if (lines.empty()) {
    throw IoFailure("input file has no data: " + path);
  }

  std::vector<double> values;
  std::size_t start = 0;
  double v = 0.0;
  if (!parse_full_double(lines[0], &v)) {
    start = 1;  // header row
  }
  for (std::size_t i = start; i < lines.size(); ++i) {
    if (!parse_full_double(lines[i], &v)) {
      throw IoFailure("malformed numeric value: '" + lines[i] + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw IoFailure("input file has no numeric rows: " + path);
  }
  return values;
}

// ---------------------------------------------------------------------------

struct ExpectedOptions {
  double alpha = 0.0;
  double scale = 1.0;
  std::int64_t n = 1;
  double p = 1.0;
  std::string out;
};

void run_expected(const ExpectedOptions& opt) {
  const maxtail::HiddenMomentLaw law{{opt.alpha, opt.scale}, {opt.n, opt.p}};
  const double expected = maxtail::expected_hidden_moment(law);
  const double total = maxtail::total_moment(law.tail, opt.p);

  JsonObject json;
  json.add_number("expected_hidden_moment", expected);
  json.add_number("total_moment", total);
  json.add_number("hidden_fraction", expected / total);
  emit(opt.out, [&json](std::ostream& os) { json.write(os); });
}

struct DensityOptions {
  double alpha = 0.0;
  double scale = 1.0;
  std::int64_t n = 1;
  double p = 1.0;
  double z_min = 0.0;
  double z_max = 0.0;
  int points = 64;
  std::string out;
};

void run_density(const DensityOptions& opt) {
  if (!(opt.z_min > 0.0) || !(opt.z_min < opt.z_max)) {
    throw std::invalid_argument("need 0 < z-min < z-max");
  }
  if (opt.points < 2) {
    throw std::invalid_argument("need at least 2 grid points");
  }
  const maxtail::HiddenMomentLaw law{{opt.alpha, opt.scale}, {opt.n, opt.p}};
  maxtail::validate(law);

  OutputTable table;
  table.column_names = {"z", "pdf", "cdf"};
  const double ratio = opt.z_max / opt.z_min;
  for (int i = 0; i < opt.points; ++i) {
    const double frac = static_cast<double>(i) / (opt.points - 1);
    const double z = opt.z_min * std::pow(ratio, frac);
    table.rows.push_back(
        {z, maxtail::hidden_density(law, z), maxtail::hidden_cdf(law, z)});
  }
  emit(opt.out, [&table](std::ostream& os) { table.write(os); });
}

struct CurvesOptions {
  std::string mode;
  double alpha = 0.0;
  std::int64_t n = 100;
  double alpha_min = 1.1;
  double alpha_max = 5.0;
  std::int64_t n_min = 1;
  std::int64_t n_max = 10000;
  int points = 50;
  std::string out;
};

std::vector<std::int64_t> log_spaced_integers(std::int64_t lo, std::int64_t hi,
                                              int points) {
  if (lo < 1 || hi < lo) {
    throw std::invalid_argument("need 1 <= n-min <= n-max");
  }
  std::vector<std::int64_t> grid;
  for (int i = 0; i < points; ++i) {
    const double frac =
        points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    const double value = static_cast<double>(lo) *
                         std::pow(static_cast<double>(hi) / lo, frac);
    const auto rounded = static_cast<std::int64_t>(std::llround(value));
    const std::int64_t clamped = std::max<std::int64_t>(1, rounded);
    if (grid.empty() || clamped > grid.back()) grid.push_back(clamped);
  }
  return grid;
}

void run_curves(const CurvesOptions& opt) {
  if (opt.points < 1) {
    throw std::invalid_argument("need at least 1 grid point");
  }

  OutputTable table;
  if (opt.mode == "fraction_vs_alpha") {
    if (!(opt.alpha_min <= opt.alpha_max)) {
      throw std::invalid_argument("need alpha-min <= alpha-max");
    }
    table.column_names = {"alpha", "hidden_mean_fraction"};
    for (int i = 0; i < opt.points; ++i) {
      const double frac =
          opt.points == 1 ? 0.0 : static_cast<double>(i) / (opt.points - 1);
      const double alpha = opt.alpha_min + (opt.alpha_max - opt.alpha_min) * frac;
      table.rows.push_back(
          {alpha, maxtail::hidden_mean_fraction({alpha, 1.0}, opt.n)});
    }
  } else if (opt.mode == "fraction_vs_n") {
    table.column_names = {"n", "hidden_mean_fraction"};
    for (std::int64_t n : log_spaced_integers(opt.n_min, opt.n_max, opt.points)) {
      table.rows.push_back(
          {static_cast<double>(n),
           maxtail::hidden_mean_fraction({opt.alpha, 1.0}, n)});
    }
  } else if (opt.mode == "sd_ratio_vs_n") {
    table.column_names = {"n", "hidden_mean_to_sd"};
    for (std::int64_t n : log_spaced_integers(opt.n_min, opt.n_max, opt.points)) {
      table.rows.push_back(
          {static_cast<double>(n),
           maxtail::hidden_mean_to_sd({opt.alpha, 1.0}, n)});
    }
  } else {
    throw std::invalid_argument(
        "unknown mode '" + opt.mode +
        "' (expected fraction_vs_alpha | fraction_vs_n | sd_ratio_vs_n)");
  }
  emit(opt.out, [&table](std::ostream& os) { table.write(os); });
}

struct SimulateOptions {
  std::string dist;
  std::int64_t n = 1;
  double p = 1.0;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

void run_simulate(const SimulateOptions& opt) {
  maxtail::SimulationPlan plan;
  plan.model = parse_model(opt.dist);
  plan.n = opt.n;
  plan.p = opt.p;
  plan.trials = opt.trials;
  plan.seed = opt.seed;
  plan.workers = opt.workers;

  const maxtail::SimulationReport report = maxtail::simulate_hidden_moments(plan);

  JsonObject json;
  json.add_number("empirical_mean", report.empirical_mean);
  json.add_number("empirical_se", report.empirical_se);
  if (report.analytic_mean) json.add_number("analytic_mean", *report.analytic_mean);
  if (report.ks_statistic) json.add_number("ks_statistic", *report.ks_statistic);
  json.add_integer("trials", report.trials);
  json.add_unsigned("seed", report.seed);
  emit(opt.out, [&json](std::ostream& os) { json.write(os); });
}

struct GaussianTailOptions {
  std::int64_t n = 1;
  double p = 0.0;
  bool from_zero = false;
  bool full_line = false;
  std::string out;
};

void run_gaussian_tail(const GaussianTailOptions& opt) {
  const bool full_line = opt.full_line;
  const double lower =
      full_line ? -std::numeric_limits<double>::infinity() : 0.0;

  maxtail::QuadratureConfig cfg;
  cfg.abs_tol = 1e-11;
  cfg.rel_tol = 1e-9;
  cfg.max_subdivisions = 400;

  const maxtail::HiddenTailEstimate est = maxtail::expected_hidden_generic(
      maxtail::Gaussian{0.0, 1.0}, opt.n, opt.p, lower, cfg);

  JsonObject json;
  json.add_integer("n", opt.n);
  json.add_number("p", opt.p);
  json.add_string("mode", full_line ? "full_line" : "from_zero");
  json.add_number("value", est.value);
  json.add_number("error_estimate", est.error_estimate);
  json.add_bool("converged", est.converged);
  json.add_integer("outer_evals", est.outer_evals);
  json.add_integer("inner_evals", est.inner_evals);
  if (opt.p == 0.0) {
    if (full_line) {
      // Exchangeability: each draw is the sample maximum with probability
      // 1/(n+1), counting the next draw as the exceeding one.
      json.add_number("closed_form", 1.0 / static_cast<double>(opt.n + 1));
    } else {
      // Closed form for the tail mass beyond the absolute maximum, shown
      // next to the quadrature over positive maxima only.
      json.add_number("closed_form", maxtail::gaussian_invisible_tail_p0(opt.n));
      json.add_number("closed_form_check",
                      maxtail::expected_survival_above_abs_max(opt.n, cfg).value);
    }
  }
  emit(opt.out, [&json](std::ostream& os) { json.write(os); });
}

struct CorrectOptions {
  std::string input;
  double alpha = 0.0;
  double scale = 1.0;
  double p = 1.0;
  std::string out;
};

void run_correct(const CorrectOptions& opt) {
  const std::vector<double> values = read_value_column(opt.input);

  const maxtail::PowerLawTail tail{opt.alpha, opt.scale};
  maxtail::validate(tail);
  for (double v : values) {
    if (v < tail.scale) {
      throw std::invalid_argument(
          "input value below the tail scale: " + format_double(v, 17));
    }
  }

  const auto n = static_cast<std::int64_t>(values.size());
  const double sample_max = *std::max_element(values.begin(), values.end());
  const double sample_mean =
      maxtail::compensated_sum(values) / static_cast<double>(n);

  const maxtail::HiddenMomentLaw law{tail, {n, opt.p}};
  const double expected_hidden = maxtail::expected_hidden_moment(law);
  const double above_observed_max =
      maxtail::hidden_moment_given_max(tail, opt.p, sample_max);
  const double corrected =
      sample_mean + std::max(0.0, expected_hidden - above_observed_max);

  JsonObject json;
  json.add_integer("sample_size", n);
  json.add_number("sample_max", sample_max);
  json.add_number("sample_mean", sample_mean);
  json.add_number("expected_hidden_moment", expected_hidden);
  json.add_number("corrected_mean", corrected);
  json.add_number("hidden_fraction",
                  expected_hidden / maxtail::total_moment(tail, opt.p));
  emit(opt.out, [&json](std::ostream& os) { json.write(os); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden tail moments of heavy-tailed samples"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read options from an INI file ([subcommand] sections, "
                 "key = value); command line flags win");

  ExpectedOptions expected_opt;
  CLI::App* expected = app.add_subcommand(
      "expected", "Expected moment mass above the sample maximum");
  expected->add_option("--alpha", expected_opt.alpha, "Tail index")->required();
  expected->add_option("--L", expected_opt.scale, "Tail scale (support bound)");
  expected->add_option("--n", expected_opt.n, "Sample size");
  expected->add_option("--p", expected_opt.p, "Moment order");
  expected->add_option("--out", expected_opt.out, "Output path");
  expected->callback([&expected_opt] { run_expected(expected_opt); });

  DensityOptions density_opt;
  CLI::App* density = app.add_subcommand(
      "density", "Density and CDF of the moment mass above the maximum");
  density->add_option("--alpha", density_opt.alpha, "Tail index")->required();
  density->add_option("--L", density_opt.scale, "Tail scale");
  density->add_option("--n", density_opt.n, "Sample size");
  density->add_option("--p", density_opt.p, "Moment order");
  density->add_option("--z-min", density_opt.z_min, "Grid start, > 0")
      ->required();
  density->add_option("--z-max", density_opt.z_max, "Grid end")->required();
  density->add_option("--points", density_opt.points, "Grid size (log-spaced)");
  density->add_option("--out", density_opt.out, "Output path");
  density->callback([&density_opt] { run_density(density_opt); });

  CurvesOptions curves_opt;
  CLI::App* curves = app.add_subcommand(
      "curves", "Sweeps of the unseen-share summaries");
  curves->add_option("--mode", curves_opt.mode,
                     "fraction_vs_alpha | fraction_vs_n | sd_ratio_vs_n")
      ->required();
  curves->add_option("--alpha", curves_opt.alpha, "Tail index (vs-n modes)");
  curves->add_option("--n", curves_opt.n, "Sample size (vs-alpha mode)");
  curves->add_option("--alpha-min", curves_opt.alpha_min, "Sweep start");
  curves->add_option("--alpha-max", curves_opt.alpha_max, "Sweep end");
  curves->add_option("--n-min", curves_opt.n_min, "Sweep start");
  curves->add_option("--n-max", curves_opt.n_max, "Sweep end");
  curves->add_option("--points", curves_opt.points, "Grid size");
  curves->add_option("--out", curves_opt.out, "Output path");
  curves->callback([&curves_opt] { run_curves(curves_opt); });

  SimulateOptions simulate_opt;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo check of the hidden moment law");
  simulate->add_option("--dist", simulate_opt.dist,
                       "pareto:alpha,scale | gaussian:mean,sd | "
                       "lognormal:mu,sigma")
      ->required();
  simulate->add_option("--n", simulate_opt.n, "Draws per trial");
  simulate->add_option("--p", simulate_opt.p, "Moment order");
  simulate->add_option("--trials", simulate_opt.trials, "Trial count");
  simulate->add_option("--seed", simulate_opt.seed, "Random seed");
  simulate->add_option("--workers", simulate_opt.workers, "Thread count");
  simulate->add_option("--out", simulate_opt.out, "Output path");
  simulate->callback([&simulate_opt] { run_simulate(simulate_opt); });

  GaussianTailOptions gaussian_opt;
  CLI::App* gaussian_tail = app.add_subcommand(
      "gaussian-tail", "Expected tail mass beyond the maximum of n normals");
  gaussian_tail->add_option("--n", gaussian_opt.n, "Sample size")->required();
  gaussian_tail->add_option("--p", gaussian_opt.p, "Moment order");
  CLI::Option* from_zero =
      gaussian_tail->add_flag("--from-zero", gaussian_opt.from_zero,
                              "Integrate maxima over [0, inf) (default)");
  CLI::Option* full_line = gaussian_tail->add_flag(
      "--full-line", gaussian_opt.full_line, "Integrate maxima over the whole line");
  from_zero->excludes(full_line);
  full_line->excludes(from_zero);
  gaussian_tail->add_option("--out", gaussian_opt.out, "Output path");
  gaussian_tail->callback([&gaussian_opt] { run_gaussian_tail(gaussian_opt); });

  CorrectOptions correct_opt;
  CLI::App* correct = app.add_subcommand(
      "correct", "Tail-corrected mean of an observed sample");
  correct->add_option("--input", correct_opt.input,
                      "CSV with one numeric column (optional header)")
      ->required();
  correct->add_option("--alpha", correct_opt.alpha, "Tail index")->required();
  correct->add_option("--L", correct_opt.scale, "Tail scale");
  correct->add_option("--p", correct_opt.p, "Moment order");
  correct->add_option("--out", correct_opt.out, "Output path");
  correct->callback([&correct_opt] { run_correct(correct_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const IoFailure& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
