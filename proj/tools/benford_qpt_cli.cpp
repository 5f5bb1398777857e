// benford-qpt: command-line front end.
//
// Exit codes: 0 success or transition detected, 1 usage or I/O error,
// 2 numerical or degenerate-sample error, 3 no transition detected.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "benford_qpt/benford_qpt.hpp"
#include "csv.hpp"

namespace {

using namespace benford_qpt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitNoDetection = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  double lo = 0.2;
  double hi = 2.0;
};

Range parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw UsageError(std::string(flag) + " expects LO:HI, got '" + text + "'");
  }
  const auto lo = cli::parse_double(std::string_view(text).substr(0, colon));
  const auto hi = cli::parse_double(std::string_view(text).substr(colon + 1));
  if (!lo || !hi || !std::isfinite(*lo) || !std::isfinite(*hi)) {
    throw UsageError(std::string(flag) + " expects LO:HI, got '" + text + "'");
  }
  return {*lo, *hi};
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

/// Flags shared by several subcommands. Mirrors the run configuration.
struct RunConfig {
  double gamma = 1.0;
  std::string quantity = "mz";
  std::string range = "0.2:2.0";
  double window = 0.2;
  double finite_window = 0.15;
  int samples = 1998;
  double shift = 0.05;
  std::string out;
  std::optional<std::uint64_t> seed;
  double tol = 1e-10;
  int max_subdivisions = 60;
  unsigned threads = 0;

  // finite chains
  std::vector<int> n_list = {10, 25, 100};
  std::optional<int> finite_n;
  bool allow_odd = false;
  std::string momenta = "half-integer";
  bool literal_half_zone = false;

  // detection
  double edge_exclusion = 0.3;
  std::optional<double> plateau_margin;
  std::string from_csv;

  // histogram / observables / analyze
  std::string interval;
  double step = 0.01;
  std::string file;
  std::string column;
  std::string index_column;

  QuadratureConfig quadrature() const {
    QuadratureConfig cfg{tol, max_subdivisions};
    cfg.validate();
    return cfg;
  }

  ObservableKind kind() const {
    const auto k = parse_observable(quantity);
    if (!k) throw UsageError("unknown quantity '" + quantity + "'");
    return *k;
  }

  WindowSpec window_spec() const { return window_spec(window); }

  WindowSpec window_spec(double width) const {
    WindowSpec spec{width, samples, shift};
    try {
      spec.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return spec;
  }

  ScanOptions scan_options() const { return ScanOptions{Sampling{seed}, threads}; }

  FiniteChainSpec chain(int n) const {
    FiniteChainSpec spec;
    spec.n = n;
    if (momenta == "half-integer") {
      spec.momenta = MomentumSet::HalfInteger;
    } else if (momenta == "integer") {
      spec.momenta = MomentumSet::Integer;
    } else {
      throw UsageError("--momenta must be 'half-integer' or 'integer'");
    }
    spec.half_zone_literal = literal_half_zone;
    spec.allow_odd = allow_odd;
    try {
      spec.validate();
    } catch (const DomainError& e) {
      throw UsageError(std::string(e.what()) +
                       (n >= 4 && n % 2 ? " (pass --allow-odd to use the full-zone momentum sum)" : ""));
    }
    return spec;
  }
};

/// Output sink: --out PATH or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw cli::IoError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void add_model_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--gamma", c.gamma, "Anisotropy γ")->capture_default_str();
  cmd->add_option("--tol", c.tol, "Quadrature absolute tolerance")->capture_default_str();
  cmd->add_option("--max-subdivisions", c.max_subdivisions, "Quadrature panel budget")
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
}

void add_scan_flags(CLI::App* cmd, RunConfig& c, double& window) {
  cmd->add_option("--quantity", c.quantity, "mz|cxx|cyy|czz|entropy|logneg")->capture_default_str();
  cmd->add_option("--range", c.range, "Centre range LO:HI")->capture_default_str();
  cmd->add_option("--window", window, "Window width ε")->capture_default_str();
  cmd->add_option("--samples", c.samples, "Raw samples per window")->capture_default_str();
  cmd->add_option("--shift", c.shift, "Window step")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random sampling inside windows with this seed");
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_chain_flags(CLI::App* cmd, RunConfig& c) {
  cmd->add_flag("--allow-odd", c.allow_odd, "Accept odd chain lengths");
  cmd->add_option("--momenta", c.momenta, "half-integer|integer")->capture_default_str();
  cmd->add_flag("--literal-half-zone", c.literal_half_zone,
                "Sum p = 1..n/2 only (comparison mode)");
}

void write_scan(std::ostream& os, const ScanResult& r) {
  if (!r.gaps.empty()) {
    os << "# skipped centers:";
    for (const auto& g : r.gaps) os << ' ' << fmt(g.center);
    os << '\n';
  }
  os << "center,delta\n";
  std::size_t gi = 0;
  for (const auto& p : r.points) {
    while (gi < r.gaps.size() && r.gaps[gi].center < p.center) {
      os << fmt(r.gaps[gi++].center) << ",\n";
    }
    os << fmt(p.center) << ',' << fmt(p.delta) << '\n';
  }
  while (gi < r.gaps.size()) os << fmt(r.gaps[gi++].center) << ",\n";
}

int cmd_observables(const RunConfig& c) {
  const auto range = parse_range(c.range, "--range");
  if (!(c.step > 0.0)) throw UsageError("--step must be positive");
  const auto cfg = c.quadrature();
  Output out(c.out);
  auto& os = out.stream();
  os << "a_over_J,mz,cxx,cyy,czz,entropy,log_negativity\n";
  for (double field : scan_centers(range.lo, range.hi, c.step)) {
    const auto o = evaluate_all(ModelParams{c.gamma, field}, cfg);
    os << fmt(field) << ',' << fmt(o.mz) << ',' << fmt(o.cxx) << ',' << fmt(o.cyy) << ','
       << fmt(o.czz) << ',' << fmt(o.entropy) << ',' << fmt(o.log_negativity) << '\n';
  }
  return kExitOk;
}

int cmd_scan(const RunConfig& c) {
  const auto range = parse_range(c.range, "--range");
  const auto result = scan(c.kind(), c.gamma, range.lo, range.hi, c.window_spec(),
                           c.quadrature(), c.scan_options());
  Output out(c.out);
  write_scan(out.stream(), result);
  for (const auto& g : result.gaps) {
    std::cerr << "skipped center " << fmt(g.center) << ": " << g.reason << '\n';
  }
  return kExitOk;
}

int cmd_histogram(const RunConfig& c) {
  if (c.interval.empty()) throw UsageError("--interval LO:HI is required");
  const auto iv = parse_range(c.interval, "--interval");
  if (!(iv.lo >= 0.0 && iv.hi > iv.lo)) throw UsageError("--interval needs 0 <= LO < HI");
  const auto quantity = observable_quantity(c.kind(), c.gamma, c.quadrature());
  const auto h = window_histogram(quantity, iv.lo, iv.hi, c.samples, Sampling{c.seed});
  Output out(c.out);
  auto& os = out.stream();
  os << "digit,count,relative_frequency,benford_expected\n";
  for (int d = 1; d <= 9; ++d) {
    os << d << ',' << h.count(d) << ',' << fmt(h.relative_frequency(d)) << ','
       << fmt(benford_pmf(d)) << '\n';
  }
  return kExitOk;
}

ScanResult scan_from_csv(const std::string& path) {
  const auto table = cli::read_csv(path);
  const auto centers = cli::numeric_column(table, "center");
  const auto deltas = cli::numeric_column(table, "delta");
  ScanResult r;
  for (std::size_t i = 0; i < centers.size(); ++i) r.points.push_back({centers[i], deltas[i]});
  return r;
}

int cmd_detect(const RunConfig& c) {
  ScanResult result;
  if (!c.from_csv.empty()) {
    result = scan_from_csv(c.from_csv);
  } else {
    const auto range = parse_range(c.range, "--range");
    if (c.finite_n) {
      const auto chain = c.chain(*c.finite_n);
      result = scan(finite_chain_quantity(chain, c.gamma), range.lo, range.hi, c.window_spec(),
                    c.scan_options(), ObservableKind::Mz, c.gamma);
    } else {
      result = scan(c.kind(), c.gamma, range.lo, range.hi, c.window_spec(), c.quadrature(),
                    c.scan_options());
    }
  }
  if (result.points.size() < 5) {
    throw UsageError("detection needs at least 5 scan points, got " +
                     std::to_string(result.points.size()));
  }
  DetectionOptions opts{c.edge_exclusion, c.plateau_margin};
  const auto report = detect_transition(result, opts);
  const bool found = report.detected && report.plateau_distinct;

  std::cout << (found ? "transition detected" : "no transition detected") << '\n'
            << "  candidate            " << fmt(report.candidate) << '\n'
            << "  derivative_extremum  " << fmt(report.derivative_extremum) << '\n'
            << "  plateau_before       " << fmt(report.plateau_before) << '\n'
            << "  plateau_after        " << fmt(report.plateau_after) << '\n'
            << "  plateau_distinct     " << (report.plateau_distinct ? "true" : "false") << '\n';
  if (!c.out.empty()) {
    Output out(c.out);
    out.stream() << "candidate,derivative_extremum,plateau_before,plateau_after,"
                    "plateau_distinct,detected\n"
                 << fmt(report.candidate) << ',' << fmt(report.derivative_extremum) << ','
                 << fmt(report.plateau_before) << ',' << fmt(report.plateau_after) << ','
                 << (report.plateau_distinct ? "true" : "false") << ','
                 << (found ? "true" : "false") << '\n';
  }
  return found ? kExitOk : kExitNoDetection;
}

int cmd_finite(const RunConfig& c) {
  const auto range = parse_range(c.range, "--range");
  const auto spec = c.window_spec(c.finite_window);
  std::vector<FiniteChainSpec> chains;
  for (int n : c.n_list) chains.push_back(c.chain(n));
  Output out(c.out);
  auto& os = out.stream();
  for (const auto& chain : chains) {
    if (chain.n % 2) os << "# n=" << chain.n << " is odd: full-zone momentum sum\n";
  }
  os << "n,center,delta\n";
  for (const auto& chain : chains) {
    const auto r = scan(finite_chain_quantity(chain, c.gamma), range.lo, range.hi, spec,
                        c.scan_options(), ObservableKind::Mz, c.gamma);
    for (const auto& p : r.points) os << chain.n << ',' << fmt(p.center) << ',' << fmt(p.delta) << '\n';
    for (const auto& g : r.gaps) std::cerr << "n=" << chain.n << " skipped " << fmt(g.center) << ": " << g.reason << '\n';
  }
  return kExitOk;
}

int cmd_analyze(const RunConfig& c, bool windowed) {
  const auto table = cli::read_csv(c.file);
  const auto values = cli::numeric_column(table, c.column);
  Output out(c.out);
  auto& os = out.stream();

  if (!windowed) {
    const auto a = analyze_series(values);
    os << "digit,count,relative_frequency,benford_expected,deviation\n";
    const double n = static_cast<double>(a.histogram.sample_size);
    for (int d = 1; d <= 9; ++d) {
      const double expected = n * benford_pmf(d);
      os << d << ',' << a.histogram.count(d) << ',' << fmt(a.histogram.relative_frequency(d)) << ','
         << fmt(benford_pmf(d)) << ',' << fmt((static_cast<double>(a.histogram.count(d)) - expected) / expected)
         << '\n';
    }
    os << "# N=" << a.histogram.sample_size << " delta=" << fmt(a.delta) << '\n';
    return kExitOk;
  }

  const auto index = cli::numeric_column(table, c.index_column);
  if (!(c.window > 0.0) || !(c.shift > 0.0)) throw UsageError("--window and --shift must be positive");
  double lo = index.front(), hi = index.front();
  for (double x : index) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  os << "window_start,delta\n";
  for (double start : scan_centers(lo, hi - c.window, c.shift)) {
    std::vector<double> sample;
    for (std::size_t i = 0; i < index.size(); ++i) {
      if (index[i] >= start && index[i] < start + c.window) sample.push_back(values[i]);
    }
    os << fmt(start) << ',';
    try {
      os << fmt(analyze_series(sample).delta);
    } catch (const Error&) {
      // left empty: window too small or constant
    }
    os << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benford violation parameter of XY-chain observables on shifting field windows"};
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);

  RunConfig c;

  auto* obs = app.add_subcommand("observables", "Tabulate Mz, correlators, entropy, log-negativity");
  add_model_flags(obs, c);
  obs->add_option("--range", c.range, "Field range LO:HI")->capture_default_str();
  obs->add_option("--step", c.step, "Grid spacing")->capture_default_str();

  auto* scan_cmd = app.add_subcommand("scan", "δ on shifting windows: center,delta");
  add_model_flags(scan_cmd, c);
  add_scan_flags(scan_cmd, c, c.window);

  auto* hist = app.add_subcommand("histogram", "First-digit histogram for one field interval");
  add_model_flags(hist, c);
  hist->add_option("--quantity", c.quantity, "mz|cxx|cyy|czz|entropy|logneg")->capture_default_str();
  hist->add_option("--interval", c.interval, "Field interval LO:HI")->required();
  hist->add_option("--samples", c.samples, "Sample count")->capture_default_str();
  hist->add_option("--seed", c.seed, "Random sampling with this seed");

  auto* detect = app.add_subcommand("detect", "Locate the transition from a δ scan");
  add_model_flags(detect, c);
  add_scan_flags(detect, c, c.window);
  add_chain_flags(detect, c);
  detect->add_option("--finite-n", c.finite_n, "Scan the finite-chain magnetization of n spins");
  detect->add_option("--edge-exclusion", c.edge_exclusion, "Plateau exclusion radius")
      ->capture_default_str();
  detect->add_option("--plateau-margin", c.plateau_margin,
                     "Required plateau separation (default 10% of the larger plateau)");
  detect->add_option("--from-csv", c.from_csv, "Read center,delta from a scan CSV instead");

  auto* finite = app.add_subcommand("finite", "δ scans of the finite-chain magnetization");
  add_model_flags(finite, c);
  add_scan_flags(finite, c, c.finite_window);
  add_chain_flags(finite, c);
  finite->add_option("--n-list", c.n_list, "Chain lengths")->delimiter(',')->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "Benford analysis of a CSV column");
  analyze->add_option("--file", c.file, "Input CSV")->required();
  analyze->add_option("--column", c.column, "Column to analyse")->required();
  auto* index_opt = analyze->add_option("--index-column", c.index_column,
                                        "Windowed mode: slide over this column");
  analyze->add_option("--window", c.window, "Window length in index units")->capture_default_str();
  analyze->add_option("--shift", c.shift, "Window step in index units")->capture_default_str();
  analyze->add_option("--out", c.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*obs) return cmd_observables(c);
    if (*scan_cmd) return cmd_scan(c);
    if (*hist) return cmd_histogram(c);
    if (*detect) return cmd_detect(c);
    if (*finite) return cmd_finite(c);
    if (*analyze) return cmd_analyze(c, index_opt->count() > 0);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cli::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateSampleError& e) {
    std::cerr << "degenerate sample: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
