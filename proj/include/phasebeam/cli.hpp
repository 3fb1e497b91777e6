#pragma once

// Command-line front end: `compute`, `sweep` and `check`.
//
// Exit codes: 0 success, 1 usage, 2 numerical-consistency failure, 3 I/O.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "phasebeam/algebra.hpp"
#include "phasebeam/checks.hpp"
#include "phasebeam/entropy.hpp"
#include "phasebeam/errors.hpp"
#include "phasebeam/experiments.hpp"
#include "phasebeam/table_io.hpp"

namespace phasebeam::cli {

enum class Command { Compute, Sweep, Check };
enum class MethodChoice { Oracle, Closed, Both };
enum class SweepKind { R2Phi, PhiBalanced, SBalanced };

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_numerical = 2, exit_io = 3 };

struct RunConfig {
  Command command = Command::Compute;
  FamilyChoice family;
  int two_s = 2;
  long m = 0;
  std::vector<double> phi;
  std::vector<double> r2;
  MethodChoice method = MethodChoice::Oracle;
  TableFormat format = TableFormat::Csv;
  std::optional<std::uint64_t> seed;
  bool serial = false;
  SweepKind kind = SweepKind::R2Phi;
  std::vector<int> two_s_list;
  int two_s_max = 40;
  std::string suite = "all";
  std::optional<std::string> output;
  std::optional<std::string> help;  ///< set when --help was requested
};

inline constexpr std::string_view default_phi_grid = "0:6.283185307179586:128";
inline constexpr std::string_view default_r2_grid = "0:1:101";
inline constexpr std::string_view default_phi_list = "0,1.5707963267948966,3.141592653589793,4.71238898038469";

inline double parse_real(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
    throw Error(Errc::Usage, "malformed number '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

/// `start:stop:count` (inclusive), a comma list, or a single number. The result is nonempty and
/// strictly increasing.
inline std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string_view::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw Error(Errc::Usage, "grid spec must be start:stop:count");
    const double start = parse_real(parts[0]), stop = parse_real(parts[1]);
    long count = 0;
    const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (res.ec != std::errc{} || res.ptr != parts[2].data() + parts[2].size() || count < 1) {
      throw Error(Errc::Usage, "grid count must be a positive integer");
    }
    if (count > 1 && !(stop > start)) throw Error(Errc::Usage, "grid stop must exceed start");
    grid = linspace(start, stop, static_cast<std::size_t>(count));
  } else {
    for (auto part : split(spec, ',')) grid.push_back(parse_real(part));
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw Error(Errc::Usage, "grid must be strictly increasing");
  }
  return grid;
}

inline std::vector<int> parse_int_list(std::string_view spec) {
  std::vector<int> out;
  for (const double v : parse_grid(spec)) {
    if (v != std::floor(v) || v < 1) throw Error(Errc::Usage, "2s values must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

inline void require_r2_range(const std::vector<double>& r2) {
  for (double x : r2) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(Errc::Range, "r2 values must lie in [0, 1]");
  }
}

inline RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Entanglement of temporally stable phase states on a beam splitter", "phasebeam"};
  app.require_subcommand(1);

  std::string family = "kappa-neg", F_table, method = "oracle", format = "csv";
  std::string phi, r2, kind = "r2-phi", two_s_list = "1:10:10";
  std::optional<double> kappa;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  RunConfig cfg;

  const auto add_structure_opts = [&](CLI::App* sub) {
    sub->add_option("--family", family, "pegg-barnett | kappa-neg | kappa-pos | custom")->capture_default_str();
    sub->add_option("--kappa", kappa, "deformation parameter (kappa-pos)");
    sub->add_option("--F", F_table, "custom F(0),...,F(2s+1), comma separated");
    sub->add_option("--m", cfg.m, "phase-state label m")->capture_default_str();
  };

  auto* compute = app.add_subcommand("compute", "linear entropy at a single point");
  add_structure_opts(compute);
  compute->add_option("--two-s", cfg.two_s, "2s; the dimension is 2s+1")->capture_default_str();
  compute->add_option("--phi", phi, "phase parameter")->required();
  compute->add_option("--r2", r2, "reflection probability r^2")->required();
  compute->add_option("--method", method, "oracle | closed | both")->capture_default_str();
  compute->add_option("--format", format, "csv | json")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "entropy over a parameter grid");
  add_structure_opts(sweep);
  sweep->add_option("--kind", kind, "r2-phi | phi-balanced | s-balanced")->capture_default_str();
  sweep->add_option("--two-s", cfg.two_s, "2s for r2-phi")->capture_default_str();
  sweep->add_option("--two-s-list", two_s_list, "2s values for phi-balanced")->capture_default_str();
  sweep->add_option("--two-s-max", cfg.two_s_max, "largest 2s for s-balanced")->capture_default_str();
  sweep->add_option("--phi", phi, "phi grid start:stop:count or list");
  sweep->add_option("--r2", r2, "r^2 grid start:stop:count or list");
  sweep->add_option("--method", method, "oracle | closed")->capture_default_str();
  sweep->add_option("--format", format, "csv | json")->capture_default_str();
  sweep->add_option("--output", output, "write the table here instead of stdout");
  sweep->add_flag("--serial", cfg.serial, "single-threaded evaluation");

  auto* check = app.add_subcommand("check", "run the randomized invariant suites");
  check->add_option("--suite", cfg.suite, "all | algebra | phase | splitter | entropy")->capture_default_str();
  check->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::ostringstream out, err;
      app.exit(e, out, err);
      cfg.help = out.str();
      return cfg;
    }
    throw Error(Errc::Usage, e.what());
  }

  cfg.command = compute->parsed() ? Command::Compute : sweep->parsed() ? Command::Sweep : Command::Check;
  cfg.seed = seed;
  cfg.output = output;

  if (cfg.command == Command::Check) {
    if (cfg.suite != "all" && std::find(check_suite_names().begin(), check_suite_names().end(), cfg.suite) ==
                                  check_suite_names().end()) {
      throw Error(Errc::Usage, "unknown suite '" + cfg.suite + "'");
    }
    return cfg;
  }

  const auto fam = family_from_string(family);
  if (!fam) throw Error(Errc::Usage, "unknown family '" + family + "'");
  cfg.family.family = *fam;
  cfg.family.kappa = kappa;
  if (*fam == Family::CustomF) {
    if (F_table.empty()) throw Error(Errc::Usage, "--family custom needs --F");
    for (auto part : split(F_table, ',')) cfg.family.custom_F.push_back(parse_real(part));
    cfg.two_s = static_cast<int>(cfg.family.custom_F.size()) - 2;
  }

  if (method == "oracle") {
    cfg.method = MethodChoice::Oracle;
  } else if (method == "closed") {
    cfg.method = MethodChoice::Closed;
  } else if (method == "both" && cfg.command == Command::Compute) {
    cfg.method = MethodChoice::Both;
  } else {
    throw Error(Errc::Usage, "unknown method '" + method + "'");
  }
  if (format == "csv") {
    cfg.format = TableFormat::Csv;
  } else if (format == "json") {
    cfg.format = TableFormat::Json;
  } else {
    throw Error(Errc::Usage, "unknown format '" + format + "'");
  }
  if (cfg.two_s < 1) throw Error(Errc::Usage, "--two-s must be at least 1");

  if (cfg.command == Command::Compute) {
    cfg.phi = {parse_real(phi)};
    cfg.r2 = {parse_real(r2)};
  } else {
    if (kind == "r2-phi") {
      cfg.kind = SweepKind::R2Phi;
    } else if (kind == "phi-balanced") {
      cfg.kind = SweepKind::PhiBalanced;
    } else if (kind == "s-balanced") {
      cfg.kind = SweepKind::SBalanced;
    } else {
      throw Error(Errc::Usage, "unknown sweep kind '" + kind + "'");
    }
    const std::string_view phi_default = cfg.kind == SweepKind::SBalanced ? default_phi_list : default_phi_grid;
    cfg.phi = parse_grid(phi.empty() ? phi_default : std::string_view(phi));
    cfg.r2 = parse_grid(r2.empty() ? default_r2_grid : std::string_view(r2));
    cfg.two_s_list = parse_int_list(two_s_list);
    if (cfg.two_s_max < 1) throw Error(Errc::Usage, "--two-s-max must be at least 1");
  }
  require_r2_range(cfg.r2);
  return cfg;
}

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NumericalConsistency:
    case Errc::InvalidDensity:
    case Errc::NotNormalized:
      return exit_numerical;
    case Errc::Io:
      return exit_io;
    default:
      return exit_usage;
  }
}

namespace detail {

inline int run_compute(const RunConfig& cfg, std::ostream& out) {
  const auto spec = cfg.family.build(cfg.two_s);
  const double phi = cfg.phi.front();
  const BsParams bs(cfg.r2.front());

  std::optional<double> oracle, closed;
  if (cfg.method != MethodChoice::Closed) oracle = linear_entropy_oracle(spec, cfg.m, phi, bs).S;
  if (cfg.method != MethodChoice::Oracle) closed = linear_entropy_closed(spec, phi, bs).S;
  const bool both = oracle && closed;
  const double diff = both ? std::abs(*oracle - *closed) : 0.0;

  if (cfg.format == TableFormat::Json) {
    nlohmann::json j{{"family", std::string(to_string(spec.family()))}, {"two_s", spec.two_s()},
                     {"m", cfg.m}, {"phi", phi}, {"r2", bs.r2()}};
    if (oracle) j["S_oracle"] = *oracle;
    if (closed) j["S_closed"] = *closed;
    if (both) j["abs_diff"] = diff;
    out << j.dump(2) << '\n';
  } else {
    out << "two_s,m,phi,r2";
    if (oracle) out << ",S_oracle";
    if (closed) out << ",S_closed";
    if (both) out << ",abs_diff";
    out << '\n' << spec.two_s() << ',' << cfg.m << ',' << format_double17(phi) << ',' << format_double17(bs.r2());
    if (oracle) out << ',' << format_double17(*oracle);
    if (closed) out << ',' << format_double17(*closed);
    if (both) out << ',' << format_double17(diff);
    out << '\n';
  }
  if (!out) throw Error(Errc::Io, "failed writing output");
  return both && diff > 1e-8 ? exit_numerical : exit_ok;
}

inline SweepTable build_sweep(const RunConfig& cfg) {
  SweepOptions opts;
  opts.family = cfg.family;
  opts.m = cfg.m;
  opts.method = cfg.method == MethodChoice::Closed ? EntropyMethod::ClosedForm : EntropyMethod::Oracle;
  opts.serial = cfg.serial;
  switch (cfg.kind) {
    case SweepKind::R2Phi: return sweep_r2_phi(cfg.two_s, cfg.phi, cfg.r2, opts);
    case SweepKind::PhiBalanced: return sweep_phi_balanced(cfg.two_s_list, cfg.phi, opts);
    case SweepKind::SBalanced: return sweep_s_balanced(cfg.two_s_max, cfg.phi, opts);
  }
  throw Error(Errc::Usage, "unknown sweep kind");
}

inline int run_sweep(const RunConfig& cfg, std::ostream& out) {
  const SweepTable table = build_sweep(cfg);
  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) throw Error(Errc::Io, "cannot open '" + *cfg.output + "' for writing");
    emit(table, cfg.format, file);
    file.flush();
    if (!file) throw Error(Errc::Io, "failed writing '" + *cfg.output + "'");
  } else {
    emit(table, cfg.format, out);
  }
  return exit_ok;
}

inline int run_check(const RunConfig& cfg, std::ostream& out) {
  const auto results = run_checks(cfg.suite, cfg.seed.value_or(42));
  bool ok = true;
  for (const auto& r : results) {
    out << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.name << "  max_err=" << r.max_error
        << " tol=" << r.tolerance << '\n';
    ok = ok && r.passed();
  }
  return ok ? exit_ok : exit_numerical;
}

}  // namespace detail

/// Executes a parsed configuration; data goes to `out`, diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.help) {
    out << *cfg.help;
    return exit_ok;
  }
  try {
    switch (cfg.command) {
      case Command::Compute: return detail::run_compute(cfg, out);
      case Command::Sweep: return detail::run_sweep(cfg, out);
      case Command::Check: return detail::run_check(cfg, out);
    }
  } catch (const Error& e) {
    err << "phasebeam: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return exit_usage;
}

/// parse_args + run with error reporting.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    return run(parse_args(argc, argv), out, err);
  } catch (const Error& e) {
    err << "phasebeam: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace phasebeam::cli
