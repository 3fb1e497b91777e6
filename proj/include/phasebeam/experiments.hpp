#pragma once

// Parameter sweeps behind the entropy figures: S over (phi, r^2) at fixed 2s, S against phi on a
// 50:50 splitter for several 2s, and S against 2s for several phi. The default structure function
// is F(N) = N(2s+1-N)/(2s), i.e. the kappa-neg family.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "phasebeam/algebra.hpp"
#include "phasebeam/entropy.hpp"
#include "phasebeam/errors.hpp"
#include "phasebeam/splitter.hpp"

namespace phasebeam {

/// Inclusive linear grid; count == 1 yields {start}.
inline std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) throw Error(Errc::Range, "grid needs at least one point");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = start;
    return v;
  }
  const double span = stop - start;
  const double steps = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = start + span * (static_cast<double>(i) / steps);
  v.back() = stop;
  return v;
}

struct Axis {
  std::string name;
  std::vector<double> values;
};

struct FamilyChoice {
  Family family = Family::KappaNeg;
  std::optional<double> kappa;
  std::vector<double> custom_F;  ///< only for Family::CustomF

  StructureSpec build(int two_s) const {
    if (family == Family::CustomF) {
      auto spec = structure_from_F(custom_F);
      if (spec.two_s() != two_s) {
        throw Error(Errc::InvalidDimension, "custom F table has 2s = " + std::to_string(spec.two_s()) +
                                                ", requested " + std::to_string(two_s));
      }
      return spec;
    }
    return build_structure(family, two_s, family == Family::KappaNeg ? std::nullopt : kappa);
  }
};

struct SweepMeta {
  Family family = Family::KappaNeg;
  std::optional<double> kappa;
  std::vector<int> two_s;
  long m = 0;
  std::vector<std::pair<std::string, double>> fixed;
  EntropyMethod method = EntropyMethod::Oracle;
};

/// Rectangular grid of entropy values, row-major over the axis product (last axis fastest).
struct SweepTable {
  std::vector<Axis> axes;
  std::vector<double> values;
  SweepMeta meta;

  std::size_t cell_count() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.values.size();
    return n;
  }

  /// Axis indices of a flat cell index.
  std::vector<std::size_t> unravel(std::size_t flat) const {
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
      idx[k] = flat % axes[k].values.size();
      flat /= axes[k].values.size();
    }
    return idx;
  }

  void validate() const {
    if (values.size() != cell_count()) {
      throw Error(Errc::DimensionMismatch, "table has " + std::to_string(values.size()) + " values for " +
                                               std::to_string(cell_count()) + " cells");
    }
    for (double s : values) {
      if (!(s >= 0.0 && s <= 1.0)) throw Error(Errc::NumericalConsistency, "entropy value outside [0, 1]");
    }
  }
};

struct SweepOptions {
  FamilyChoice family;
  long m = 0;
  EntropyMethod method = EntropyMethod::Oracle;
  bool serial = false;
  std::size_t threads = 0;  ///< 0: PHASEBEAM_THREADS, else hardware concurrency
  /// Fraction of cells with d <= cross_check_max_dim re-evaluated by the other route.
  double cross_check_fraction = 0.1;
  int cross_check_max_dim = 9;
  double cross_check_tolerance = 1e-10;
  std::uint64_t cross_check_seed = 0x5eed;
};

inline std::size_t worker_count(const SweepOptions& opts) {
  if (opts.serial) return 1;
  if (opts.threads > 0) return opts.threads;
  if (const char* env = std::getenv("PHASEBEAM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) over a static partition. Each index owns its output slot,
/// so results do not depend on the worker count. The first exception thrown is rethrown.
inline void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace detail {

inline double evaluate_cell(const StructureSpec& spec, long m, double phi, double r2, EntropyMethod method) {
  const BsParams bs(r2);
  return method == EntropyMethod::Oracle ? linear_entropy_oracle(spec, m, phi, bs).S
                                         : linear_entropy_closed(spec, phi, bs).S;
}

struct CellPoint {
  int two_s;
  double phi;
  double r2;
};

/// Evaluates every cell, then re-evaluates a seeded subsample by the other route.
inline std::vector<double> run_cells(const std::vector<CellPoint>& cells, const SweepOptions& opts) {
  std::vector<int> dims;
  for (const auto& c : cells) {
    if (std::find(dims.begin(), dims.end(), c.two_s) == dims.end()) dims.push_back(c.two_s);
  }
  std::vector<std::pair<int, StructureSpec>> specs;
  for (int ts : dims) specs.emplace_back(ts, opts.family.build(ts));
  const auto spec_for = [&](int ts) -> const StructureSpec& {
    for (const auto& [k, s] : specs) {
      if (k == ts) return s;
    }
    throw Error(Errc::InvalidDimension, "no structure for 2s = " + std::to_string(ts));
  };

  std::vector<double> out(cells.size());
  parallel_for(cells.size(), worker_count(opts), [&](std::size_t i) {
    const auto& c = cells[i];
    out[i] = evaluate_cell(spec_for(c.two_s), opts.m, c.phi, c.r2, opts.method);
  });

  if (opts.cross_check_fraction > 0.0) {
    std::mt19937_64 rng(opts.cross_check_seed);
    std::bernoulli_distribution pick(std::min(opts.cross_check_fraction, 1.0));
    std::vector<std::size_t> sample;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (pick(rng) && cells[i].two_s + 1 <= opts.cross_check_max_dim) sample.push_back(i);
    }
    const EntropyMethod other =
        opts.method == EntropyMethod::Oracle ? EntropyMethod::ClosedForm : EntropyMethod::Oracle;
    parallel_for(sample.size(), worker_count(opts), [&](std::size_t j) {
      const auto& c = cells[sample[j]];
      const double alt = evaluate_cell(spec_for(c.two_s), opts.m, c.phi, c.r2, other);
      if (std::abs(alt - out[sample[j]]) > opts.cross_check_tolerance) {
        throw Error(Errc::NumericalConsistency,
                    "oracle and closed form disagree at 2s=" + std::to_string(c.two_s) +
                        " phi=" + std::to_string(c.phi) + " r2=" + std::to_string(c.r2));
      }
    });
  }
  return out;
}

inline void require_nonempty(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw Error(Errc::Range, std::string(name) + " grid is empty");
}

inline SweepMeta make_meta(const SweepOptions& opts, std::vector<int> two_s) {
  SweepMeta meta;
  meta.family = opts.family.family;
  if (opts.family.family != Family::KappaNeg) {
    meta.kappa = opts.family.kappa;
  } else if (two_s.size() == 1) {
    meta.kappa = -1.0 / two_s.front();
  }
  meta.two_s = std::move(two_s);
  meta.m = opts.m;
  meta.method = opts.method;
  return meta;
}

}  // namespace detail

/// S over (phi, r^2) at fixed 2s; axes (phi, r2), phi-major.
inline SweepTable sweep_r2_phi(int two_s, const std::vector<double>& phi_grid, const std::vector<double>& r2_grid,
                               const SweepOptions& opts = {}) {
  detail::require_nonempty(phi_grid, "phi");
  detail::require_nonempty(r2_grid, "r2");
  for (double r2 : r2_grid) (void)BsParams(r2);
  std::vector<detail::CellPoint> cells;
  cells.reserve(phi_grid.size() * r2_grid.size());
  for (double phi : phi_grid) {
    for (double r2 : r2_grid) cells.push_back({two_s, phi, r2});
  }
  SweepTable table{{{"phi", phi_grid}, {"r2", r2_grid}}, detail::run_cells(cells, opts),
                   detail::make_meta(opts, {two_s})};
  table.validate();
  return table;
}

/// S against phi at r^2 = 1/2, one row per 2s; axes (two_s, phi).
inline SweepTable sweep_phi_balanced(const std::vector<int>& two_s_list, const std::vector<double>& phi_grid,
                                     const SweepOptions& opts = {}) {
  if (two_s_list.empty()) throw Error(Errc::Range, "two_s list is empty");
  detail::require_nonempty(phi_grid, "phi");
  std::vector<detail::CellPoint> cells;
  std::vector<double> ts_axis;
  for (int ts : two_s_list) {
    ts_axis.push_back(ts);
    for (double phi : phi_grid) cells.push_back({ts, phi, 0.5});
  }
  SweepTable table{{{"two_s", ts_axis}, {"phi", phi_grid}}, detail::run_cells(cells, opts),
                   detail::make_meta(opts, two_s_list)};
  table.meta.fixed.emplace_back("r2", 0.5);
  table.validate();
  return table;
}

/// S against 2s = 1..two_s_max at r^2 = 1/2, one row per phi; axes (phi, two_s).
inline SweepTable sweep_s_balanced(int two_s_max, const std::vector<double>& phi_list,
                                   const SweepOptions& opts = {}) {
  if (two_s_max < 1) throw Error(Errc::InvalidDimension, "two_s_max must be at least 1");
  detail::require_nonempty(phi_list, "phi");
  std::vector<int> dims;
  std::vector<double> ts_axis;
  for (int ts = 1; ts <= two_s_max; ++ts) {
    dims.push_back(ts);
    ts_axis.push_back(ts);
  }
  std::vector<detail::CellPoint> cells;
  for (double phi : phi_list) {
    for (int ts : dims) cells.push_back({ts, phi, 0.5});
  }
  SweepTable table{{{"phi", phi_list}, {"two_s", ts_axis}}, detail::run_cells(cells, opts),
                   detail::make_meta(opts, dims)};
  table.meta.fixed.emplace_back("r2", 0.5);
  table.validate();
  return table;
}

}  // namespace phasebeam
