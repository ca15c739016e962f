#include "nonrecip/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "nonrecip/errors.hpp"

namespace nonrecip {
namespace {

constexpr double kIdenticalGap = 1e-10;
constexpr double kTouchingAccept = 1e-8;
constexpr double kCrossingReject = 1e-6;
constexpr std::uintmax_t kMaxIterations = 400;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void check_window(const PotentialSpec& spec, double lo, double hi, std::size_t n) {
  validate(spec);
  const std::vector<double> grid = energy_grid(lo, hi, n);
  asymptotic_wavenumbers(spec, grid.front());
  asymptotic_wavenumbers(spec, grid.back());
  if (const auto* p = std::get_if<MorsePenetratingParams>(&spec)) {
    if (lo < penetrating_threshold(*p)) {
      throw DomainError("scan: window extends below the penetrating threshold");
    }
  }
  if (std::holds_alternative<DeltaCombParams>(spec) && lo < 0.0) {
    throw DomainError("scan: delta combs need a window of positive energies");
  }
}

namespace {

DoubleDeltaForm require_double_delta(const PotentialSpec& spec, const char* who) {
  const auto* comb = std::get_if<DeltaCombParams>(&spec);
  const auto form = comb ? as_double_delta(*comb) : std::nullopt;
  if (!form) throw ParameterError(std::string(who) + ": requires the two-site double delta");
  return *form;
}

// d D / d eps for D = 1 + (lambda^2 / 4 eps)(1 - e^{2ika}).
Complex double_delta_denominator_slope(const DoubleDeltaForm& form, double eps) {
  const double k = std::sqrt(eps);
  const Complex e = std::exp(Complex(0.0, 2.0 * k * form.a));
  const Complex l2 = form.lambda * form.lambda;
  return -l2 / (4.0 * eps * eps) * (1.0 - e) - l2 / (4.0 * eps) * Complex(0.0, form.a / k) * e;
}

double gap_scale(const ScatteringAmplitudes& amps) {
  return std::max({amps.R_l(), amps.R_r(), 1.0});
}

}  // namespace

std::string to_string(Engine engine) {
  return engine == Engine::analytic ? "analytic" : "oracle";
}

std::string to_string(PointKind kind) {
  switch (kind) {
    case PointKind::reciprocity:
      return "reciprocity";
    case PointKind::spectral_singularity:
      return "spectral_singularity";
    case PointKind::reflectionless:
      return "reflectionless";
  }
  return "unknown";
}

UnitarityDefect unitarity_defect(const ScatteringAmplitudes& amps) {
  if (amps.at_pole) throw PoleError("unitarity_defect: amplitudes at a pole");
  return {amps.R_l() + amps.T_l() - 1.0, amps.R_r() + amps.T_r() - 1.0};
}

UnitarityDefect raw_unitarity_defect(const ScatteringAmplitudes& amps) {
  if (amps.at_pole) throw PoleError("raw_unitarity_defect: amplitudes at a pole");
  return {amps.R_l() + amps.raw_T_l() - 1.0, amps.R_r() + amps.raw_T_r() - 1.0};
}

std::vector<double> energy_grid(double lo, double hi, std::size_t n) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ParameterError("energy_grid: need lo < hi");
  }
  if (n < 2) throw ParameterError("energy_grid: need at least 2 points");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(n);
  }
  grid.back() = hi;
  return grid;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("NONRECIP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScatteringAmplitudes evaluate(const PotentialSpec& spec, double eps, Engine engine,
                              const IntegrationConfig& cfg) {
  if (engine == Engine::analytic) return analytic_amplitudes(spec, eps);
  return oracle_amplitudes(spec, eps, cfg).amplitudes;
}

ScanRow make_row(double eps, const ScatteringAmplitudes& amps) {
  ScanRow row;
  row.eps = eps;
  row.R_l = amps.R_l();
  row.R_r = amps.R_r();
  row.T_l = amps.T_l();
  row.T_r = amps.T_r();
  row.gap = row.R_l - row.R_r;
  row.at_pole = amps.at_pole;
  if (amps.at_pole) {
    row.defect_l = row.defect_r = row.raw_defect_l = row.raw_defect_r = kNaN;
  } else {
    const UnitarityDefect d = unitarity_defect(amps);
    const UnitarityDefect raw = raw_unitarity_defect(amps);
    row.defect_l = d.left;
    row.defect_r = d.right;
    row.raw_defect_l = raw.left;
    row.raw_defect_r = raw.right;
  }
  return row;
}

std::array<double, 4> amplitude_disagreement(const ScatteringAmplitudes& x,
                                             const ScatteringAmplitudes& y) {
  const std::array<Complex, 4> a{x.r_l, x.r_r, x.t_l, x.t_r};
  const std::array<Complex, 4> b{y.r_l, y.r_r, y.t_l, y.t_r};
  double scale = 0.0;
  for (const Complex& v : a) scale = std::max(scale, std::abs(v));
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max({std::abs(a[i]), std::abs(b[i]), 1e-8 * scale});
    out[i] = denom > 0.0 ? std::abs(a[i] - b[i]) / denom : 0.0;
  }
  return out;
}

std::vector<ScanRow> scan(const PotentialSpec& spec, double lo, double hi, std::size_t n,
                          Engine engine, const IntegrationConfig& cfg) {
  check_window(spec, lo, hi, n);
  const std::vector<double> grid = energy_grid(lo, hi, n);
  std::vector<ScanRow> rows(n);
  parallel_for(n, [&](std::size_t i) {
    rows[i] = make_row(grid[i], evaluate(spec, grid[i], engine, cfg));
  });
  return rows;
}

ReciprocitySearch find_reciprocity_points(const PotentialSpec& spec, double lo, double hi,
                                          std::size_t grid_n, double tol, Engine engine,
                                          const IntegrationConfig& cfg) {
  IntegrationConfig fast = cfg;
  fast.estimate_error = false;
  const std::vector<ScanRow> rows = scan(spec, lo, hi, grid_n, engine, fast);

  ReciprocitySearch out;
  const bool all_small = std::all_of(rows.begin(), rows.end(), [](const ScanRow& r) {
    return !r.at_pole && std::abs(r.gap) < kIdenticalGap;
  });
  if (all_small) {
    out.identically_reciprocal = true;
    return out;
  }

  const auto amps_at = [&](double e) { return evaluate(spec, e, engine, fast); };
  const auto gap_at = [&](double e) {
    const ScatteringAmplitudes a = amps_at(e);
    return a.at_pole ? kNaN : a.R_l() - a.R_r();
  };
  const auto usable = [](const ScanRow& r) { return !r.at_pole && std::isfinite(r.gap); };

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ScanRow& row = rows[i];
    if (!usable(row)) continue;
    if (row.gap == 0.0) {
      out.points.push_back({PointKind::reciprocity, row.eps, 0.0, 1});
      continue;
    }
    if (i + 1 < rows.size() && usable(rows[i + 1]) && rows[i + 1].gap != 0.0 &&
        std::signbit(row.gap) != std::signbit(rows[i + 1].gap)) {
      const auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
      std::uintmax_t iters = kMaxIterations;
      const auto bracket = boost::math::tools::bisect(
          [&](double e) {
            const double g = gap_at(e);
            if (!std::isfinite(g)) throw PoleError("reciprocity bisection hit a pole");
            return g;
          },
          row.eps, rows[i + 1].eps, done, iters);
      const double root = 0.5 * (bracket.first + bracket.second);
      const ScatteringAmplitudes a = amps_at(root);
      const double residual = std::abs(a.R_l() - a.R_r());
      // A sign change through a pole is not a crossing.
      if (!a.at_pole && residual <= kCrossingReject * gap_scale(a)) {
        out.points.push_back({PointKind::reciprocity, root, residual, 1});
      }
      continue;
    }
    if (i == 0 || i + 1 == rows.size()) continue;
    const ScanRow& prev = rows[i - 1];
    const ScanRow& next = rows[i + 1];
    if (!usable(prev) || !usable(next)) continue;
    const bool touching = std::signbit(prev.gap) == std::signbit(row.gap) &&
                          std::signbit(next.gap) == std::signbit(row.gap) &&
                          std::abs(row.gap) <= std::abs(prev.gap) &&
                          std::abs(row.gap) < std::abs(next.gap);
    if (!touching) continue;
    std::uintmax_t iters = kMaxIterations;
    const auto best = boost::math::tools::brent_find_minima(
        [&](double e) {
          const double g = gap_at(e);
          return std::isfinite(g) ? std::abs(g) : std::numeric_limits<double>::max();
        },
        prev.eps, next.eps, std::numeric_limits<double>::digits, iters);
    const ScatteringAmplitudes a = amps_at(best.first);
    const double residual = std::abs(a.R_l() - a.R_r());
    if (!a.at_pole && residual < kTouchingAccept * gap_scale(a)) {
      out.points.push_back({PointKind::reciprocity, best.first, residual, 2});
    }
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const SpecialPoint& a, const SpecialPoint& b) { return a.eps < b.eps; });
  return out;
}

CheckedReciprocitySearch find_reciprocity_points_checked(const PotentialSpec& spec, double lo,
                                                         double hi, std::size_t grid_n,
                                                         double tol,
                                                         const IntegrationConfig& cfg) {
  CheckedReciprocitySearch out;
  const auto run = [&](std::size_t n) {
    out.grid_n = n;
    out.analytic = find_reciprocity_points(spec, lo, hi, n, tol, Engine::analytic, cfg);
    out.oracle = find_reciprocity_points(spec, lo, hi, n, tol, Engine::oracle, cfg);
    out.counts_agree =
        out.analytic.identically_reciprocal == out.oracle.identically_reciprocal &&
        out.analytic.points.size() == out.oracle.points.size();
  };
  run(grid_n);
  if (!out.counts_agree) run(4 * grid_n);
  return out;
}

std::vector<SpecialPoint> find_reflectionless_points(const PotentialSpec& spec, double lo,
                                                     double hi, double tol) {
  const DoubleDeltaForm form = require_double_delta(spec, "find_reflectionless_points");
  if (!(lo < hi)) throw ParameterError("find_reflectionless_points: need lo < hi");
  std::vector<SpecialPoint> out;
  const double unit = std::numbers::pi / form.a;
  const auto first = static_cast<long>(std::floor(std::sqrt(std::max(lo, 0.0)) / unit));
  for (long n = std::max(first, 1L);; ++n) {
    const double eps = std::pow(static_cast<double>(n) * unit, 2);
    if (eps > hi) break;
    if (eps <= lo) continue;
    const ScatteringAmplitudes a = double_delta_amplitudes(form, eps);
    const double residual = std::abs(a.r_l) + std::abs(a.r_r);
    if (!a.at_pole && residual < tol) {
      out.push_back({PointKind::reflectionless, eps, residual, 1});
    }
  }
  return out;
}

std::vector<SpecialPoint> find_spectral_singularities(const PotentialSpec& spec, double lo,
                                                      double hi, double tol,
                                                      std::size_t grid_n) {
  const DoubleDeltaForm form = require_double_delta(spec, "find_spectral_singularities");
  check_window(spec, lo, hi, grid_n);
  const std::vector<double> grid = energy_grid(lo, hi, grid_n);
  std::vector<double> mag(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    mag[i] = std::abs(double_delta_denominator(form, grid[i]));
  }
  // Sign of d|D|^2/d eps, up to a positive factor.
  const auto slope = [&](double e) {
    return std::real(std::conj(double_delta_denominator(form, e)) *
                     double_delta_denominator_slope(form, e));
  };

  std::vector<SpecialPoint> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool left_ok = i == 0 || mag[i] <= mag[i - 1];
    const bool right_ok = i + 1 == grid.size() || mag[i] < mag[i + 1];
    if (!left_ok || !right_ok) continue;
    const double a = i == 0 ? 0.5 * (lo + grid[0]) : grid[i - 1];
    const double b = i + 1 == grid.size() ? grid[i] : grid[i + 1];
    double best = grid[i];
    if (a > 0.0 && slope(a) < 0.0 && slope(b) > 0.0) {
      std::uintmax_t iters = kMaxIterations;
      const auto bracket = boost::math::tools::bisect(
          slope, a, b, [](double x, double y) { return x == y || std::nextafter(x, y) == y; },
          iters);
      best = std::abs(double_delta_denominator(form, bracket.first)) <
                     std::abs(double_delta_denominator(form, bracket.second))
                 ? bracket.first
                 : bracket.second;
    }
    const double residual = std::abs(double_delta_denominator(form, best));
    if (!(residual < tol)) continue;
    const ScatteringAmplitudes amps = double_delta_amplitudes(form, best);
    if (std::abs(amps.r_l) > 1.0 / tol && std::abs(amps.r_r) > 1.0 / tol) {
      out.push_back({PointKind::spectral_singularity, best, residual, 1});
    }
  }
  return out;
}

}  // namespace nonrecip
