#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nonrecip/analytic.hpp"
#include "nonrecip/oracle.hpp"
#include "nonrecip/potentials.hpp"

namespace nonrecip {

enum class Engine { analytic, oracle };

std::string to_string(Engine engine);

struct ScanRow {
  double eps = 0.0;
  double R_l = 0.0, R_r = 0.0;
  double T_l = 0.0, T_r = 0.0;  // flux-corrected
  double gap = 0.0;             // R_l - R_r
  double defect_l = 0.0, defect_r = 0.0;
  // Same with the uncorrected |t|^2.
  double raw_defect_l = 0.0, raw_defect_r = 0.0;
  bool at_pole = false;
};

enum class PointKind { reciprocity, spectral_singularity, reflectionless };

std::string to_string(PointKind kind);

struct SpecialPoint {
  PointKind kind = PointKind::reciprocity;
  double eps = 0.0;
  // |gap|, |D| or |r_l| + |r_r| at eps, according to kind.
  double residual = 0.0;
  // 1 for a sign change, 2 for a touching zero.
  int multiplicity_hint = 1;
};

struct UnitarityDefect {
  double left = 0.0;
  double right = 0.0;
};

/// R + T - 1 per incidence side with flux-corrected T. PoleError at a pole.
UnitarityDefect unitarity_defect(const ScatteringAmplitudes& amps);
/// R + |t|^2 - 1, without the flux factor.
UnitarityDefect raw_unitarity_defect(const ScatteringAmplitudes& amps);

/// n points on the half-open window (lo, hi]: lo + (hi - lo)(i + 1)/n.
/// ParameterError unless lo < hi and n >= 2.
std::vector<double> energy_grid(double lo, double hi, std::size_t n);

/// Worker threads for scans: NONRECIP_THREADS if set to a positive integer,
/// otherwise the hardware concurrency.
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads; rethrows the
/// first exception after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Throws ParameterError for a bad window or grid and DomainError when the
/// window leaves the model's admissible energies.
void check_window(const PotentialSpec& spec, double lo, double hi, std::size_t n);

ScatteringAmplitudes evaluate(const PotentialSpec& spec, double eps, Engine engine,
                              const IntegrationConfig& cfg = {});

ScanRow make_row(double eps, const ScatteringAmplitudes& amps);

/// Per-amplitude (r_l, r_r, t_l, t_r) relative difference
/// |x - y| / max(|x|, |y|, 1e-8 S), S the largest magnitude among the four
/// amplitudes of x. The floor keeps exact zeros (reflectionless points) from
/// producing spurious O(1) relative errors.
std::array<double, 4> amplitude_disagreement(const ScatteringAmplitudes& x,
                                             const ScatteringAmplitudes& y);

/// Evaluates the grid in parallel; rows are ordered by eps and pole rows are
/// kept with at_pole set. DomainError if the window is not admissible.
std::vector<ScanRow> scan(const PotentialSpec& spec, double lo, double hi, std::size_t n,
                          Engine engine, const IntegrationConfig& cfg = {});

struct ReciprocitySearch {
  // |gap| < 1e-10 on the whole grid; points is then empty.
  bool identically_reciprocal = false;
  std::vector<SpecialPoint> points;
};

/// Sign changes of gap(eps) on the grid, bisected to |d eps| <= tol, plus
/// touching zeros: grid minima of |gap| refined by Brent's method and kept
/// when |gap| < 1e-8 max(R_l, R_r, 1). Sorted by eps.
ReciprocitySearch find_reciprocity_points(const PotentialSpec& spec, double lo, double hi,
                                          std::size_t grid_n, double tol = 1e-12,
                                          Engine engine = Engine::analytic,
                                          const IntegrationConfig& cfg = {});

struct CheckedReciprocitySearch {
  ReciprocitySearch analytic;
  ReciprocitySearch oracle;
  std::size_t grid_n = 0;  // grid actually used
  bool counts_agree = false;
};

/// Runs both engines; if the point counts differ, reruns both once at 4x the
/// grid density.
CheckedReciprocitySearch find_reciprocity_points_checked(const PotentialSpec& spec, double lo,
                                                         double hi, std::size_t grid_n,
                                                         double tol = 1e-12,
                                                         const IntegrationConfig& cfg = {});

/// eps = (n pi / a)^2 inside (lo, hi], each kept only if |r_l| + |r_r| < tol.
/// ParameterError unless spec is the two-site double delta.
std::vector<SpecialPoint> find_reflectionless_points(const PotentialSpec& spec, double lo,
                                                     double hi, double tol = 1e-10);

/// Real-eps zeros of the double-delta denominator: grid minima of |D| refined
/// by bisecting d|D|^2/d eps, accepted when |D| < tol and |r_l|, |r_r| > 1/tol.
std::vector<SpecialPoint> find_spectral_singularities(const PotentialSpec& spec, double lo,
                                                      double hi, double tol = 1e-8,
                                                      std::size_t grid_n = 4000);

}  // namespace nonrecip
