#pragma once

#include <optional>

#include "nonrecip/analytic.hpp"
#include "nonrecip/asymptotics.hpp"
#include "nonrecip/potentials.hpp"

namespace nonrecip {

/// Fixed-step classical RK4 on the truncation box.
struct IntegrationConfig {
  double half_width = 30.0;  // L
  double step = 1e-3;
  // Repeat the run at 1.25 L and report the difference.
  bool estimate_error = true;
};

struct OracleResult {
  ScatteringAmplitudes amplitudes;
  // Present for integrated runs; delta matching has no asymptotic region.
  std::optional<AsymptoticCoefficients> coefficients;
  // Largest amplitude change between the L and 1.25 L runs, relative to
  // max(1, largest amplitude). Zero for exact solves or when not estimated.
  double estimated_truncation_error = 0.0;
};

/// Integrates psi'' + q psi = 0 for the solutions U ~ e^{i k+ z} and
/// V ~ e^{-i k+ z} from the right end of the box to the left end and
/// decomposes them into e^{+-i k- z} there.
///
/// For complex k the box ends are moved onto the rays z = +-(L / cos t) e^{i t},
/// t = -arg k, on which both plane waves are pure phases; the two rays meet at
/// z = 0. For real k this is the real interval [-L, L].
///
/// Throws DomainError when |arg k+-| > acos(0.2) (non-propagating asymptotics)
/// or when step * max|k| >= 0.1, ParameterError for L <= 0 or step <= 0.
OracleResult integrate_scattering(const EffectiveCoefficient& q,
                                  const IntegrationConfig& cfg = {});

/// Exact plane-wave matching across the sites of a delta comb. Phases are
/// referenced to x = 0. at_pole is set when the linear system is numerically
/// singular (a spectral singularity). Throws DomainError for eps <= 0.
OracleResult delta_matching(const DeltaCombParams& params, double eps);

/// integrate_scattering for the Morse families, delta_matching for combs.
OracleResult oracle_amplitudes(const PotentialSpec& spec, double eps,
                               const IntegrationConfig& cfg = {});

}  // namespace nonrecip
