#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nonrecip/specfun.hpp"

namespace nonrecip {

// All energies and strengths are dimensionless: eps = 2 m d^2 E / hbar^2 for
// the Morse families, and hbar^2 / 2m = 1 (k = sqrt(E)) for delta combs.

/// PT-complexified Morse potential, mu' -> i mu. Requires 0 < mu < pi/2.
struct MorseScatteringParams {
  double v = 0.0;
  double mu = 0.0;
};

/// Morse potential complexified through d -> i d (penetrating states).
/// Requires v > 0 and mu > 0.
struct MorsePenetratingParams {
  double v = 0.0;
  double mu = 0.0;
};

struct DeltaSite {
  double position = 0.0;
  Complex strength;
};

/// Sum of lambda_i delta(x - x_i). Each site imposes
/// psi'(x_i+) - psi'(x_i-) = lambda_i psi(x_i). Positions strictly increasing.
struct DeltaCombParams {
  std::vector<DeltaSite> sites;
};

using PotentialSpec =
    std::variant<MorseScatteringParams, MorsePenetratingParams, DeltaCombParams>;

/// lambda [delta(x - a/2) - delta(x + a/2)] in canonical form (a > 0).
struct DoubleDeltaForm {
  Complex lambda;
  double a = 1.0;
};

void validate(const MorseScatteringParams& params);
void validate(const MorsePenetratingParams& params);
void validate(const DeltaCombParams& params);
void validate(const PotentialSpec& spec);

std::string model_name(const PotentialSpec& spec);

/// Builds the two-site comb {(-a/2, -lambda), (a/2, lambda)}, sorted by
/// position. a = 0 is rejected.
DeltaCombParams make_double_delta(Complex lambda, double a);

/// Canonical form of a parameter pair; a < 0 is the same potential as
/// (-a, -lambda).
DoubleDeltaForm canonical_double_delta(Complex lambda, double a);

/// Recognises the antisymmetric two-site comb and returns it in canonical
/// form, or nullopt for any other comb.
std::optional<DoubleDeltaForm> as_double_delta(const DeltaCombParams& params);

/// Lowest admissible energy of the penetrating window, -v e^{-2 mu}.
double penetrating_threshold(const MorsePenetratingParams& params);

/// The coefficient q of psi'' + q(z) psi = 0 together with its limits at
/// z -> -inf (k_minus_sq) and z -> +inf (k_plus_sq).
///
/// q accepts complex z: the numerical oracle may integrate along rays in the
/// complex plane, so q must be analytic in the sectors between the real axis
/// and those rays.
struct EffectiveCoefficient {
  std::function<Complex(Complex)> q;
  Complex k_minus_sq;
  Complex k_plus_sq;

  Complex operator()(Complex z) const { return q(z); }
};

/// q(z) = eps - v cos 2mu - i v sin 2mu tanh z + v cos^2 mu sech^2 z.
EffectiveCoefficient morse_scattering_q(const MorseScatteringParams& params,
                                        double eps);

/// q(z) = eps + v cosh 2mu + v sinh 2mu tanh z - v cosh^2 mu sech^2 z.
/// Throws DomainError unless eps > -v e^{-2 mu}.
EffectiveCoefficient morse_penetrating_q(const MorsePenetratingParams& params,
                                         double eps);

/// q(z) = k^2 everywhere; the free particle.
EffectiveCoefficient constant_q(Complex k_sq);

struct AsymptoticWavenumbers {
  Complex k_minus;
  Complex k_plus;
};

AsymptoticWavenumbers asymptotic_wavenumbers(const PotentialSpec& spec, double eps);

}  // namespace nonrecip
