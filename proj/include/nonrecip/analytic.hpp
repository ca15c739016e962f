#pragma once

#include "nonrecip/asymptotics.hpp"
#include "nonrecip/potentials.hpp"

namespace nonrecip {

/// Left/right reflection and transmission amplitudes at one energy.
///
/// Left incidence: e^{i k- z} + r_l e^{-i k- z} on the left, t_l e^{i k+ z} on
/// the right. Right incidence: e^{-i k+ z} + r_r e^{i k+ z} on the right,
/// t_r e^{-i k- z} on the left. Phases are referenced to z = 0.
///
/// at_pole marks a (numerically) vanishing denominator; the amplitudes are
/// then huge or infinite and must not be used as ordinary values.
struct ScatteringAmplitudes {
  Complex r_l, r_r, t_l, t_r;
  Complex k_minus, k_plus;
  bool at_pole = false;

  double R_l() const { return std::norm(r_l); }
  double R_r() const { return std::norm(r_r); }
  /// Flux-corrected: (Re k_out / Re k_in) |t|^2.
  double T_l() const;
  double T_r() const;
  double raw_T_l() const { return std::norm(t_l); }
  double raw_T_r() const { return std::norm(t_r); }
};

/// Labelled Gamma-function ratios. For the scattering model these are
/// G1..G4, for the penetrating model P1..P4.
struct GammaRatios {
  Complex r1, r2, r3, r4;
};

/// Jost-solution coefficients of the Rosen-Morse equation
///   psi'' + (A + B tanh z + C sech^2 z) psi = 0,
/// k+^2 = A + B, k-^2 = A - B, gamma = sqrt(1/4 + C), with U ~ e^{i k+ z} and
/// V ~ e^{-i k+ z} at +inf (normalisation N = 1). Throws PoleError if a
/// numerator Gamma sits at a pole.
AsymptoticCoefficients rosen_morse_coefficients(Complex k_plus, Complex k_minus,
                                                Complex gamma);

// PT-complexified Morse potential, scattering states.

Complex morse_scattering_gamma(const MorseScatteringParams& params);

/// G1..G4: U at -inf is G2 e^{i k- z} + G1 e^{-i k- z}, V is G4 e^{i k- z} + G3 e^{-i k- z}.
GammaRatios morse_scattering_ratios(const MorseScatteringParams& params, double eps);

AsymptoticCoefficients morse_scattering_coefficients(const MorseScatteringParams& params,
                                                     double eps);

/// r_l = G1/G2, r_r = -G4/G2, t_l = 1/G2, t_r = (G2 G3 - G1 G4)/G2.
ScatteringAmplitudes morse_scattering_amplitudes(const MorseScatteringParams& params,
                                                 double eps);

/// Closed-form right Jost solution U(z) = y^p (1-y)^s 2F1(a, b; c; y) on the
/// real z line, y = 1/(1 + e^{2z}). Normalised so that U ~ e^{i k+ z} at +inf.
Complex morse_scattering_jost(const MorseScatteringParams& params, double eps, double z);

// Morse potential with d -> i d, penetrating states on the real z line.

Complex morse_penetrating_gamma(const MorsePenetratingParams& params);

/// P1..P4: psi1 at -inf is P1 e^{i k- z} + P2 e^{-i k- z}, psi2 is
/// P3 e^{i k- z} + P4 e^{-i k- z}. With real k+- one has P1* = P4, P2* = P3.
GammaRatios morse_penetrating_ratios(const MorsePenetratingParams& params, double eps);

/// r_l = P2/P1, r_r = -P3/P1, t_l = 1/P1, t_r = (P1 P4 - P2 P3)/P1.
ScatteringAmplitudes morse_penetrating_amplitudes(const MorsePenetratingParams& params,
                                                  double eps);

// Antisymmetric double delta lambda [delta(x - a/2) - delta(x + a/2)].

/// D = 1 + (lambda/2k)^2 (1 - e^{2ika}); zeros on the real energy axis are
/// spectral singularities.
Complex double_delta_denominator(const DoubleDeltaForm& form, double eps);

/// r_l = (lambda/k)(1 + i lambda/2k) sin(ka) / D,
/// r_r = (lambda/k)(i lambda/2k - 1) sin(ka) / D,   t_l = t_r = 1/D.
ScatteringAmplitudes double_delta_amplitudes(const DoubleDeltaForm& form, double eps);
/// Throws ParameterError unless the comb is the antisymmetric two-site form.
ScatteringAmplitudes double_delta_amplitudes(const DeltaCombParams& params, double eps);

/// Closed-form amplitudes for any spec that has one (general combs do not:
/// DomainError).
ScatteringAmplitudes analytic_amplitudes(const PotentialSpec& spec, double eps);

/// R_l - R_r. Throws PoleError when amps.at_pole.
double reciprocity_gap(const ScatteringAmplitudes& amps);

}  // namespace nonrecip
