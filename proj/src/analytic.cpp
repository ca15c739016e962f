#include "nonrecip/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nonrecip/errors.hpp"
#include "overloaded.hpp"

namespace nonrecip {
namespace {

using specfun::gamma_ratio;
using specfun::sqrt_principal;

constexpr Complex kI{0.0, 1.0};
constexpr double kPoleThreshold = 1e-13;
const Complex kInfinite{std::numeric_limits<double>::infinity(), 0.0};

ScatteringAmplitudes pole_amplitudes(Complex k_minus, Complex k_plus) {
  return {kInfinite, kInfinite, kInfinite, kInfinite, k_minus, k_plus, true};
}

// Amplitudes of a potential whose Jost coefficients at +inf are the unit
// plane waves (u1+ = v2+ = 1, u2+ = v1+ = 0).
ScatteringAmplitudes from_jost(const AsymptoticCoefficients& c, Complex k_minus,
                               Complex k_plus) {
  const double scale = std::max({std::abs(c.u2_minus), std::abs(c.v1_minus),
                                 std::abs(c.v2_minus), 1.0});
  if (!(std::abs(shared_denominator(c)) >= kPoleThreshold * scale)) {
    ScatteringAmplitudes out = pole_amplitudes(k_minus, k_plus);
    if (shared_denominator(c) != Complex(0.0)) {
      out.r_l = reflection_from_asymptotics(c, Side::left);
      out.r_r = reflection_from_asymptotics(c, Side::right);
      out.t_l = transmission_from_asymptotics(c, Side::left);
      out.t_r = transmission_from_asymptotics(c, Side::right);
    }
    return out;
  }
  return {reflection_from_asymptotics(c, Side::left),
          reflection_from_asymptotics(c, Side::right),
          transmission_from_asymptotics(c, Side::left),
          transmission_from_asymptotics(c, Side::right),
          k_minus,
          k_plus,
          false};
}

// 1 - e^{i theta} without cancellation for small theta.
Complex one_minus_expi(double theta) {
  const double h = std::sin(0.5 * theta);
  return {2.0 * h * h, -std::sin(theta)};
}

}  // namespace

double ScatteringAmplitudes::T_l() const {
  return k_plus.real() / k_minus.real() * std::norm(t_l);
}

double ScatteringAmplitudes::T_r() const {
  return k_minus.real() / k_plus.real() * std::norm(t_r);
}

AsymptoticCoefficients rosen_morse_coefficients(Complex kp, Complex km, Complex gamma) {
  const Complex ikp = kI * kp;
  const Complex ikm = kI * km;
  AsymptoticCoefficients c{};
  c.u1_plus = 1.0;
  c.v2_plus = 1.0;
  c.u1_minus = gamma_ratio({1.0 - ikp, -ikm},
                           {0.5 - 0.5 * ikp - 0.5 * ikm - gamma, 0.5 - 0.5 * ikp - 0.5 * ikm + gamma});
  c.u2_minus = gamma_ratio({1.0 - ikp, ikm},
                           {0.5 - 0.5 * ikp + 0.5 * ikm + gamma, 0.5 - 0.5 * ikp + 0.5 * ikm - gamma});
  c.v1_minus = gamma_ratio({1.0 + ikp, -ikm},
                           {0.5 + 0.5 * ikp - 0.5 * ikm - gamma, 0.5 + 0.5 * ikp - 0.5 * ikm + gamma});
  c.v2_minus = gamma_ratio({1.0 + ikp, ikm},
                           {0.5 + 0.5 * ikp + 0.5 * ikm + gamma, 0.5 + 0.5 * ikp + 0.5 * ikm - gamma});
  return c;
}

Complex morse_scattering_gamma(const MorseScatteringParams& params) {
  const double c = std::cos(params.mu);
  return sqrt_principal(Complex(0.25 + params.v * c * c, 0.0));
}

AsymptoticCoefficients morse_scattering_coefficients(const MorseScatteringParams& params,
                                                     double eps) {
  const EffectiveCoefficient q = morse_scattering_q(params, eps);
  return rosen_morse_coefficients(sqrt_principal(q.k_plus_sq), sqrt_principal(q.k_minus_sq),
                                  morse_scattering_gamma(params));
}

GammaRatios morse_scattering_ratios(const MorseScatteringParams& params, double eps) {
  const AsymptoticCoefficients c = morse_scattering_coefficients(params, eps);
  return {c.u2_minus, c.u1_minus, c.v2_minus, c.v1_minus};
}

ScatteringAmplitudes morse_scattering_amplitudes(const MorseScatteringParams& params,
                                                 double eps) {
  const EffectiveCoefficient q = morse_scattering_q(params, eps);
  const Complex kp = sqrt_principal(q.k_plus_sq);
  const Complex km = sqrt_principal(q.k_minus_sq);
  try {
    return from_jost(rosen_morse_coefficients(kp, km, morse_scattering_gamma(params)), km, kp);
  } catch (const PoleError&) {
    return pole_amplitudes(km, kp);
  }
}

Complex morse_scattering_jost(const MorseScatteringParams& params, double eps, double z) {
  const EffectiveCoefficient q = morse_scattering_q(params, eps);
  const Complex kp = sqrt_principal(q.k_plus_sq);
  const Complex km = sqrt_principal(q.k_minus_sq);
  const Complex gamma = morse_scattering_gamma(params);
  const Complex p = -0.5 * kI * kp;
  const Complex s = -0.5 * kI * km;
  // log y and log(1 - y) for y = 1/(1 + e^{2z}), without overflow.
  double log_y = 0.0;
  double log_1my = 0.0;
  if (z >= 0.0) {
    const double l = std::log1p(std::exp(-2.0 * z));
    log_y = -2.0 * z - l;
    log_1my = -l;
  } else {
    const double l = std::log1p(std::exp(2.0 * z));
    log_y = -l;
    log_1my = 2.0 * z - l;
  }
  const Complex a = p + s + 0.5 + gamma;
  const Complex b = p + s + 0.5 - gamma;
  const Complex c = 1.0 + 2.0 * p;
  const Complex f = z >= 0.0 ? specfun::hyp2f1(a, b, c, std::exp(log_y))
                             : specfun::hyp2f1_complement(a, b, c, std::exp(log_1my));
  return std::exp(p * log_y + s * log_1my) * f;
}

Complex morse_penetrating_gamma(const MorsePenetratingParams& params) {
  const double ch = std::cosh(params.mu);
  return sqrt_principal(Complex(0.25 - params.v * ch * ch, 0.0));
}

GammaRatios morse_penetrating_ratios(const MorsePenetratingParams& params, double eps) {
  const EffectiveCoefficient q = morse_penetrating_q(params, eps);
  const AsymptoticCoefficients c =
      rosen_morse_coefficients(sqrt_principal(q.k_plus_sq), sqrt_principal(q.k_minus_sq),
                               morse_penetrating_gamma(params));
  return {c.u1_minus, c.u2_minus, c.v1_minus, c.v2_minus};
}

ScatteringAmplitudes morse_penetrating_amplitudes(const MorsePenetratingParams& params,
                                                  double eps) {
  const EffectiveCoefficient q = morse_penetrating_q(params, eps);
  const Complex kp = sqrt_principal(q.k_plus_sq);
  const Complex km = sqrt_principal(q.k_minus_sq);
  try {
    return from_jost(rosen_morse_coefficients(kp, km, morse_penetrating_gamma(params)), km, kp);
  } catch (const PoleError&) {
    return pole_amplitudes(km, kp);
  }
}

Complex double_delta_denominator(const DoubleDeltaForm& form, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("double_delta: energy must be positive");
  }
  const double k = std::sqrt(eps);
  const Complex ratio = form.lambda / (2.0 * k);
  return 1.0 + ratio * ratio * one_minus_expi(2.0 * k * form.a);
}

ScatteringAmplitudes double_delta_amplitudes(const DoubleDeltaForm& form, double eps) {
  if (!(form.a > 0.0)) {
    throw ParameterError("double_delta: use canonical_double_delta for a <= 0");
  }
  const Complex d = double_delta_denominator(form, eps);
  const double k = std::sqrt(eps);
  const Complex kc{k, 0.0};
  const Complex w = kI * form.lambda / (2.0 * k);
  const Complex prefactor = form.lambda / k * std::sin(k * form.a);
  const Complex num_l = prefactor * (1.0 + w);
  const Complex num_r = prefactor * (w - 1.0);
  ScatteringAmplitudes out{num_l / d, num_r / d, 1.0 / d, 1.0 / d, kc, kc, false};
  if (!(std::abs(d) >= kPoleThreshold)) {
    out.at_pole = true;
    if (d == Complex(0.0)) {
      out.r_l = out.r_r = out.t_l = out.t_r = kInfinite;
    }
  }
  return out;
}

ScatteringAmplitudes double_delta_amplitudes(const DeltaCombParams& params, double eps) {
  const auto form = as_double_delta(params);
  if (!form) {
    throw ParameterError("double_delta: comb is not of the form lambda[delta(x-a/2) - delta(x+a/2)]");
  }
  return double_delta_amplitudes(*form, eps);
}

ScatteringAmplitudes analytic_amplitudes(const PotentialSpec& spec, double eps) {
  return std::visit(
      detail::Overloaded{
          [eps](const MorseScatteringParams& p) { return morse_scattering_amplitudes(p, eps); },
          [eps](const MorsePenetratingParams& p) { return morse_penetrating_amplitudes(p, eps); },
          [eps](const DeltaCombParams& p) {
            validate(p);
            const auto form = as_double_delta(p);
            if (!form) throw DomainError("analytic engine: no closed form for a general delta comb");
            return double_delta_amplitudes(*form, eps);
          },
      },
      spec);
}

double reciprocity_gap(const ScatteringAmplitudes& amps) {
  if (amps.at_pole) throw PoleError("reciprocity_gap: amplitudes at a pole");
  return amps.R_l() - amps.R_r();
}

}  // namespace nonrecip
