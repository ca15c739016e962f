#include "nonrecip/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "nonrecip/errors.hpp"
#include "overloaded.hpp"

namespace nonrecip {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kMinRayCosine = 0.2;
constexpr double kMaxPhasePerStep = 0.1;
constexpr double kPoleThreshold = 1e-13;

struct WaveState {
  Complex psi;
  Complex dpsi;
};

using StatePair = std::array<WaveState, 2>;

// RK4 along the straight segment from -> to; q is sampled once per node and
// shared by both solutions.
void propagate(const EffectiveCoefficient& q, Complex from, Complex to, StatePair& states,
               double step) {
  const double length = std::abs(to - from);
  if (length == 0.0) return;
  const auto n = static_cast<long>(std::ceil(length / step));
  const Complex h = (to - from) / static_cast<double>(n);
  Complex q0 = q(from);
  for (long i = 0; i < n; ++i) {
    const Complex z = from + static_cast<double>(i) * h;
    const Complex qm = q(z + 0.5 * h);
    const Complex q1 = (i + 1 == n) ? q(to) : q(z + h);
    for (WaveState& s : states) {
      const Complex k1p = s.dpsi;
      const Complex k1d = -q0 * s.psi;
      const Complex k2p = s.dpsi + 0.5 * h * k1d;
      const Complex k2d = -qm * (s.psi + 0.5 * h * k1p);
      const Complex k3p = s.dpsi + 0.5 * h * k2d;
      const Complex k3d = -qm * (s.psi + 0.5 * h * k2p);
      const Complex k4p = s.dpsi + h * k3d;
      const Complex k4d = -q1 * (s.psi + h * k3p);
      s.psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      s.dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }
    q0 = q1;
  }
}

// Unit vector e^{-i arg k}; checks that the ray is not too oblique.
Complex ray_direction(Complex k, const char* side) {
  const Complex dir = std::conj(k) / std::abs(k);
  if (!(dir.real() >= kMinRayCosine)) {
    throw DomainError(std::string("integrate_scattering: non-propagating asymptotics at ") +
                      side);
  }
  return dir;
}

ScatteringAmplitudes amplitudes_from(const AsymptoticCoefficients& c, Complex km, Complex kp) {
  const Complex inf{std::numeric_limits<double>::infinity(), 0.0};
  ScatteringAmplitudes out{inf, inf, inf, inf, km, kp, true};
  const double scale = std::max({std::abs(c.u2_minus), std::abs(c.v1_minus),
                                 std::abs(c.v2_minus), 1.0});
  try {
    out.r_l = reflection_from_asymptotics(c, Side::left);
    out.r_r = reflection_from_asymptotics(c, Side::right);
    out.t_l = transmission_from_asymptotics(c, Side::left);
    out.t_r = transmission_from_asymptotics(c, Side::right);
    out.at_pole = !(std::abs(shared_denominator(c)) >= kPoleThreshold * scale);
  } catch (const PoleError&) {
  }
  return out;
}

struct RunOutput {
  AsymptoticCoefficients coefficients;
  ScatteringAmplitudes amplitudes;
};

RunOutput integrate_once(const EffectiveCoefficient& q, double half_width, double step) {
  const Complex kp = specfun::sqrt_principal(q.k_plus_sq);
  const Complex km = specfun::sqrt_principal(q.k_minus_sq);
  if (kp == Complex(0.0) || km == Complex(0.0)) {
    throw DomainError("integrate_scattering: zero asymptotic wavenumber");
  }
  const Complex dir_plus = ray_direction(kp, "+inf");
  const Complex dir_minus = ray_direction(km, "-inf");
  if (!(step * std::max(std::abs(kp), std::abs(km)) < kMaxPhasePerStep)) {
    throw DomainError("integrate_scattering: step too coarse for the asymptotic wavenumber");
  }
  const Complex z_right = half_width / dir_plus.real() * dir_plus;
  const Complex z_left = -half_width / dir_minus.real() * dir_minus;

  const Complex e_right = std::exp(kI * kp * z_right);
  StatePair states{WaveState{e_right, kI * kp * e_right},
                   WaveState{1.0 / e_right, -kI * kp / e_right}};
  propagate(q, z_right, 0.0, states, step);
  propagate(q, 0.0, z_left, states, step);

  const Complex ik = kI * km;
  const Complex phase = std::exp(ik * z_left);
  const auto incoming = [&](const WaveState& s) {
    return (s.dpsi + ik * s.psi) / (2.0 * ik) / phase;
  };
  const auto outgoing = [&](const WaveState& s) {
    return (ik * s.psi - s.dpsi) / (2.0 * ik) * phase;
  };
  AsymptoticCoefficients c{};
  c.u1_plus = 1.0;
  c.v2_plus = 1.0;
  c.u1_minus = incoming(states[0]);
  c.u2_minus = outgoing(states[0]);
  c.v1_minus = incoming(states[1]);
  c.v2_minus = outgoing(states[1]);
  return {c, amplitudes_from(c, km, kp)};
}

double amplitude_change(const ScatteringAmplitudes& a, const ScatteringAmplitudes& b) {
  const std::array<Complex, 4> x{a.r_l, a.r_r, a.t_l, a.t_r};
  const std::array<Complex, 4> y{b.r_l, b.r_r, b.t_l, b.t_r};
  double diff = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    diff = std::max(diff, std::abs(x[i] - y[i]));
    scale = std::max(scale, std::abs(x[i]));
  }
  return diff / scale;
}

}  // namespace

OracleResult integrate_scattering(const EffectiveCoefficient& q, const IntegrationConfig& cfg) {
  if (!(cfg.half_width > 0.0) || !(cfg.step > 0.0)) {
    throw ParameterError("integrate_scattering: L and step must be positive");
  }
  const RunOutput base = integrate_once(q, cfg.half_width, cfg.step);
  OracleResult out{base.amplitudes, base.coefficients, 0.0};
  if (cfg.estimate_error && !base.amplitudes.at_pole) {
    const RunOutput wide = integrate_once(q, 1.25 * cfg.half_width, cfg.step);
    out.estimated_truncation_error = amplitude_change(base.amplitudes, wide.amplitudes);
  }
  return out;
}

OracleResult delta_matching(const DeltaCombParams& params, double eps) {
  validate(params);
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("delta_matching: energy must be positive");
  }
  const double k = std::sqrt(eps);
  const Complex kc{k, 0.0};
  const std::size_t n = params.sites.size();
  const auto dim = static_cast<Eigen::Index>(2 * (n + 1));
  // Unknowns: A_j, B_j of psi_j = A_j e^{ikx} + B_j e^{-ikx} in region j.
  const auto a_col = [](std::size_t j) { return static_cast<Eigen::Index>(2 * j); };
  const auto b_col = [](std::size_t j) { return static_cast<Eigen::Index>(2 * j + 1); };

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t s = 0; s < n; ++s) {
    const double x = params.sites[s].position;
    const Complex lambda = params.sites[s].strength;
    const Complex ep = std::exp(kI * k * x);
    const Complex em = 1.0 / ep;
    const auto row = static_cast<Eigen::Index>(2 * s);
    m(row, a_col(s)) = ep;
    m(row, b_col(s)) = em;
    m(row, a_col(s + 1)) = -ep;
    m(row, b_col(s + 1)) = -em;
    m(row + 1, a_col(s)) = -kI * k * ep;
    m(row + 1, b_col(s)) = kI * k * em;
    m(row + 1, a_col(s + 1)) = kI * k * ep - lambda * ep;
    m(row + 1, b_col(s + 1)) = -kI * k * em - lambda * em;
  }
  const Eigen::Index left_row = dim - 2;
  const Eigen::Index right_row = dim - 1;
  m(left_row, a_col(0)) = 1.0;
  m(right_row, b_col(n)) = 1.0;

  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(dim, 2);
  rhs(left_row, 0) = 1.0;   // left incidence: A_0 = 1, B_n = 0
  rhs(right_row, 1) = 1.0;  // right incidence: A_0 = 0, B_n = 1

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const Eigen::MatrixXcd sol = lu.solve(rhs);
  ScatteringAmplitudes amps{sol(b_col(0), 0), sol(a_col(n), 1), sol(a_col(n), 0),
                            sol(b_col(0), 1), kc,                kc,
                            false};
  const double rcond = lu.rcond();
  if (!(rcond >= kPoleThreshold) || !std::isfinite(std::abs(amps.r_l)) ||
      !std::isfinite(std::abs(amps.r_r))) {
    amps.at_pole = true;
  }
  return {amps, std::nullopt, 0.0};
}

OracleResult oracle_amplitudes(const PotentialSpec& spec, double eps,
                               const IntegrationConfig& cfg) {
  return std::visit(
      detail::Overloaded{
          [&](const MorseScatteringParams& p) {
            return integrate_scattering(morse_scattering_q(p, eps), cfg);
          },
          [&](const MorsePenetratingParams& p) {
            return integrate_scattering(morse_penetrating_q(p, eps), cfg);
          },
          [&](const DeltaCombParams& p) { return delta_matching(p, eps); },
      },
      spec);
}

}  // namespace nonrecip
