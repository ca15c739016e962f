#include "nonrecip/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nonrecip/errors.hpp"
#include "overloaded.hpp"

namespace nonrecip {
namespace {

using detail::Overloaded;

struct TanhSech2 {
  Complex tanh;
  Complex sech2;
};

// Both from a single exponential that never overflows.
TanhSech2 tanh_sech2(Complex z) {
  if (z.real() >= 0.0) {
    const Complex e = std::exp(-2.0 * z);
    const Complex d = 1.0 + e;
    return {(1.0 - e) / d, 4.0 * e / (d * d)};
  }
  const Complex e = std::exp(2.0 * z);
  const Complex d = 1.0 + e;
  return {-(1.0 - e) / d, 4.0 * e / (d * d)};
}

// q = base + slope tanh z + well sech^2 z
EffectiveCoefficient tanh_sech2_q(Complex base, Complex slope, Complex well) {
  EffectiveCoefficient out;
  out.q = [base, slope, well](Complex z) {
    const auto [th, s2] = tanh_sech2(z);
    return base + slope * th + well * s2;
  };
  out.k_minus_sq = base - slope;
  out.k_plus_sq = base + slope;
  return out;
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void validate(const MorseScatteringParams& params) {
  if (!std::isfinite(params.v)) throw ParameterError("morse_scattering: v must be finite");
  if (!(params.mu > 0.0 && params.mu < 0.5 * std::numbers::pi)) {
    throw ParameterError("morse_scattering: mu must lie in (0, pi/2)");
  }
}

void validate(const MorsePenetratingParams& params) {
  if (!(std::isfinite(params.v) && params.v > 0.0)) {
    throw ParameterError("morse_penetrating: v must be positive");
  }
  if (!(std::isfinite(params.mu) && params.mu > 0.0)) {
    throw ParameterError("morse_penetrating: mu must be positive");
  }
}

void validate(const DeltaCombParams& params) {
  if (params.sites.empty()) throw ParameterError("delta_comb: no sites");
  for (std::size_t i = 0; i < params.sites.size(); ++i) {
    const DeltaSite& s = params.sites[i];
    if (!std::isfinite(s.position) || !is_finite(s.strength)) {
      throw ParameterError("delta_comb: non-finite site");
    }
    if (i > 0 && !(params.sites[i - 1].position < s.position)) {
      throw ParameterError("delta_comb: positions must be strictly increasing");
    }
  }
}

void validate(const PotentialSpec& spec) {
  std::visit([](const auto& p) { validate(p); }, spec);
}

std::string model_name(const PotentialSpec& spec) {
  return std::visit(Overloaded{
                        [](const MorseScatteringParams&) { return std::string("morse_scattering"); },
                        [](const MorsePenetratingParams&) { return std::string("morse_penetrating"); },
                        [](const DeltaCombParams& p) {
                          return std::string(as_double_delta(p) ? "double_delta" : "delta_comb");
                        },
                    },
                    spec);
}

DeltaCombParams make_double_delta(Complex lambda, double a) {
  if (a == 0.0 || !std::isfinite(a)) {
    throw ParameterError("double_delta: separation a must be finite and non-zero");
  }
  DeltaCombParams out{{{-0.5 * a, -lambda}, {0.5 * a, lambda}}};
  std::sort(out.sites.begin(), out.sites.end(),
            [](const DeltaSite& l, const DeltaSite& r) { return l.position < r.position; });
  validate(out);
  return out;
}

DoubleDeltaForm canonical_double_delta(Complex lambda, double a) {
  if (a == 0.0 || !std::isfinite(a)) {
    throw ParameterError("double_delta: separation a must be finite and non-zero");
  }
  if (a < 0.0) return {-lambda, -a};
  return {lambda, a};
}

std::optional<DoubleDeltaForm> as_double_delta(const DeltaCombParams& params) {
  if (params.sites.size() != 2) return std::nullopt;
  const DeltaSite& left = params.sites[0];
  const DeltaSite& right = params.sites[1];
  if (left.position != -right.position || !(right.position > 0.0)) return std::nullopt;
  if (left.strength != -right.strength) return std::nullopt;
  return DoubleDeltaForm{right.strength, 2.0 * right.position};
}

double penetrating_threshold(const MorsePenetratingParams& params) {
  return -params.v * std::exp(-2.0 * params.mu);
}

EffectiveCoefficient morse_scattering_q(const MorseScatteringParams& params,
                                        double eps) {
  validate(params);
  if (!std::isfinite(eps)) throw DomainError("morse_scattering: non-finite energy");
  const double v = params.v;
  const double mu = params.mu;
  // cosh 2i mu = cos 2mu, sinh 2i mu = i sin 2mu, cosh^2 i mu = cos^2 mu
  const double c = std::cos(mu);
  return tanh_sech2_q(Complex(eps - v * std::cos(2.0 * mu), 0.0),
                      Complex(0.0, -v * std::sin(2.0 * mu)), Complex(v * c * c, 0.0));
}

EffectiveCoefficient morse_penetrating_q(const MorsePenetratingParams& params,
                                         double eps) {
  validate(params);
  if (!std::isfinite(eps) || !(eps > penetrating_threshold(params))) {
    throw DomainError("morse_penetrating: energy outside the penetrating window");
  }
  const double v = params.v;
  const double mu = params.mu;
  const double ch = std::cosh(mu);
  return tanh_sech2_q(Complex(eps + v * std::cosh(2.0 * mu), 0.0),
                      Complex(v * std::sinh(2.0 * mu), 0.0), Complex(-v * ch * ch, 0.0));
}

EffectiveCoefficient constant_q(Complex k_sq) {
  return {[k_sq](Complex) { return k_sq; }, k_sq, k_sq};
}

AsymptoticWavenumbers asymptotic_wavenumbers(const PotentialSpec& spec, double eps) {
  using specfun::sqrt_principal;
  return std::visit(
      Overloaded{
          [eps](const MorseScatteringParams& p) {
            const auto q = morse_scattering_q(p, eps);
            return AsymptoticWavenumbers{sqrt_principal(q.k_minus_sq), sqrt_principal(q.k_plus_sq)};
          },
          [eps](const MorsePenetratingParams& p) {
            const auto q = morse_penetrating_q(p, eps);
            return AsymptoticWavenumbers{sqrt_principal(q.k_minus_sq), sqrt_principal(q.k_plus_sq)};
          },
          [eps](const DeltaCombParams& p) {
            validate(p);
            if (!(eps > 0.0) || !std::isfinite(eps)) {
              throw DomainError("delta_comb: energy must be positive");
            }
            const Complex k = std::sqrt(eps);
            return AsymptoticWavenumbers{k, k};
          },
      },
      spec);
}

}  // namespace nonrecip
