#include "nonrecip/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nonrecip/errors.hpp"

namespace nonrecip::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleDistance = 1e-12;
constexpr double kSeriesTolerance = 1e-16;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma for Re z >= 0.5.
Complex lanczos_ln_gamma(Complex z) {
  z -= 1.0;
  Complex sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// Continuous branch of log sin(pi z) on Im z > 0:
//   sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}),  |e^{2 i pi z}| < 1.
// 1 - e^{2 i pi z} is formed from the reduced real part so that it keeps full
// relative accuracy next to the real axis.
Complex log_sin_pi_upper(Complex z) {
  const double frac = z.real() - std::round(z.real());
  const double ur = -2.0 * kPi * z.imag();
  const double ui = 2.0 * kPi * frac;
  const double half = std::sin(0.5 * ui);
  const Complex one_minus_w(-(std::expm1(ur) * std::cos(ui) - 2.0 * half * half),
                            -std::exp(ur) * std::sin(ui));
  return std::log(0.5) + Complex(0.0, 0.5 * kPi) - Complex(0.0, kPi) * z +
         std::log(one_minus_w);
}

bool is_integer_like(Complex z, double tol) {
  return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

Complex series_2f1(Complex a, Complex b, Complex c, double x,
                   std::size_t max_terms) {
  Complex sum = 1.0;
  Complex term = 1.0;
  if (x == 0.0) return sum;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
    sum += term;
    if (term == Complex(0.0) || std::abs(term) < kSeriesTolerance * std::abs(sum)) {
      return sum;
    }
  }
  throw ConvergenceError("hyp2f1: series did not converge after " +
                         std::to_string(max_terms) + " terms");
}

}  // namespace

bool is_gamma_pole(Complex z) {
  return z.real() < 0.5 && is_integer_like(z, kPoleDistance);
}

Complex ln_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("ln_gamma: non-finite argument");
  }
  if (is_gamma_pole(z)) {
    throw PoleError("ln_gamma: argument at a pole of Gamma");
  }
  if (z.real() >= 0.5) return lanczos_ln_gamma(z);
  if (z.imag() < 0.0) return std::conj(ln_gamma(std::conj(z)));

  if (z.imag() == 0.0) {
    const double x = z.real();
    const double frac = x - std::round(x);
    // sin(pi x) = (-1)^round(x) sin(pi frac)
    double s = std::sin(kPi * frac);
    if (std::fmod(std::abs(std::round(x)), 2.0) == 1.0) s = -s;
    const double re = std::log(kPi) - std::log(std::abs(s)) -
                      lanczos_ln_gamma(Complex(1.0 - x, 0.0)).real();
    return {re, s < 0.0 ? kPi : 0.0};
  }

  return std::log(kPi) - log_sin_pi_upper(z) - lanczos_ln_gamma(1.0 - z);
}

Complex gamma_ratio(std::span<const Complex> numerator,
                    std::span<const Complex> denominator) {
  for (const Complex& z : numerator) {
    if (is_gamma_pole(z)) {
      throw PoleError("gamma_ratio: numerator argument at a pole of Gamma");
    }
  }
  for (const Complex& z : denominator) {
    if (is_gamma_pole(z)) return 0.0;
  }
  Complex log_ratio = 0.0;
  for (const Complex& z : numerator) log_ratio += ln_gamma(z);
  for (const Complex& z : denominator) log_ratio -= ln_gamma(z);
  return std::exp(log_ratio);
}

Complex gamma_ratio(std::initializer_list<Complex> numerator,
                    std::initializer_list<Complex> denominator) {
  return gamma_ratio(std::span<const Complex>(numerator.begin(), numerator.size()),
                     std::span<const Complex>(denominator.begin(), denominator.size()));
}

namespace {

// x -> 1 - x connection formula; y = 1 - x is passed exactly.
Complex connected_2f1(Complex a, Complex b, Complex c, double y, std::size_t max_terms) {
  const Complex s = c - a - b;
  const Complex direct = gamma_ratio({c, s}, {c - a, c - b});
  const Complex crossed = gamma_ratio({c, -s}, {a, b});
  Complex result = direct * series_2f1(a, b, 1.0 - s, y, max_terms);
  if (crossed != Complex(0.0)) {
    result += crossed * std::exp(s * std::log(y)) *
              series_2f1(c - a, c - b, 1.0 + s, y, max_terms);
  }
  return result;
}

void check_c(Complex c) {
  if (is_gamma_pole(c)) {
    throw ParameterError("hyp2f1: c is a non-positive integer");
  }
}

}  // namespace

Complex hyp2f1(Complex a, Complex b, Complex c, double x, std::size_t max_terms) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("hyp2f1: x must lie in [0, 1)");
  }
  check_c(c);
  if (x <= 0.5) return series_2f1(a, b, c, x, max_terms);
  if (is_integer_like(c - a - b, 1e-8)) return series_2f1(a, b, c, x, max_terms);
  return connected_2f1(a, b, c, 1.0 - x, max_terms);
}

Complex hyp2f1_complement(Complex a, Complex b, Complex c, double y, std::size_t max_terms) {
  if (!(y > 0.0 && y <= 1.0)) {
    throw DomainError("hyp2f1_complement: 1 - x must lie in (0, 1]");
  }
  check_c(c);
  if (y >= 0.5 || is_integer_like(c - a - b, 1e-8)) {
    return series_2f1(a, b, c, 1.0 - y, max_terms);
  }
  return connected_2f1(a, b, c, y, max_terms);
}

Complex sqrt_principal(Complex z) {
  if (z.imag() == 0.0 && z.real() < 0.0) {
    return {0.0, std::sqrt(-z.real())};
  }
  return std::sqrt(z);
}

}  // namespace nonrecip::specfun
