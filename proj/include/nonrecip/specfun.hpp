#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace nonrecip {

using Complex = std::complex<double>;

namespace specfun {

/// True when z lies within 1e-12 of a non-positive integer.
bool is_gamma_pole(Complex z);

/// Principal-branch log Gamma (analytic continuation of the real lgamma,
/// cut along the negative real axis). Lanczos g = 7, nine coefficients, with
/// the reflection formula for Re z < 0.5.
///
/// On the negative real axis the imaginary part is 0 or pi according to the
/// sign of Gamma(x). Throws PoleError at the poles of Gamma.
Complex ln_gamma(Complex z);

/// prod Gamma(numerator) / prod Gamma(denominator), evaluated in log space.
/// A denominator argument at a pole makes the ratio exactly zero; a numerator
/// argument at a pole throws PoleError.
Complex gamma_ratio(std::span<const Complex> numerator,
                    std::span<const Complex> denominator);
Complex gamma_ratio(std::initializer_list<Complex> numerator,
                    std::initializer_list<Complex> denominator);

/// Gauss hypergeometric 2F1(a, b; c; x) for real x in [0, 1).
///
/// Direct power series for x <= 0.5. Above that the x -> 1 - x connection
/// formula is used, except when c - a - b is (numerically) an integer, where
/// the direct series is summed instead. Throws ConvergenceError when the series
/// has not converged after max_terms terms.
Complex hyp2f1(Complex a, Complex b, Complex c, double x,
               std::size_t max_terms = 10000);

/// 2F1(a, b; c; 1 - y) for y in (0, 1], taking the complement y itself so
/// that arguments within rounding of 1 keep full relative accuracy.
Complex hyp2f1_complement(Complex a, Complex b, Complex c, double y,
                          std::size_t max_terms = 10000);

/// Principal square root with arg(result) in (-pi/2, pi/2]. A negative real
/// input with a signed-zero imaginary part maps to +i sqrt(|z|) regardless of
/// the zero's sign.
Complex sqrt_principal(Complex z);

}  // namespace specfun
}  // namespace nonrecip
