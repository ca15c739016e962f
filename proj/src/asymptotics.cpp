#include "nonrecip/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "nonrecip/errors.hpp"

namespace nonrecip {
namespace {

constexpr double kUnderflowGuard = 1e-300;

Complex checked_denominator(const AsymptoticCoefficients& c) {
  const Complex d = shared_denominator(c);
  if (!(std::abs(d) >= kUnderflowGuard)) {
    throw PoleError("asymptotic coefficients: vanishing shared denominator");
  }
  return d;
}

Complex left_numerator(const AsymptoticCoefficients& c) {
  return c.u2_plus * c.v2_minus - c.v2_plus * c.u2_minus;
}

Complex right_numerator(const AsymptoticCoefficients& c) {
  return c.v1_minus * c.u1_plus - c.u1_minus * c.v1_plus;
}

}  // namespace

Complex shared_denominator(const AsymptoticCoefficients& c) {
  return -c.v2_plus * c.u1_minus + c.u2_plus * c.v1_minus;
}

Complex reflection_from_asymptotics(const AsymptoticCoefficients& c, Side side) {
  const Complex d = checked_denominator(c);
  return (side == Side::left ? left_numerator(c) : right_numerator(c)) / d;
}

Complex transmission_from_asymptotics(const AsymptoticCoefficients& c, Side side) {
  const Complex d = checked_denominator(c);
  if (side == Side::left) return (c.u2_plus * c.v1_plus - c.v2_plus * c.u1_plus) / d;
  return (c.v1_minus * c.u2_minus - c.u1_minus * c.v2_minus) / d;
}

bool reciprocity_condition_holds(const AsymptoticCoefficients& c, double tol) {
  const double l = std::abs(left_numerator(c));
  const double r = std::abs(right_numerator(c));
  return std::abs(l - r) <= tol * std::max(l, r);
}

}  // namespace nonrecip
