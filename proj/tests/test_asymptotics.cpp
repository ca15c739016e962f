#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nonrecip/asymptotics.hpp"
#include "nonrecip/errors.hpp"

using namespace nonrecip;

TEST_CASE("free particle coefficients give no reflection") {
  // U = e^{ikz}, V = e^{-ikz} everywhere.
  const AsymptoticCoefficients c{1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0};
  CHECK(shared_denominator(c) == Complex(-1.0));
  CHECK(reflection_from_asymptotics(c, Side::left) == Complex(0.0));
  CHECK(reflection_from_asymptotics(c, Side::right) == Complex(0.0));
  CHECK(transmission_from_asymptotics(c, Side::left) == Complex(1.0));
  CHECK(transmission_from_asymptotics(c, Side::right) == Complex(1.0));
  CHECK(reciprocity_condition_holds(c, 1e-12));
}

TEST_CASE("Jost-normalised coefficients reduce to the familiar ratios") {
  const Complex a{1.3, 0.4}, b{-0.2, 0.7}, cc{0.5, -1.1}, d{0.9, 0.05};
  // U -> a e^{ikz} + b e^{-ikz}, V -> d e^{ikz} + cc e^{-ikz} on the left.
  const AsymptoticCoefficients c{1.0, 0.0, 0.0, 1.0, a, b, d, cc};
  CHECK(std::abs(reflection_from_asymptotics(c, Side::left) - b / a) < 1e-15);
  CHECK(std::abs(reflection_from_asymptotics(c, Side::right) + d / a) < 1e-15);
  CHECK(std::abs(transmission_from_asymptotics(c, Side::left) - 1.0 / a) < 1e-15);
  CHECK(std::abs(transmission_from_asymptotics(c, Side::right) - (cc - d * b / a)) < 1e-15);
}

TEST_CASE("reciprocity condition compares numerator magnitudes") {
  const AsymptoticCoefficients equal{1.0, 0.0, 0.0, 1.0, 2.0, Complex(0.0, 0.5), 0.5, 1.0};
  CHECK(reciprocity_condition_holds(equal, 1e-12));
  const AsymptoticCoefficients unequal{1.0, 0.0, 0.0, 1.0, 2.0, 0.5, 0.25, 1.0};
  CHECK_FALSE(reciprocity_condition_holds(unequal, 1e-12));
}

TEST_CASE("dependent solutions are a pole") {
  const AsymptoticCoefficients c{1.0, 0.0, 2.0, 0.0, 1.0, 1.0, 2.0, 2.0};
  CHECK(shared_denominator(c) == Complex(0.0));
  CHECK_THROWS_AS(reflection_from_asymptotics(c, Side::left), PoleError);
  CHECK_THROWS_AS(transmission_from_asymptotics(c, Side::right), PoleError);
}
