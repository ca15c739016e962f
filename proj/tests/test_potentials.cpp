#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonrecip/errors.hpp"
#include "nonrecip/potential_json.hpp"
#include "nonrecip/potentials.hpp"

using namespace nonrecip;

TEST_CASE("morse scattering q is PT symmetric on the real z line") {
  const MorseScatteringParams p{1.9, std::numbers::pi / 5};
  const EffectiveCoefficient q = morse_scattering_q(p, 2.0);
  for (double z : {0.0, 0.3, 1.7, 4.0, 12.0}) {
    CHECK(std::abs(std::conj(q(-z)) - q(z)) < 1e-14);
  }
  CHECK(std::abs(q(40.0) - q.k_plus_sq) < 1e-14);
  CHECK(std::abs(q(-40.0) - q.k_minus_sq) < 1e-14);
}

TEST_CASE("morse scattering asymptotic wavenumbers") {
  const double v = 1.9, mu = std::numbers::pi / 10, eps = 3.0;
  const EffectiveCoefficient q = morse_scattering_q({v, mu}, eps);
  CHECK(std::abs(q.k_plus_sq - (eps - v * std::exp(Complex(0.0, 2.0 * mu)))) < 1e-14);
  CHECK(std::abs(q.k_minus_sq - (eps - v * std::exp(Complex(0.0, -2.0 * mu)))) < 1e-14);
  CHECK(std::abs(q.k_plus_sq - q.k_minus_sq - Complex(0.0, -2.0 * v * std::sin(2.0 * mu))) < 1e-14);
  // At z = 0 only the sech^2 term survives besides the constant.
  CHECK(std::abs(q(0.0) - (eps - v * std::cos(2.0 * mu) + v * std::pow(std::cos(mu), 2))) < 1e-14);
}

TEST_CASE("morse penetrating q is real with real asymptotics") {
  const MorsePenetratingParams p{1.0, 0.4};
  const double eps = 0.5;
  const EffectiveCoefficient q = morse_penetrating_q(p, eps);
  for (double z : {-5.0, -0.2, 0.0, 0.9, 6.0}) CHECK(std::abs(q(z).imag()) < 1e-15);
  CHECK(std::abs(q.k_plus_sq - (eps + std::exp(0.8))) < 1e-14);
  CHECK(std::abs(q.k_minus_sq - (eps + std::exp(-0.8))) < 1e-14);
  CHECK(std::abs(q.k_plus_sq - q.k_minus_sq - 2.0 * std::sinh(0.8)) < 1e-14);
  CHECK(std::abs(q(0.0) - (eps + std::cosh(0.8) - std::pow(std::cosh(0.4), 2))) < 1e-14);
  CHECK(std::abs(q(40.0) - q.k_plus_sq) < 1e-13);
}

TEST_CASE("morse penetrating window") {
  const MorsePenetratingParams p{2.0, 0.3};
  CHECK(penetrating_threshold(p) == doctest::Approx(-2.0 * std::exp(-0.6)));
  CHECK_THROWS_AS(morse_penetrating_q(p, -2.0), DomainError);
  CHECK_NOTHROW(morse_penetrating_q(p, penetrating_threshold(p) + 1e-6));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate(MorseScatteringParams{1.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(validate(MorseScatteringParams{1.0, std::numbers::pi / 2}), ParameterError);
  CHECK_THROWS_AS(validate(MorsePenetratingParams{-1.0, 0.3}), ParameterError);
  CHECK_THROWS_AS(validate(MorsePenetratingParams{1.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(validate(DeltaCombParams{}), ParameterError);
  CHECK_THROWS_AS(validate(DeltaCombParams{{{1.0, 1.0}, {0.0, 1.0}}}), ParameterError);
  CHECK_THROWS_AS(make_double_delta(1.0, 0.0), ParameterError);
}

TEST_CASE("double delta construction and recognition") {
  const DeltaCombParams comb = make_double_delta(Complex(3.0, 2.0), 1.0);
  REQUIRE(comb.sites.size() == 2);
  CHECK(comb.sites[0].position == -0.5);
  CHECK(comb.sites[0].strength == Complex(-3.0, -2.0));
  CHECK(comb.sites[1].strength == Complex(3.0, 2.0));
  CHECK(model_name(comb) == "double_delta");

  // a < 0 is the same potential as (|a|, -lambda).
  const DeltaCombParams flipped = make_double_delta(Complex(-6.1, 2.01), -1.0);
  const auto form = as_double_delta(flipped);
  REQUIRE(form);
  CHECK(form->a == 1.0);
  CHECK(form->lambda == Complex(6.1, -2.01));
  const DoubleDeltaForm canon = canonical_double_delta(Complex(-6.1, 2.01), -1.0);
  CHECK(canon.a == 1.0);
  CHECK(canon.lambda == form->lambda);

  const DeltaCombParams symmetric{{{-0.5, 1.0}, {0.5, 1.0}}};
  CHECK_FALSE(as_double_delta(symmetric));
  CHECK(model_name(symmetric) == "delta_comb");
}

TEST_CASE("asymptotic wavenumbers of delta combs") {
  const auto k = asymptotic_wavenumbers(make_double_delta(Complex(0.0, 20.0), 1.0), 4.0);
  CHECK(k.k_minus == Complex(2.0));
  CHECK(k.k_plus == Complex(2.0));
  CHECK_THROWS_AS(asymptotic_wavenumbers(make_double_delta(1.0, 1.0), 0.0), DomainError);
}

TEST_CASE("potential json round trip") {
  const PotentialSpec specs[] = {
      MorseScatteringParams{1.9, 0.6},
      MorsePenetratingParams{0.5, 0.3},
      make_double_delta(Complex(-6.1, 2.01), -1.0),
      DeltaCombParams{{{-0.5, 1.0}, {0.5, Complex(2.0, -0.25)}, {1.5, Complex(0.0, 1.0)}}},
  };
  for (const PotentialSpec& spec : specs) {
    const nlohmann::json j = potential_to_json(spec);
    const PotentialSpec back = potential_from_json(nlohmann::json::parse(j.dump()));
    CHECK(potential_to_json(back) == j);
    CHECK(model_name(back) == model_name(spec));
  }
}

TEST_CASE("potential json input forms") {
  const auto spec = potential_from_json(
      nlohmann::json::parse(R"({"model": "double_delta", "lambda": {"im": 20}, "a": 1})"));
  const auto form = as_double_delta(std::get<DeltaCombParams>(spec));
  REQUIRE(form);
  CHECK(form->lambda == Complex(0.0, 20.0));
  CHECK(complex_from_json(nlohmann::json(2.5)) == Complex(2.5));
  CHECK_THROWS_AS(potential_from_json(nlohmann::json::parse(R"({"model": "square"})")),
                  ParameterError);
  CHECK_THROWS_AS(potential_from_json(nlohmann::json::parse(R"({"model": "morse_scattering", "v": 1})")),
                  ParameterError);
  CHECK_THROWS_AS(
      potential_from_json(nlohmann::json::parse(R"({"model": "morse_scattering", "v": 1, "mu": 3})")),
      ParameterError);
}
