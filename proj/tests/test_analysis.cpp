#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonrecip/analysis.hpp"
#include "nonrecip/errors.hpp"

using namespace nonrecip;

TEST_CASE("energy grid is half-open") {
  const std::vector<double> g = energy_grid(0.0, 50.0, 200);
  REQUIRE(g.size() == 200);
  CHECK(g.front() == doctest::Approx(0.25));
  CHECK(g.back() == 50.0);
  CHECK_THROWS_AS(energy_grid(1.0, 1.0, 10), ParameterError);
  CHECK_THROWS_AS(energy_grid(0.0, 1.0, 1), ParameterError);
}

TEST_CASE("unitarity defect") {
  const ScatteringAmplitudes hermitian = double_delta_amplitudes(DoubleDeltaForm{2.0, 1.0}, 3.0);
  const UnitarityDefect d = unitarity_defect(hermitian);
  CHECK(std::abs(d.left) < 1e-10);
  CHECK(std::abs(d.right) < 1e-10);
  const ScatteringAmplitudes pen = morse_penetrating_amplitudes({1.0, 0.6}, 2.0);
  CHECK(std::abs(unitarity_defect(pen).left) < 1e-12);
  CHECK(std::abs(raw_unitarity_defect(pen).left) > 1e-3);
}

TEST_CASE("unitarity defect grows near a spectral singularity") {
  const double k0 = 3.0;
  const Complex lambda = 2.0 * k0 / std::sqrt(std::exp(Complex(0.0, 2.0 * k0)) - 1.0);
  const DoubleDeltaForm f{lambda, 1.0};
  const UnitarityDefect near = unitarity_defect(double_delta_amplitudes(f, k0 * k0 + 1e-4));
  const UnitarityDefect far = unitarity_defect(double_delta_amplitudes(f, k0 * k0 + 1.0));
  CHECK(std::abs(near.left) > 1e3 * std::abs(far.left));
  CHECK_THROWS_AS(unitarity_defect(double_delta_amplitudes(f, k0 * k0)), PoleError);
}

TEST_CASE("scan basics") {
  SUBCASE("free double delta") {
    const auto rows = scan(make_double_delta(0.0, 1.0), 0.0, 10.0, 50, Engine::analytic);
    for (const ScanRow& r : rows) {
      CHECK(r.R_l == 0.0);
      CHECK(r.T_l == doctest::Approx(1.0));
    }
  }
  SUBCASE("penetrating gap vanishes") {
    const auto rows = scan(MorsePenetratingParams{1.0, 0.6}, 0.0, 10.0, 200, Engine::analytic);
    for (const ScanRow& r : rows) CHECK(std::abs(r.gap) < 1e-10);
  }
  SUBCASE("rows are ordered and deterministic across thread counts") {
    const PotentialSpec spec = MorseScatteringParams{1.9, std::numbers::pi / 5};
    const auto a = scan(spec, 0.05, 10.0, 300, Engine::analytic);
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].eps < a[i].eps);
    std::vector<double> serial;
    for (double e : energy_grid(0.05, 10.0, 300)) {
      serial.push_back(make_row(e, analytic_amplitudes(spec, e)).gap);
    }
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].gap == serial[i]);
  }
  SUBCASE("pole rows are flagged, not dropped") {
    const double k0 = 3.0;
    const Complex lambda = 2.0 * k0 / std::sqrt(std::exp(Complex(0.0, 2.0 * k0)) - 1.0);
    const auto rows = scan(make_double_delta(lambda, 1.0), 0.0, 18.0, 2, Engine::analytic);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].at_pole);
    CHECK(std::isnan(rows[0].defect_l));
    CHECK_FALSE(rows[1].at_pole);
  }
  SUBCASE("inadmissible windows") {
    CHECK_THROWS_AS(scan(MorsePenetratingParams{1.0, 0.3}, -5.0, 1.0, 10, Engine::analytic),
                    DomainError);
    CHECK_THROWS_AS(scan(make_double_delta(1.0, 1.0), -1.0, 1.0, 10, Engine::analytic),
                    DomainError);
  }
}

TEST_CASE("reciprocity points of the PT Morse model") {
  const MorseScatteringParams a{1.9, std::numbers::pi / 5};
  const MorseScatteringParams b{1.9, std::numbers::pi / 10};
  const ReciprocitySearch ra = find_reciprocity_points(a, 0.05, 10.0, 2000);
  const ReciprocitySearch rb = find_reciprocity_points(b, 0.05, 10.0, 2000);
  CHECK(ra.points.size() == 2);
  CHECK(rb.points.size() == 3);
  for (const auto& [params, search] : {std::pair{a, ra}, std::pair{b, rb}}) {
    for (const SpecialPoint& p : search.points) {
      CAPTURE(p.eps);
      const GammaRatios g = morse_scattering_ratios(params, p.eps);
      CHECK(std::abs(std::abs(g.r1) - std::abs(g.r4)) < 1e-8 * std::abs(g.r1));
      CHECK(p.multiplicity_hint == 1);
    }
  }
}

TEST_CASE("reciprocity search is deterministic") {
  const MorseScatteringParams p{1.9, std::numbers::pi / 10};
  const ReciprocitySearch x = find_reciprocity_points(p, 0.05, 10.0, 500);
  const ReciprocitySearch y = find_reciprocity_points(p, 0.05, 10.0, 500);
  REQUIRE(x.points.size() == y.points.size());
  for (std::size_t i = 0; i < x.points.size(); ++i) CHECK(x.points[i].eps == y.points[i].eps);
}

TEST_CASE("identically reciprocal sentinel") {
  const ReciprocitySearch pen = find_reciprocity_points(MorsePenetratingParams{2.0, 0.3}, 0.0, 10.0, 200);
  CHECK(pen.identically_reciprocal);
  CHECK(pen.points.empty());
  const ReciprocitySearch real = find_reciprocity_points(make_double_delta(2.5, 1.0), 0.0, 50.0, 200);
  CHECK(real.identically_reciprocal);
}

TEST_CASE("double delta: reflectionless points are touching reciprocity points") {
  const PotentialSpec spec = make_double_delta(Complex(0.0, 20.0), 1.0);
  const auto refl = find_reflectionless_points(spec, 0.0, 50.0);
  REQUIRE(refl.size() == 2);
  CHECK(refl[0].eps == doctest::Approx(std::pow(std::numbers::pi, 2)));
  CHECK(refl[1].eps == doctest::Approx(4.0 * std::pow(std::numbers::pi, 2)));
  CHECK(find_reflectionless_points(spec, 0.0, 5.0).empty());

  const ReciprocitySearch recip = find_reciprocity_points(spec, 0.0, 50.0, 2000);
  CHECK_FALSE(recip.identically_reciprocal);
  REQUIRE(recip.points.size() == refl.size());
  for (std::size_t i = 0; i < refl.size(); ++i) {
    CHECK(recip.points[i].eps == doctest::Approx(refl[i].eps).epsilon(1e-7));
    CHECK(recip.points[i].multiplicity_hint == 2);
  }
  CHECK_THROWS_AS(find_reflectionless_points(MorseScatteringParams{1.9, 0.6}, 0.0, 5.0),
                  ParameterError);
}

TEST_CASE("spectral singularity finder") {
  SUBCASE("tuned lambda") {
    const double k0 = 3.0;
    const Complex lambda = 2.0 * k0 / std::sqrt(std::exp(Complex(0.0, 2.0 * k0)) - 1.0);
    const auto ss = find_spectral_singularities(make_double_delta(lambda, 1.0), 0.0, 50.0);
    REQUIRE(ss.size() == 1);
    CHECK(ss[0].eps == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(ss[0].residual < 1e-8);
  }
  SUBCASE("real lambda has none") {
    CHECK(find_spectral_singularities(make_double_delta(4.0, 1.0), 0.0, 50.0).empty());
  }
}

TEST_CASE("checked search agrees across engines") {
  const CheckedReciprocitySearch c =
      find_reciprocity_points_checked(MorseScatteringParams{1.9, std::numbers::pi / 5}, 0.05, 10.0, 200);
  CHECK(c.counts_agree);
  CHECK(c.analytic.points.size() == 2);
  REQUIRE(c.oracle.points.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(c.oracle.points[i].eps == doctest::Approx(c.analytic.points[i].eps).epsilon(1e-6));
  }
}

TEST_CASE("amplitude disagreement") {
  ScatteringAmplitudes a{1.0, 0.0, 2.0, 2.0, 1.0, 1.0, false};
  ScatteringAmplitudes b{1.0 + 1e-9, 1e-20, 2.0, 2.0, 1.0, 1.0, false};
  const auto d = amplitude_disagreement(a, b);
  CHECK(d[0] == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK(d[1] < 1e-11);
  CHECK(d[2] == 0.0);
}
