#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bures/closed_forms.hpp"
#include "bures/error.hpp"
#include "bures/metric.hpp"

using namespace bures;
using std::numbers::pi;

namespace {

const double kTheta1Max = std::acos(1.0 / std::sqrt(3.0));

AngleVector at_spectrum(double theta1, double theta2, std::uint64_t seed = 4) {
  AngleVector x = sample_interior(seed);
  x.theta1 = theta1;
  x.theta2 = theta2;
  return x;
}

}  // namespace

TEST_CASE("element ids") {
  CHECK(kAllElements.size() == 15);
  for (ElementId id : kAllElements) CHECK(parse_element(element_name(id)) == id);
  CHECK(element_position(ElementId::g13) == std::pair{Coordinate::alpha, Coordinate::a});
  CHECK(element_position(ElementId::g24) == std::pair{Coordinate::gamma, Coordinate::beta});
  CHECK(element_position(ElementId::g88) == std::pair{Coordinate::theta2, Coordinate::theta2});
  CHECK_THROWS_AS(parse_element("g99"), RangeError);
}

TEST_CASE("auxiliaries") {
  const AuxiliaryBundle corner = auxiliaries(at_spectrum(kTheta1Max, pi / 4 - 1e-9));
  CHECK(std::abs(auxiliaries(at_spectrum(kTheta1Max, pi / 4)).t) < 1e-14);
  CHECK_FALSE(auxiliaries(at_spectrum(0.5, pi / 4)).upsilon.has_value());
  CHECK(std::isfinite(corner.kappa));

  for (double t1 : {0.0, 0.3, 0.7}) {
    const AuxiliaryBundle a = auxiliaries(at_spectrum(t1, 0.0));
    CHECK(a.u_plus == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(a.u_minus == doctest::Approx(2.0 + 2.0 * std::cos(2 * t1)).epsilon(1e-14));
    CHECK(a.t == doctest::Approx(8.0 * std::cos(2 * t1)).epsilon(1e-14));
  }
  CHECK(auxiliaries(at_spectrum(0.0, 0.4)).kappa == doctest::Approx(64.0).epsilon(1e-14));
  CHECK(std::isnan(auxiliaries(at_spectrum(0.0, 0.4)).zeta));

  AngleVector bad = at_spectrum(0.5, 0.3);
  bad.gamma = 4.0;
  CHECK_THROWS_AS(auxiliaries(bad), RangeError);
}

TEST_CASE("g55 and simple elements") {
  for (double t1 : {0.1, 0.4, 0.9}) {
    const double c = std::cos(2 * t1);
    CHECK(closed_element_real(ElementId::g55, at_spectrum(t1, 0.0)) ==
          doctest::Approx(c * c).epsilon(1e-14));
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    AngleVector x = sample_interior(s);
    const double g55 = closed_element_real(ElementId::g55, x);
    const double s2b = std::sin(2 * x.b);
    CHECK(closed_element_real(ElementId::g33, x) == doctest::Approx(g55 * s2b * s2b).epsilon(1e-13));
    CHECK(closed_element_real(ElementId::g77, x) == 1.0);
    const double s1 = std::sin(x.theta1);
    CHECK(closed_element_real(ElementId::g88, x) == s1 * s1);
    x.theta = pi / 2;
    CHECK(std::abs(closed_element_real(ElementId::g45, x)) < 1e-15);
  }
}

TEST_CASE("closed forms vs eigen engine") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const AngleVector x = sample_interior(sample_seed(3, s));
    const MetricTensor g = metric_tensor(x, EngineKind::eigen);
    for (ElementId id : kAllElements) {
      if (id == ElementId::g22 && std::abs(x.theta2 - pi / 4) < 1e-3) continue;
      const auto [i, j] = element_position(id);
      const double corrected = closed_element_real(id, x, Reading::corrected);
      CHECK_MESSAGE(std::abs(corrected - g(i, j)) < 1e-8, element_name(id));
      if (id != ElementId::g22 && id != ElementId::g44) {
        CHECK(closed_element_real(id, x, Reading::printed) == corrected);
      }
    }
    // g24 is complex as printed but real to roundoff
    const std::complex<double> z = closed_element(ElementId::g24, x);
    CHECK(std::abs(z.imag()) < 1e-12);
  }
}

TEST_CASE("printed g22 and g44 disagree with the engine") {
  // Known misprint: the printed forms carry g55 where 4 g55 is needed.
  double worst22 = 0.0, worst44 = 0.0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const AngleVector x = sample_interior(sample_seed(5, s));
    if (std::abs(x.theta2 - pi / 4) < 1e-3) continue;
    const MetricTensor g = metric_tensor(x, EngineKind::eigen);
    worst22 = std::max(worst22, std::abs(closed_element_real(ElementId::g22, x) -
                                         g(Coordinate::gamma, Coordinate::gamma)));
    worst44 = std::max(worst44, std::abs(closed_element_real(ElementId::g44, x) -
                                         g(Coordinate::beta, Coordinate::beta)));
  }
  CHECK(worst22 > 1e-3);
  CHECK(worst44 > 1e-3);
}

TEST_CASE("g22 upsilon pole") {
  CHECK_THROWS_AS(closed_element(ElementId::g22, at_spectrum(0.5, pi / 4)), DomainError);
  CHECK_NOTHROW(closed_element(ElementId::g55, at_spectrum(0.5, pi / 4)));
  const double near = closed_element_real(ElementId::g22, at_spectrum(0.5, pi / 4 - 1e-5), Reading::corrected);
  const double engine = metric_tensor(at_spectrum(0.5, pi / 4), EngineKind::eigen)(Coordinate::gamma, Coordinate::gamma);
  CHECK(std::abs(near - engine) < 1e-4);
}

TEST_CASE("figure grid") {
  const auto grid = figure_grid(FigureQuantity::g55, 50, 50);
  REQUIRE(grid.size() == 2500);
  CHECK(grid.front().theta1 == 0.0);
  CHECK(grid.front().theta2 == 0.0);
  CHECK(grid.front().value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(grid.back().theta1 == coordinate_range(Coordinate::theta1).hi);
  CHECK(grid.back().theta2 == coordinate_range(Coordinate::theta2).hi);
  CHECK(std::abs(grid.back().value) < 1e-12);
  CHECK(grid[50].theta1 > 0.0);  // theta1 varies slowest
  CHECK(grid[1].theta1 == 0.0);

  const auto v = figure_grid(FigureQuantity::v_over_32u_minus, 5, 7);
  CHECK(v.size() == 35);
  CHECK(parse_figure("g55") == FigureQuantity::g55);
  CHECK(parse_figure("v_over_32u_minus") == FigureQuantity::v_over_32u_minus);
  CHECK_THROWS_AS(parse_figure("g99"), RangeError);
  CHECK_THROWS_AS(figure_grid(FigureQuantity::g55, 1, 5), RangeError);
}

TEST_CASE("theta2 from g55") {
  SUBCASE("round trip") {
    const double target = g55_of(0.8, 0.5);
    const auto roots = theta2_roots_from_g55(target, 0.8);
    bool found = false;
    for (double r : roots) found = found || std::abs(r - 0.5) < 1e-10;
    CHECK(found);
    for (double r : roots) CHECK(std::abs(g55_of(0.8, r) - target) < 1e-12);
  }

  SUBCASE("boundary root") {
    for (double t1 : {0.3, 0.8}) {
      CHECK(theta2_from_g55(g55_of(t1, 0.0), t1) == 0.0);
    }
  }

  SUBCASE("monotone slice has one root") {
    for (double t2 : {0.1, 0.4, 0.7}) {
      const auto roots = theta2_roots_from_g55(g55_of(0.4, t2), 0.4);
      REQUIRE(roots.size() == 1);
      CHECK(roots[0] == doctest::Approx(t2).epsilon(1e-10));
    }
  }

  SUBCASE("unachievable target") {
    const Theta2Interval range = g55_slice_range(0.4);
    CHECK_THROWS_AS(theta2_from_g55(10.0 * range.hi, 0.4), DomainError);
    CHECK_THROWS_AS(theta2_from_g55(-1.0, 0.4), DomainError);
    CHECK_THROWS_AS(theta2_from_g55(0.5, 1.2), RangeError);
  }

  SUBCASE("printed inversion is undefined at ordinary points") {
    CHECK(std::isnan(theta2_inversion_as_printed(g55_of(0.5, 0.3), 0.5, 0.3)));
  }
}

TEST_CASE("reductions") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    AngleVector x = sample_interior(sample_seed(9, s));
    x.beta = 0.0;
    x.b = 0.0;
    const MetricTensor g = metric_tensor(x, EngineKind::eigen);
    const ReducedElements r = reduced_elements(x, ReductionSlice::beta_b_zero, Reading::corrected);
    CHECK(std::abs(g(Coordinate::alpha, Coordinate::alpha) - r.g11_g12) < 1e-10);
    CHECK(std::abs(g(Coordinate::alpha, Coordinate::gamma) - r.g11_g12) < 1e-10);
    CHECK(std::abs(g(Coordinate::alpha, Coordinate::beta)) < 1e-10);
    REQUIRE(r.g14.has_value());
    CHECK(*r.g14 == 0.0);

    AngleVector y = sample_interior(sample_seed(10, s));
    y.beta = 0.0;
    y.theta = 0.0;
    const MetricTensor h = metric_tensor(y, EngineKind::eigen);
    const ReducedElements c = reduced_elements(y, ReductionSlice::beta_theta_zero, Reading::corrected);
    CHECK(std::abs(h(Coordinate::alpha, Coordinate::alpha) - h(Coordinate::a, Coordinate::a)) < 1e-10);
    CHECK(std::abs(h(Coordinate::alpha, Coordinate::alpha) - c.g11_g12) < 1e-10);
    REQUIRE(c.g14.has_value());
    CHECK(std::abs(h(Coordinate::alpha, Coordinate::beta) - *c.g14) < 1e-10);

    const ReducedElements p = reduced_elements(y, ReductionSlice::beta_theta_zero, Reading::printed);
    REQUIRE(p.g44.has_value());
    CHECK(*p.g44 == *c.g14);
  }
  CHECK_THROWS_AS(reduced_elements(sample_interior(1), ReductionSlice::beta_b_zero), DomainError);
  CHECK_THROWS_AS(reduced_elements(sample_interior(1), ReductionSlice::beta_theta_zero), DomainError);
}

TEST_CASE("two_level_inverse") {
  const MetricTensor origin = two_level_inverse(0.0, 0.0, 0.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(origin(i, j) == (i == j ? 4.0 : 0.0));

  const MetricTensor g = two_level_metric(Cartesian{0.3, 0.2, 0.1});
  const MetricTensor inv = two_level_inverse(0.3, 0.2, 0.1);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += g(i, k) * inv(k, j);
      CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(two_level_inverse(1.0, 0.0, 0.0), DomainError);
}
