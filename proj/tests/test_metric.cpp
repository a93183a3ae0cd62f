#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bures/error.hpp"
#include "bures/metric.hpp"
#include "bures/su3.hpp"

using namespace bures;
using std::numbers::pi;

TEST_CASE("bures_quadratic_2x2") {
  const ComplexMatrix half = ComplexMatrix::identity(2) * cplx(0.5);
  const ComplexMatrix x = ComplexMatrix::diagonal({0.5, -0.5});
  CHECK(bures_quadratic_2x2(half, x) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(bures_quadratic_2x2(half, ComplexMatrix::zeros(2, 2)) == 0.0);

  const ComplexMatrix rho = two_level_rho({0.1, -0.3, 0.2});
  const ComplexMatrix y{{0.2, cplx(0.1, 0.3)}, {cplx(0.1, -0.3), -0.2}};
  const double q = bures_quadratic_2x2(rho, y);
  CHECK(bures_quadratic_2x2(rho, y * cplx(3.0)) == doctest::Approx(9.0 * q).epsilon(1e-14));

  CHECK_THROWS_AS(bures_quadratic_2x2(two_level_rho({0.0, 0.0, 1.0}), x), DomainError);
  CHECK_THROWS_AS(bures_quadratic_2x2(half, ComplexMatrix::identity(2)), DomainError);  // not traceless
  CHECK_THROWS_AS(bures_quadratic_2x2(ComplexMatrix::identity(3), x), DimensionError);
}

TEST_CASE("bures_quadratic_3x3") {
  const ComplexMatrix third = ComplexMatrix::identity(3) * cplx(1.0 / 3);
  const ComplexMatrix x = gell_mann(3) * cplx(0.1) + gell_mann(5) * cplx(0.2);
  CHECK(bures_quadratic_3x3(third, ComplexMatrix::zeros(3, 3)) == 0.0);
  CHECK(bures_quadratic_3x3(third, x) ==
        doctest::Approx(0.75 * trace(x * x).real()).epsilon(1e-13));

  CHECK_THROWS_AS(bures_quadratic_3x3(build_rho_prime(0.0, 0.3), x), DomainError);  // pure
  CHECK_THROWS_AS(bures_quadratic_3x3(build_rho_prime(0.5, 0.0), x), DomainError);  // singular
  const ComplexMatrix non_herm{{0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(bures_quadratic_3x3(third, non_herm), DomainError);
}

TEST_CASE("bures_bilinear_eig") {
  const ComplexMatrix third = ComplexMatrix::identity(3) * cplx(1.0 / 3);
  const ComplexMatrix x = gell_mann(2) * cplx(0.3) + gell_mann(3) * cplx(-0.2);
  CHECK(bures_bilinear_eig(third, x, x) == doctest::Approx(0.75 * trace(x * x).real()).epsilon(1e-14));

  const ComplexMatrix rho = build_rho(sample_interior(5));
  const auto t = tangents_analytic(sample_interior(5));
  CHECK(bures_bilinear_eig(rho, t[1], t[3]) == doctest::Approx(bures_bilinear_eig(rho, t[3], t[1])));
  CHECK(bures_bilinear_eig(rho, t[4], t[4]) ==
        doctest::Approx(bures_quadratic_3x3(rho, t[4])).epsilon(1e-10));

  CHECK_THROWS_AS(bures_bilinear_eig(build_rho_prime(0.5, 0.0), x, x), DomainError);
  CHECK_THROWS_AS(bures_bilinear_eig(third, ComplexMatrix::identity(2), x), DimensionError);
}

TEST_CASE("metric_tensor") {
  SUBCASE("engines agree and invariants hold") {
    for (std::uint64_t s = 0; s < 40; ++s) {
      const AngleVector x = sample_interior(sample_seed(99, s));
      const MetricTensor ge = metric_tensor(x, EngineKind::eigen);
      const MetricTensor gt = metric_tensor(x, EngineKind::dittmann_trace);
      const MetricTensor gf = metric_tensor(x, EngineKind::finite_difference);
      CHECK(ge.dim() == 8);
      CHECK_NOTHROW(ge.check_invariants());
      CHECK(max_abs_diff(ge, gt) < 1e-8);
      CHECK(max_abs_diff(ge, gf) < 1e-5);
      CHECK(ge(Coordinate::theta1, Coordinate::theta1) == doctest::Approx(1.0).epsilon(1e-12));
      const double s1 = std::sin(x.theta1);
      CHECK(std::abs(ge(Coordinate::theta2, Coordinate::theta2) - s1 * s1) < 1e-12);
      CHECK(std::abs(ge(Coordinate::alpha, Coordinate::theta1)) < 1e-12);
      CHECK(std::abs(ge(Coordinate::b, Coordinate::theta)) < 1e-12);
    }
  }

  SUBCASE("ds2 convention") {
    // ds^2 along theta1 is g77 dtheta1^2 with g77 = 1
    const AngleVector x = sample_interior(8);
    const double q = bures_quadratic_3x3(build_rho(x), tangent_analytic(x, Coordinate::theta1));
    CHECK(q == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("range and domain errors") {
    AngleVector x = sample_interior(1);
    x.theta1 = 0.0;
    CHECK_THROWS_AS(metric_tensor(x, EngineKind::eigen), DomainError);
    CHECK_THROWS_AS(metric_tensor(x, EngineKind::dittmann_trace), DomainError);
    x.theta1 = 2.0;
    CHECK_THROWS_AS(metric_tensor(x, EngineKind::eigen), RangeError);
  }

  SUBCASE("parse_engine") {
    CHECK(parse_engine("dittmann-trace") == EngineKind::dittmann_trace);
    CHECK(parse_engine("eigen") == EngineKind::eigen);
    CHECK(parse_engine("finite-difference-cross-check") == EngineKind::finite_difference);
    CHECK(engine_name(EngineKind::eigen) == "eigen");
    CHECK_THROWS_AS(parse_engine("hubner"), RangeError);
  }
}

TEST_CASE("MetricTensor invariants") {
  MetricTensor g(2, {1.0, 0.5, 0.4, 1.0});
  CHECK(g.symmetry_defect() == doctest::Approx(0.1));
  CHECK_THROWS_AS(g.check_invariants(), DomainError);
  MetricTensor neg(2, {1.0, 0.0, 0.0, -1.0});
  CHECK_THROWS_AS(neg.check_invariants(), DomainError);
  CHECK_THROWS_AS(MetricTensor(2, {1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(max_abs_diff(MetricTensor(2), MetricTensor(3)), DimensionError);
}

TEST_CASE("two-level metric") {
  const MetricTensor origin = two_level_metric(Cartesian{0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(origin(i, j) == (i == j ? 0.25 : 0.0));

  const MetricTensor sph = two_level_metric(Spherical{0.5, pi / 2, 1.3});
  CHECK(sph(0, 0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(sph(1, 1) == doctest::Approx(1.0 / 16).epsilon(1e-15));
  CHECK(sph(2, 2) == doctest::Approx(1.0 / 16).epsilon(1e-15));
  CHECK(sph(0, 1) == 0.0);

  const Cartesian p{0.3, -0.4, 0.5};
  CHECK(max_abs_diff(two_level_metric_closed(p), two_level_metric_trace(p)) < 1e-12);

  CHECK_THROWS_AS(two_level_metric(Cartesian{0.6, 0.6, 0.6}), DomainError);
  CHECK_THROWS_AS(two_level_metric(Spherical{1.0, 0.3, 0.0}), DomainError);

  const Cartesian c = to_cartesian(Spherical{0.5, pi / 2, 0.0});
  CHECK(c.x == doctest::Approx(0.5));
  CHECK(std::abs(c.z) < 1e-16);
}

TEST_CASE("volume_element") {
  for (double r : {0.1, 0.5, 0.9}) {
    for (double th : {0.3, pi / 2, 2.5}) {
      const MetricTensor g = two_level_metric(Spherical{r, th, 0.7});
      CHECK(volume_element(g) ==
            doctest::Approx(r * r * std::sin(th) / (8.0 * std::sqrt(1.0 - r * r))).epsilon(1e-14));
    }
  }
  const MetricTensor g = metric_tensor(sample_interior(2), EngineKind::eigen);
  std::vector<double> scaled(g.entries());
  for (double& v : scaled) v *= 2.0;
  CHECK(volume_element(MetricTensor(8, scaled)) ==
        doctest::Approx(16.0 * volume_element(g)).epsilon(1e-10));

  // unitary tangents vanish at the maximally mixed point
  const MetricTensor mm = metric_tensor(maximally_mixed_point(sample_interior(2)), EngineKind::eigen);
  CHECK(volume_element(mm) < 1e-12);

  CHECK_THROWS_AS(volume_element(MetricTensor(2, {1.0, 0.5, 0.0, 1.0})), DomainError);
}

TEST_CASE("pullback") {
  const MetricTensor g(2, {2.0, 1.0, 1.0, 3.0});
  const std::array<double, 4> id = {1.0, 0.0, 0.0, 1.0};
  CHECK(pullback(g, id) == g);
  const std::array<double, 4> j = {1.0, 2.0, 0.0, 1.0};
  const MetricTensor p = pullback(g, j);
  // J^T g J
  CHECK(p(0, 0) == 2.0);
  CHECK(p(0, 1) == 5.0);
  CHECK(p(1, 1) == 2.0 * 4 + 2.0 * 2 + 3.0);
  CHECK_THROWS_AS(pullback(g, std::array<double, 3>{1.0, 2.0, 3.0}), DimensionError);
}
