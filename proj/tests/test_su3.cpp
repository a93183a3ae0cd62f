#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "bures/error.hpp"
#include "bures/su3.hpp"

using namespace bures;
using std::numbers::pi;

namespace {

const double kTheta1Max = std::acos(1.0 / std::sqrt(3.0));

ComplexMatrix series_exp(int k, double t) {
  // e^{i t lambda_k} by 20 power-series terms
  const ComplexMatrix x = gell_mann(k) * cplx(0.0, t);
  ComplexMatrix sum = ComplexMatrix::identity(3);
  ComplexMatrix term = ComplexMatrix::identity(3);
  for (int n = 1; n < 20; ++n) {
    term = term * x;
    term *= cplx(1.0 / n);
    sum += term;
  }
  return sum;
}

AngleVector euler_zero(double theta1, double theta2) {
  AngleVector x;
  x.theta1 = theta1;
  x.theta2 = theta2;
  return x;
}

}  // namespace

TEST_CASE("coordinate order and ranges") {
  CHECK(coordinate_name(Coordinate::alpha) == "alpha");
  CHECK(coordinate_name(Coordinate::theta2) == "theta2");
  CHECK(one_based(Coordinate::a) == 3);
  CHECK(one_based(Coordinate::beta) == 4);
  CHECK(coordinate_from_one_based(6) == Coordinate::theta);
  CHECK_THROWS_AS(coordinate_from_one_based(9), RangeError);

  CHECK(coordinate_range(Coordinate::gamma).hi == doctest::Approx(pi));
  CHECK(coordinate_range(Coordinate::b).hi == doctest::Approx(pi / 2));
  CHECK(coordinate_range(Coordinate::theta1).hi == doctest::Approx(kTheta1Max));
  CHECK(coordinate_range(Coordinate::theta2).hi == doctest::Approx(pi / 4));
}

TEST_CASE("AngleVector::validate") {
  AngleVector x = euler_zero(0.5, 0.3);
  CHECK_NOTHROW(x.validate());
  x.theta2 = 1.0;
  CHECK_THROWS_AS(x.validate(), RangeError);
  try {
    x.validate();
  } catch (const RangeError& e) {
    CHECK(std::string(e.what()).find("[0, pi/4]") != std::string::npos);
  }
  x.theta2 = 0.3;
  x.alpha = -0.1;
  CHECK_FALSE(x.in_range());
  x.alpha = std::nan("");
  CHECK_FALSE(x.in_range());
}

TEST_CASE("gell_mann") {
  CHECK(gell_mann(3) == ComplexMatrix::diagonal({1.0, -1.0, 0.0}));
  ComplexMatrix l2 = ComplexMatrix::zeros(3, 3);
  l2(0, 1) = cplx(0, -1);
  l2(1, 0) = cplx(0, 1);
  CHECK(gell_mann(2) == l2);
  ComplexMatrix l5 = ComplexMatrix::zeros(3, 3);
  l5(0, 2) = cplx(0, -1);
  l5(2, 0) = cplx(0, 1);
  CHECK(gell_mann(5) == l5);
  CHECK_THROWS_AS(gell_mann(1), RangeError);
}

TEST_CASE("factor_exp") {
  const double t = 0.83;
  CHECK(max_abs_diff(factor_exp(3, t),
                     ComplexMatrix::diagonal({std::exp(cplx(0, t)), std::exp(cplx(0, -t)), 1.0})) < 1e-15);
  CHECK(max_abs_diff(factor_exp(2, 0.0), ComplexMatrix::identity(3)) == 0.0);
  for (int k : {2, 3, 5}) {
    for (double s : {0.0, 0.3, 1.1, 1.4, pi / 2}) {
      CHECK(max_abs_diff(factor_exp(k, s), series_exp(k, s)) < 1e-13);
    }
  }
}

TEST_CASE("build_unitary") {
  CHECK(max_abs_diff(build_unitary(AngleVector{}), ComplexMatrix::identity(3)) == 0.0);
  AngleVector only_alpha;
  only_alpha.alpha = 0.7;
  CHECK(max_abs_diff(build_unitary(only_alpha), factor_exp(3, 0.7)) < 1e-15);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ComplexMatrix u = build_unitary(sample_interior(s));
    CHECK(max_abs_diff(u * adjoint(u), ComplexMatrix::identity(3)) < 1e-13);
  }
}

TEST_CASE("build_rho_prime") {
  CHECK(max_abs_diff(build_rho_prime(0.0, 0.4), ComplexMatrix::diagonal({1.0, 0.0, 0.0})) < 1e-16);
  CHECK(max_abs_diff(build_rho_prime(kTheta1Max, pi / 4),
                     ComplexMatrix::diagonal({1.0 / 3, 1.0 / 3, 1.0 / 3})) < 1e-15);
  CHECK(max_abs_diff(build_rho_prime(pi / 4, pi / 6),
                     ComplexMatrix::diagonal({0.5, 3.0 / 8, 1.0 / 8})) < 1e-15);
}

TEST_CASE("build_rho") {
  const AngleVector x0 = euler_zero(0.5, 0.3);
  CHECK(max_abs_diff(build_rho(x0), build_rho_prime(0.5, 0.3)) < 1e-16);

  const ComplexMatrix mm = build_rho(maximally_mixed_point());
  CHECK(std::abs(trace(mm * mm * mm) - 1.0 / 9) < 1e-15);

  for (std::uint64_t s = 0; s < 100; ++s) {
    const AngleVector x = sample_interior(s);
    const ComplexMatrix rho = build_rho(x);
    CHECK(std::abs(trace(rho) - 1.0) < 1e-14);
    CHECK(hermiticity_defect(rho) == 0.0);
    const auto ev = herm_eig(rho).eigenvalues;
    std::vector<double> expected;
    const ComplexMatrix rp = build_rho_prime(x.theta1, x.theta2);
    for (int i = 0; i < 3; ++i) expected.push_back(rp(i, i).real());
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ev[i] - expected[i]) < 1e-12);
  }

  AngleVector bad = x0;
  bad.b = 2.0;
  CHECK_THROWS_AS(build_rho(bad), RangeError);
}

TEST_CASE("tangents") {
  SUBCASE("unitary tangents vanish at the maximally mixed point") {
    const AngleVector mm = maximally_mixed_point(sample_interior(3));
    for (Coordinate c : {Coordinate::alpha, Coordinate::gamma, Coordinate::a, Coordinate::beta,
                         Coordinate::b, Coordinate::theta}) {
      CHECK(tangent_analytic(mm, c).max_abs() < 1e-15);
    }
  }

  SUBCASE("traceless and Hermitian") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto t = tangents_analytic(sample_interior(s));
      for (const auto& m : t) {
        CHECK(std::abs(trace(m)) < 1e-14);
        CHECK(hermiticity_defect(m) < 1e-14);
      }
    }
  }

  SUBCASE("theta1 at zero Euler angles") {
    const double t1 = 0.4, t2 = pi / 6;
    const double s = std::sin(2 * t1);
    const double c2 = std::cos(t2), s2 = std::sin(t2);
    const ComplexMatrix expected = ComplexMatrix::diagonal({-s, s * c2 * c2, s * s2 * s2});
    CHECK(max_abs_diff(tangent_analytic(euler_zero(t1, t2), Coordinate::theta1), expected) < 1e-15);
  }

  SUBCASE("analytic vs finite difference") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const AngleVector x = sample_interior(s);
      for (Coordinate c : kAllCoordinates) {
        CHECK(max_abs_diff(tangent_analytic(x, c), tangent_fd(x, c)) < 1e-6);
      }
    }
  }

  SUBCASE("finite difference along a constant slice") {
    // rho does not depend on alpha at zero Euler angles
    const AngleVector x = euler_zero(0.5, 0.3);
    AngleVector y = x;
    y.alpha = 0.5;
    CHECK(tangent_fd(y, Coordinate::alpha).max_abs() < 1e-9);
  }

  SUBCASE("finite difference errors") {
    AngleVector edge = euler_zero(0.5, 0.3);
    CHECK_THROWS_AS(tangent_fd(edge, Coordinate::alpha), RangeError);
    CHECK_THROWS_AS(tangent_fd(sample_interior(1), Coordinate::alpha, -1.0), RangeError);
  }
}

TEST_CASE("sampling") {
  CHECK(sample_interior(42) == sample_interior(42));
  CHECK(sample_seed(42, 0) != sample_seed(42, 1));

  std::set<double> seen;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const AngleVector x = sample_interior(sample_seed(7, s), 0.05);
    for (Coordinate c : kAllCoordinates) {
      const AngleRange r = coordinate_range(c);
      const double m = 0.05 * (r.hi - r.lo);
      CHECK_MESSAGE((x[c] >= r.lo + m && x[c] <= r.hi - m), coordinate_name(c));
    }
    seen.insert(x.alpha);
  }
  CHECK(seen.size() == 10000);
  CHECK_THROWS_AS(sample_interior(1, 0.6), RangeError);
}
