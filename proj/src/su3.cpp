#include "bures/su3.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "bures/error.hpp"

namespace bures {

namespace {

constexpr double kRangeTol = 1e-12;

// Factor order in U and the coordinate each factor carries.
struct Factor {
  int generator;
  Coordinate coord;
};
constexpr std::array<Factor, 6> kFactors = {{
    {3, Coordinate::alpha},
    {2, Coordinate::beta},
    {3, Coordinate::gamma},
    {5, Coordinate::theta},
    {3, Coordinate::a},
    {2, Coordinate::b},
}};

void require_generator(int k) {
  if (k != 2 && k != 3 && k != 5) {
    throw RangeError("gell_mann: only lambda_2, lambda_3 and lambda_5 are provided (got " +
                     std::to_string(k) + ")");
  }
}

std::array<ComplexMatrix, 6> factors_of(const AngleVector& x) {
  std::array<ComplexMatrix, 6> f;
  for (std::size_t i = 0; i < kFactors.size(); ++i) {
    f[i] = factor_exp(kFactors[i].generator, x[kFactors[i].coord]);
  }
  return f;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * adjoint(u);
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + adjoint(m)) * cplx{0.5}; }

ComplexMatrix rho_prime_derivative(double t1, double t2, Coordinate k) {
  if (k == Coordinate::theta1) {
    const double s = std::sin(2.0 * t1);
    const double c2 = std::cos(t2);
    const double s2 = std::sin(t2);
    return ComplexMatrix::diagonal({-s, s * c2 * c2, s * s2 * s2});
  }
  const double s1 = std::sin(t1);
  const double d = s1 * s1 * std::sin(2.0 * t2);
  return ComplexMatrix::diagonal({0.0, -d, d});
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Coordinate coordinate_from_one_based(int k) {
  if (k < 1 || k > 8) throw RangeError("coordinate index must be in 1..8, got " + std::to_string(k));
  return static_cast<Coordinate>(k - 1);
}

std::string_view coordinate_name(Coordinate c) noexcept {
  switch (c) {
    case Coordinate::alpha: return "alpha";
    case Coordinate::gamma: return "gamma";
    case Coordinate::a: return "a";
    case Coordinate::beta: return "beta";
    case Coordinate::b: return "b";
    case Coordinate::theta: return "theta";
    case Coordinate::theta1: return "theta1";
    case Coordinate::theta2: return "theta2";
  }
  return "?";
}

AngleRange coordinate_range(Coordinate c) noexcept {
  using std::numbers::pi;
  switch (c) {
    case Coordinate::alpha:
    case Coordinate::gamma:
    case Coordinate::a:
      return {0.0, pi};
    case Coordinate::beta:
    case Coordinate::b:
    case Coordinate::theta:
      return {0.0, pi / 2.0};
    case Coordinate::theta1:
      return {0.0, std::acos(1.0 / std::sqrt(3.0))};
    case Coordinate::theta2:
      return {0.0, pi / 4.0};
  }
  return {0.0, 0.0};
}

double& AngleVector::operator[](Coordinate c) noexcept {
  switch (c) {
    case Coordinate::alpha: return alpha;
    case Coordinate::gamma: return gamma;
    case Coordinate::a: return a;
    case Coordinate::beta: return beta;
    case Coordinate::b: return b;
    case Coordinate::theta: return theta;
    case Coordinate::theta1: return theta1;
    case Coordinate::theta2: return theta2;
  }
  return alpha;
}

double AngleVector::operator[](Coordinate c) const noexcept {
  return const_cast<AngleVector&>(*this)[c];
}

std::array<double, kNumCoordinates> AngleVector::to_array() const noexcept {
  return {alpha, gamma, a, beta, b, theta, theta1, theta2};
}

AngleVector AngleVector::from_array(const std::array<double, kNumCoordinates>& v) noexcept {
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

namespace {

std::string_view range_label(Coordinate c) noexcept {
  switch (c) {
    case Coordinate::alpha:
    case Coordinate::gamma:
    case Coordinate::a: return "[0, pi]";
    case Coordinate::beta:
    case Coordinate::b:
    case Coordinate::theta: return "[0, pi/2]";
    case Coordinate::theta1: return "[0, arccos(1/sqrt(3))]";
    case Coordinate::theta2: return "[0, pi/4]";
  }
  return "";
}

}  // namespace

void AngleVector::validate() const {
  for (Coordinate c : kAllCoordinates) {
    const double v = (*this)[c];
    const AngleRange r = coordinate_range(c);
    if (!(v >= r.lo - kRangeTol && v <= r.hi + kRangeTol)) {
      std::ostringstream os;
      os.precision(17);
      os << coordinate_name(c) << " = " << v << " is outside " << range_label(c) << " = [" << r.lo
         << ", " << r.hi << "]";
      throw RangeError(os.str());
    }
  }
}

bool AngleVector::in_range() const noexcept {
  try {
    validate();
    return true;
  } catch (const RangeError&) {
    return false;
  }
}

AngleVector maximally_mixed_point(AngleVector base) {
  base.theta1 = coordinate_range(Coordinate::theta1).hi;
  base.theta2 = coordinate_range(Coordinate::theta2).hi;
  return base;
}

ComplexMatrix gell_mann(int k) {
  require_generator(k);
  constexpr cplx i{0.0, 1.0};
  switch (k) {
    case 2: return {{0.0, -i, 0.0}, {i, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    case 3: return {{1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 0.0}};
    default: return {{0.0, 0.0, -i}, {0.0, 0.0, 0.0}, {i, 0.0, 0.0}};
  }
}

ComplexMatrix factor_exp(int k, double t) {
  require_generator(k);
  const double c = std::cos(t);
  const double s = std::sin(t);
  ComplexMatrix m = ComplexMatrix::identity(3);
  switch (k) {
    case 3:
      m(0, 0) = std::polar(1.0, t);
      m(1, 1) = std::polar(1.0, -t);
      break;
    case 2:  // i*lambda_2 is the real generator of rotations in the (1,2) plane
      m(0, 0) = c;
      m(0, 1) = s;
      m(1, 0) = -s;
      m(1, 1) = c;
      break;
    default:  // lambda_5: (1,3) plane
      m(0, 0) = c;
      m(0, 2) = s;
      m(2, 0) = -s;
      m(2, 2) = c;
      break;
  }
  return m;
}

ComplexMatrix build_unitary(const AngleVector& angles) {
  const auto f = factors_of(angles);
  ComplexMatrix u = f[0];
  for (std::size_t i = 1; i < f.size(); ++i) u = u * f[i];
  return u;
}

ComplexMatrix build_rho_prime(double theta1, double theta2) {
  const double c1 = std::cos(theta1);
  const double s1 = std::sin(theta1);
  const double c2 = std::cos(theta2);
  const double s2 = std::sin(theta2);
  return ComplexMatrix::diagonal({c1 * c1, s1 * s1 * c2 * c2, s1 * s1 * s2 * s2});
}

ComplexMatrix build_rho(const AngleVector& angles) {
  angles.validate();
  return hermitian_part(
      conjugate_by(build_unitary(angles), build_rho_prime(angles.theta1, angles.theta2)));
}

std::array<ComplexMatrix, kNumCoordinates> tangents_analytic(const AngleVector& angles) {
  angles.validate();
  const auto f = factors_of(angles);
  // prefix[i] = f0 ... fi, suffix[i] = f(i+1) ... f5
  std::array<ComplexMatrix, 6> prefix;
  std::array<ComplexMatrix, 6> suffix;
  prefix[0] = f[0];
  for (std::size_t i = 1; i < 6; ++i) prefix[i] = prefix[i - 1] * f[i];
  suffix[5] = ComplexMatrix::identity(3);
  for (std::size_t i = 5; i-- > 0;) suffix[i] = f[i + 1] * suffix[i + 1];

  const ComplexMatrix& u = prefix[5];
  const ComplexMatrix u_dag = adjoint(u);
  const ComplexMatrix rp = build_rho_prime(angles.theta1, angles.theta2);

  std::array<ComplexMatrix, kNumCoordinates> out;
  for (std::size_t i = 0; i < kFactors.size(); ++i) {
    const ComplexMatrix du = prefix[i] * (cplx{0.0, 1.0} * gell_mann(kFactors[i].generator)) * suffix[i];
    const ComplexMatrix half = du * rp * u_dag;
    out[index_of(kFactors[i].coord)] = half + adjoint(half);
  }
  for (Coordinate k : {Coordinate::theta1, Coordinate::theta2}) {
    out[index_of(k)] =
        hermitian_part(u * rho_prime_derivative(angles.theta1, angles.theta2, k) * u_dag);
  }
  return out;
}

ComplexMatrix tangent_analytic(const AngleVector& angles, Coordinate k) {
  return tangents_analytic(angles)[index_of(k)];
}

ComplexMatrix tangent_fd(const AngleVector& angles, Coordinate k, double h) {
  if (!(h > 0.0)) throw RangeError("tangent_fd: step must be positive");
  const AngleRange r = coordinate_range(k);
  const double x = angles[k];
  if (x - h < r.lo - kRangeTol || x + h > r.hi + kRangeTol) {
    throw RangeError("tangent_fd: " + std::string(coordinate_name(k)) +
                     " is within the step of its range boundary");
  }
  AngleVector plus = angles;
  AngleVector minus = angles;
  plus[k] = x + h;
  minus[k] = x - h;
  return (build_rho(plus) - build_rho(minus)) * cplx{1.0 / (2.0 * h)};
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
  return splitmix64(state);
}

AngleVector sample_interior(std::uint64_t seed, double margin) {
  if (!(margin > 0.0 && margin < 0.5)) {
    throw RangeError("sample_interior: margin must lie in (0, 0.5)");
  }
  std::uint64_t state = seed;
  AngleVector x;
  for (Coordinate c : kAllCoordinates) {
    const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    const AngleRange r = coordinate_range(c);
    const double width = r.hi - r.lo;
    x[c] = r.lo + width * (margin + (1.0 - 2.0 * margin) * u);
  }
  return x;
}

}  // namespace bures
