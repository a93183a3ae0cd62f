#include "bures/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "bures/error.hpp"

namespace bures {

namespace {

using std::cos;
using std::sin;
using cd = std::complex<double>;

constexpr double kUpsilonGuard = 1e-6;

double sq(double x) { return x * x; }

// Trigonometric pieces of (theta1, theta2) shared by the auxiliaries.
struct SpectralTrig {
  double c2t1, c4t1, c6t1, c8t1;
  double c2t2, c4t2, c6t2, c8t2;
  double s1, s1_2, s1_4, s1_6, s1_8;
  double c1;

  SpectralTrig(double t1, double t2)
      : c2t1(cos(2 * t1)), c4t1(cos(4 * t1)), c6t1(cos(6 * t1)), c8t1(cos(8 * t1)),
        c2t2(cos(2 * t2)), c4t2(cos(4 * t2)), c6t2(cos(6 * t2)), c8t2(cos(8 * t2)),
        s1(sin(t1)), s1_2(s1 * s1), s1_4(s1_2 * s1_2), s1_6(s1_4 * s1_2), s1_8(s1_4 * s1_4),
        c1(cos(t1)) {}
};

double t_of(double t1, double t2) {
  return 2 + 6 * cos(2 * t1) + cos(2 * (t1 - t2)) - 2 * cos(2 * t2) + cos(2 * (t1 + t2));
}

double u_plus_of(double t1, double t2) { return 3 + cos(2 * t1) + 2 * cos(2 * t2) * sq(sin(t1)); }
double u_minus_of(double t1, double t2) { return 3 + cos(2 * t1) - 2 * cos(2 * t2) * sq(sin(t1)); }

double v_of(const SpectralTrig& s) {
  return 15 + 28 * s.c2t1 + 21 * s.c4t1 + 4 * (7 + 9 * s.c2t1) * s.c2t2 * s.s1_2 -
         4 * (5 + 3 * s.c2t1) * s.c4t2 * s.s1_2 + 8 * s.c6t2 * s.s1_4;
}

double kappa_of(const SpectralTrig& s) { return 35 + 28 * s.c2t1 + s.c4t1 - 8 * s.c4t2 * s.s1_4; }

double upsilon_of(const SpectralTrig& s) {
  return -4 * (1 + 3 * s.c2t1) * (7 + 5 * s.c2t1) / s.c2t2 - 16 * s.c2t2 * s.s1_4;
}

// -sin^2 t1 { ... - 768 csc^2 t1 + ... } with the csc^2 term distributed so the
// value stays finite at theta1 = 0.
double mu_of(const SpectralTrig& s) {
  const double brace = 1621 + 125 * s.c2t2 + 46 * s.c4t2 +
                       4 * s.c2t1 * (261 + 49 * s.c2t2 + 10 * s.c4t2) +
                       s.c4t1 * (151 + 63 * s.c2t2 + 42 * s.c4t2) +
                       8 * (s.c6t2 - s.c8t2) * s.s1_4;
  return -s.s1_2 * brace + 768;
}

double zeta_of(const SpectralTrig& s, double b, double theta) {
  const double c2th = cos(2 * theta);
  const double brace =
      -101 + 12 * s.c4t1 + 64 * s.c6t1 + 25 * s.c8t1 +
      16 * (61 + 100 * s.c2t1 + 31 * s.c4t1) * s.c2t2 * c2th * s.s1_4 -
      64 * (5 + 7 * s.c2t1) * s.c4t2 * s.s1_6 + 128 * s.c2t2 * s.c4t2 * c2th * s.s1_8 +
      2 * sq(cos(b)) * s.s1_2 *
          (242 + 445 * s.c2t1 + 286 * s.c4t1 + 51 * s.c6t1 +
           4 * ((125 + 196 * s.c2t1 + 63 * s.c4t1) * s.c2t2 -
                2 * (29 + 28 * s.c2t1 + 7 * s.c4t1) * s.c4t2) *
               s.s1_2 +
           32 * (s.c6t2 + s.c8t2) * s.s1_6) *
          sq(sin(theta));
  if (s.s1_2 == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return -brace / s.s1_2;
}

double g55_from(double t, double u_plus) { return t * t / (16 * u_plus); }

void require_finite(double v, ElementId id) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(element_name(id)) + ": formula is not finite at this point");
  }
}

cd g24_of(const AngleVector& x, const AuxiliaryBundle& aux) {
  const SpectralTrig s(x.theta1, x.theta2);
  const double c2b = cos(2 * x.b);
  const double ct2 = cos(x.theta2);
  const double st2 = sin(x.theta2);
  const double denom = 256 * (-1 + std::pow(s.c1, 6) + s.s1_6 * (std::pow(ct2, 6) + std::pow(st2, 6)));
  const cd phase{cos(2 * x.theta), -sin(2 * x.theta)};
  const cd lead = 3 * aux.t * cos(x.theta) * sin(2 * x.b) * sin(2 * (x.a + x.gamma)) * s.s1_2 *
                  phase / denom;
  const cd& p = aux.p;
  const cd& q = aux.q;
  const cd body =
      sq(s.c1) * (-p * c2b * (-1 + 4 * s.c2t2 + s.c4t2) + q * (-1 + 7 * s.c2t2 - 3 * s.c4t2 + s.c6t2)) +
      2 * std::pow(s.c1, 4) * (p * c2b * sq(ct2) * (3 + s.c2t2) + q * (4 - 3 * s.c2t2 + s.c4t2) * sq(st2)) +
      (-p * c2b + q * (-1 + 2 * s.c2t2)) * sq(sin(2 * x.theta2));
  return lead * body;
}

double g22_of(const AngleVector& x, const AuxiliaryBundle& aux, double g55) {
  if (!aux.upsilon) {
    throw DomainError("g22: upsilon has a sec(2 theta2) pole at theta2 = pi/4 (|theta2 - pi/4| <= 1e-6)");
  }
  const double k = aux.kappa;
  const double cb2 = sq(cos(x.b));
  const double cth2 = sq(cos(x.theta));
  const double s1_2 = sq(sin(x.theta1));
  const double c2t2_sq = sq(cos(2 * x.theta2));
  return (-g55 * k * sq(cb2) * sq(3 + cos(2 * x.theta)) +
          4 * cb2 * (g55 * k + aux.mu * cth2 + 4 * (k + *aux.upsilon) * c2t2_sq * sq(cth2) * s1_2) +
          16 * k * c2t2_sq * cth2 * s1_2 * sq(sin(x.theta))) /
         (16 * k);
}

double g44_of(const AngleVector& x, const AuxiliaryBundle& aux, double g55) {
  return -g55 * sq(cos(x.b)) * sq(cos(x.theta)) * sq(sin(x.b)) * sq(sin(2 * (x.a + x.gamma))) +
         aux.zeta / (32 * aux.kappa);
}

double g66_of(const AngleVector& x) {
  const double t1 = x.theta1, t2 = x.theta2;
  const double s1_2 = sq(sin(t1));
  // The reference denominator repeats a '+' sign; read as a single sum (= 2 u_-).
  const double denom = 6 + 2 * cos(2 * t1) + cos(2 * (t1 - t2)) - 2 * cos(2 * t2) + cos(2 * (t1 + t2));
  return 32 * sq(cos(x.b)) * std::pow(cos(t1), 4) / denom +
         0.25 * (-2 - 4 * cos(2 * t1) + (-cos(2 * t2) + cos(4 * t2)) * s1_2 -
                 cos(2 * x.b) * (6 * sq(cos(t1)) + (cos(2 * t2) + cos(4 * t2)) * s1_2));
}

}  // namespace

std::string_view element_name(ElementId id) noexcept {
  switch (id) {
    case ElementId::g13: return "g13";
    case ElementId::g15: return "g15";
    case ElementId::g16: return "g16";
    case ElementId::g22: return "g22";
    case ElementId::g23: return "g23";
    case ElementId::g24: return "g24";
    case ElementId::g33: return "g33";
    case ElementId::g34: return "g34";
    case ElementId::g44: return "g44";
    case ElementId::g45: return "g45";
    case ElementId::g46: return "g46";
    case ElementId::g55: return "g55";
    case ElementId::g66: return "g66";
    case ElementId::g77: return "g77";
    case ElementId::g88: return "g88";
  }
  return "?";
}

ElementId parse_element(std::string_view name) {
  for (ElementId id : kAllElements) {
    if (element_name(id) == name) return id;
  }
  throw RangeError("unknown element '" + std::string(name) + "'");
}

std::pair<Coordinate, Coordinate> element_position(ElementId id) noexcept {
  const std::string_view n = element_name(id);
  return {static_cast<Coordinate>(n[1] - '1'), static_cast<Coordinate>(n[2] - '1')};
}

AuxiliaryBundle auxiliaries(const AngleVector& angles) {
  angles.validate();
  const SpectralTrig s(angles.theta1, angles.theta2);
  AuxiliaryBundle aux;
  aux.t = t_of(angles.theta1, angles.theta2);
  aux.u_plus = u_plus_of(angles.theta1, angles.theta2);
  aux.u_minus = u_minus_of(angles.theta1, angles.theta2);
  aux.v = v_of(s);
  aux.kappa = kappa_of(s);
  if (std::abs(angles.theta2 - std::numbers::pi / 4) > kUpsilonGuard) aux.upsilon = upsilon_of(s);
  aux.mu = mu_of(s);
  aux.zeta = zeta_of(s, angles.b, angles.theta);
  const cd e2{cos(2 * angles.theta), sin(2 * angles.theta)};
  aux.p = 1.0 + 6.0 * e2 + e2 * e2;
  aux.q = (e2 - 1.0) * (e2 - 1.0);
  return aux;
}

std::complex<double> closed_element(ElementId id, const AngleVector& x, Reading reading) {
  const AuxiliaryBundle aux = auxiliaries(x);
  const double g55 = g55_from(aux.t, aux.u_plus);
  const double g55_inner = reading == Reading::corrected ? 4 * g55 : g55;
  const double apg = x.a + x.gamma;
  double value = 0.0;
  switch (id) {
    case ElementId::g55:
      value = g55;
      break;
    case ElementId::g13:
      value = g55 / 4 *
              ((3 + cos(2 * x.theta)) * cos(2 * x.beta) * sq(sin(2 * x.b)) +
               2 * cos(2 * apg) * cos(x.theta) * sin(4 * x.b) * sin(2 * x.beta));
      break;
    case ElementId::g15:
      value = g55 * cos(x.theta) * sin(2 * x.beta) * sin(2 * apg);
      break;
    case ElementId::g16:
      value = aux.v / (32 * aux.u_minus) * sin(2 * x.b) * sin(2 * x.beta) * sin(2 * apg) * sin(x.theta);
      break;
    case ElementId::g22:
      value = g22_of(x, aux, g55_inner);
      break;
    case ElementId::g23:
      value = g55 / 4 * (3 + cos(2 * x.theta)) * sq(sin(2 * x.b));
      break;
    case ElementId::g24: {
      const cd v = g24_of(x, aux);
      require_finite(std::abs(v), id);
      return v;
    }
    case ElementId::g33:
      value = g55 * sq(sin(2 * x.b));
      break;
    case ElementId::g34:
      value = -g55 / 2 * cos(x.theta) * sin(4 * x.b) * sin(2 * apg);
      break;
    case ElementId::g44:
      value = g44_of(x, aux, g55_inner);
      break;
    case ElementId::g45:
      value = g55 * cos(2 * apg) * cos(x.theta);
      break;
    case ElementId::g46:
      value = aux.t * cos(2 * apg) * sin(2 * x.b) *
              (2 * cos(2 * x.theta1) - (cos(4 * x.theta2) - 3 * cos(2 * x.theta2)) * sq(sin(x.theta1))) *
              sin(x.theta) / (8 * aux.u_minus);
      break;
    case ElementId::g66:
      value = g66_of(x);
      break;
    case ElementId::g77:
      value = 1.0;
      break;
    case ElementId::g88:
      value = sq(sin(x.theta1));
      break;
  }
  require_finite(value, id);
  return value;
}

double closed_element_real(ElementId id, const AngleVector& angles, Reading reading) {
  const cd v = closed_element(id, angles, reading);
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
    std::ostringstream os;
    os << element_name(id) << ": imaginary part " << v.imag() << " is not negligible";
    throw DomainError(os.str());
  }
  return v.real();
}

// --- figure grids ------------------------------------------------------------

std::string_view figure_name(FigureQuantity q) noexcept {
  return q == FigureQuantity::g55 ? "g55" : "v_over_32u_minus";
}

FigureQuantity parse_figure(std::string_view name) {
  if (name == "g55") return FigureQuantity::g55;
  if (name == "v_over_32u_minus" || name == "g16-factor") return FigureQuantity::v_over_32u_minus;
  throw RangeError("unknown figure quantity '" + std::string(name) +
                   "' (expected g55 or v_over_32u_minus)");
}

double figure_value(FigureQuantity q, double theta1, double theta2) {
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  if (q == FigureQuantity::g55) {
    const double up = u_plus_of(theta1, theta2);
    if (std::abs(up) < 1e-14) return kNan;
    return g55_from(t_of(theta1, theta2), up);
  }
  const double um = u_minus_of(theta1, theta2);
  if (std::abs(um) < 1e-14) return kNan;
  return v_of(SpectralTrig(theta1, theta2)) / (32 * um);
}

std::vector<GridPoint> figure_grid(FigureQuantity q, std::size_t n1, std::size_t n2) {
  if (n1 < 2 || n2 < 2) throw RangeError("figure_grid: n1 and n2 must be at least 2");
  const double t1_hi = coordinate_range(Coordinate::theta1).hi;
  const double t2_hi = coordinate_range(Coordinate::theta2).hi;
  std::vector<GridPoint> out;
  out.reserve(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i) {
    const double t1 = i + 1 == n1 ? t1_hi : t1_hi * static_cast<double>(i) / static_cast<double>(n1 - 1);
    for (std::size_t j = 0; j < n2; ++j) {
      const double t2 = j + 1 == n2 ? t2_hi : t2_hi * static_cast<double>(j) / static_cast<double>(n2 - 1);
      out.push_back({t1, t2, figure_value(q, t1, t2)});
    }
  }
  return out;
}

// --- theta2 from g55 -----------------------------------------------------------

double g55_of(double theta1, double theta2) {
  return g55_from(t_of(theta1, theta2), u_plus_of(theta1, theta2));
}

namespace {

// Signed square root of g55; strictly increasing in theta2 on [0, pi/4].
double signed_root_g55(double theta1, double theta2) {
  return t_of(theta1, theta2) / (4 * std::sqrt(u_plus_of(theta1, theta2)));
}

std::optional<double> bisect_increasing(double theta1, double target) {
  double lo = 0.0;
  double hi = std::numbers::pi / 4;
  const double f_lo = signed_root_g55(theta1, lo) - target;
  const double f_hi = signed_root_g55(theta1, hi) - target;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (f_lo > 0.0 || f_hi < 0.0) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (signed_root_g55(theta1, mid) - target < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r_lo = std::abs(signed_root_g55(theta1, lo) - target);
  const double r_hi = std::abs(signed_root_g55(theta1, hi) - target);
  return r_lo <= r_hi ? lo : hi;
}

}  // namespace

Theta2Interval g55_slice_range(double theta1) {
  const double s0 = signed_root_g55(theta1, 0.0);
  const double s1 = signed_root_g55(theta1, std::numbers::pi / 4);
  const double hi = std::max(s0 * s0, s1 * s1);
  const double lo = (s0 <= 0.0 && s1 >= 0.0) ? 0.0 : std::min(s0 * s0, s1 * s1);
  return {lo, hi};
}

std::vector<double> theta2_roots_from_g55(double target, double theta1) {
  const AngleRange r1 = coordinate_range(Coordinate::theta1);
  if (!(theta1 >= r1.lo - 1e-12 && theta1 <= r1.hi + 1e-12)) {
    throw RangeError("theta2_from_g55: theta1 outside [0, arccos(1/sqrt 3)]");
  }
  std::vector<double> roots;
  if (target >= 0.0) {
    const double root = std::sqrt(target);
    if (auto r = bisect_increasing(theta1, -root)) roots.push_back(*r);
    if (auto r = bisect_increasing(theta1, root)) {
      if (roots.empty() || std::abs(*r - roots.back()) > 1e-14) roots.push_back(*r);
    }
  }
  if (roots.empty()) {
    const Theta2Interval range = g55_slice_range(theta1);
    std::ostringstream os;
    os.precision(17);
    os << "theta2_from_g55: target " << target << " is not achievable at theta1 = " << theta1
       << "; achievable g55 interval is [" << range.lo << ", " << range.hi << "]";
    throw DomainError(os.str());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double theta2_from_g55(double target, double theta1) {
  return theta2_roots_from_g55(target, theta1).front();
}

double theta2_inversion_as_printed(double g55, double theta1, double theta2_rhs) {
  const double c = cos(2 * theta2_rhs);
  const double inner = 4 + g55 + 4 * c + std::sqrt(g55) * std::sqrt(16 + g55 + 16 * c);
  const double arg = 2 * std::sqrt(2.0) * sin(theta1) / std::sqrt(inner);
  if (!(std::abs(arg) >= 1.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::acos(1.0 / arg);
}

// --- reductions --------------------------------------------------------------

ReducedElements reduced_elements(const AngleVector& x, ReductionSlice slice, Reading reading) {
  x.validate();
  constexpr double kTol = 1e-12;
  ReducedElements out{slice, 0.0, std::nullopt, std::nullopt};
  if (slice == ReductionSlice::beta_b_zero) {
    if (std::abs(x.beta) > kTol || std::abs(x.b) > kTol) {
      throw DomainError("reduced_elements: beta = b = 0 slice requires beta and b to vanish");
    }
    const double t1 = x.theta1, t2 = x.theta2;
    const double num = sq(-2 - 6 * cos(2 * t1) + cos(2 * (t1 - t2)) - 2 * cos(2 * t2) +
                          cos(2 * (t1 + t2))) *
                       sq(sin(2 * x.theta));
    const double first_cos = reading == Reading::corrected ? cos(2 * t1) : cos(2 * t2);
    out.g11_g12 = num / (64 * (3 + first_cos - 2 * cos(2 * t2) * sq(sin(t1))));
    out.g14 = 0.0;
    return out;
  }
  if (std::abs(x.beta) > kTol || std::abs(x.theta) > kTol) {
    throw DomainError("reduced_elements: beta = theta = 0 slice requires beta and theta to vanish");
  }
  const double g55 = g55_of(x.theta1, x.theta2);
  out.g11_g12 = g55 * sq(sin(2 * x.b));
  const double claimed = -g55 * sin(4 * x.b) * sin(2 * (x.a + x.gamma)) / 2;
  if (reading == Reading::corrected) {
    out.g14 = claimed;
  } else {
    out.g44 = claimed;
  }
  return out;
}

MetricTensor two_level_inverse(double x, double y, double z) {
  const double r2 = x * x + y * y + z * z;
  if (!(r2 < 1.0 - 1e-10)) {
    throw DomainError("two_level_inverse: point is on or outside the Bloch sphere");
  }
  return MetricTensor(3, {4 * (1 - x * x), -4 * x * y, -4 * x * z,
                          -4 * x * y, 4 * (1 - y * y), -4 * y * z,
                          -4 * x * z, -4 * y * z, 4 * (1 - z * z)});
}

}  // namespace bures
