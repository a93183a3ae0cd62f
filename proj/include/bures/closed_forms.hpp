#pragma once

// Closed-form Bures metric elements in the Euler-angle chart, their auxiliary
// functions of (theta1, theta2), figure grids, the theta2 <-> g55 inversion
// and the reduced forms on the beta = b = 0 and beta = theta = 0 slices.

#include <complex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "bures/metric.hpp"
#include "bures/su3.hpp"

namespace bures {

enum class ElementId {
  g13, g15, g16, g22, g23, g24, g33, g34, g44, g45, g46, g55, g66, g77, g88,
};

inline constexpr std::array<ElementId, 15> kAllElements = {
    ElementId::g13, ElementId::g15, ElementId::g16, ElementId::g22, ElementId::g23,
    ElementId::g24, ElementId::g33, ElementId::g34, ElementId::g44, ElementId::g45,
    ElementId::g46, ElementId::g55, ElementId::g66, ElementId::g77, ElementId::g88};

std::string_view element_name(ElementId id) noexcept;
/// Throws RangeError for unknown names.
ElementId parse_element(std::string_view name);
/// Tensor position (row, column) of the element.
std::pair<Coordinate, Coordinate> element_position(ElementId id) noexcept;

/// How a reference formula is read.
///   printed   - transcribed verbatim;
///   corrected - g22 and g44 with every g55 replaced by 4*g55, which is the
///               reading that agrees with the metric engines. Identical to
///               `printed` for every other element.
enum class Reading { printed, corrected };

struct AuxiliaryBundle {
  double t = 0.0;
  double u_plus = 0.0;
  double u_minus = 0.0;
  double v = 0.0;
  double kappa = 0.0;
  /// Unset within 1e-6 of theta2 = pi/4, where sec(2 theta2) has a pole.
  std::optional<double> upsilon;
  double mu = 0.0;
  double zeta = 0.0;
  std::complex<double> p;
  std::complex<double> q;
};

AuxiliaryBundle auxiliaries(const AngleVector& angles);

/// The element in its reference form. g24 is evaluated in complex arithmetic; every
/// other element has zero imaginary part. g77 = 1, g88 = sin^2 theta1.
/// Throws DomainError for g22 at the upsilon pole.
std::complex<double> closed_element(ElementId id, const AngleVector& angles,
                                    Reading reading = Reading::printed);

/// Real part of closed_element after checking the imaginary residue is below
/// 1e-12 * max(1, |Re|).
double closed_element_real(ElementId id, const AngleVector& angles,
                           Reading reading = Reading::printed);

// --- figure grids ------------------------------------------------------------

enum class FigureQuantity { g55, v_over_32u_minus };

std::string_view figure_name(FigureQuantity q) noexcept;
FigureQuantity parse_figure(std::string_view name);

struct GridPoint {
  double theta1;
  double theta2;
  double value;  // NaN where a denominator vanishes
};

/// Uniform n1 x n2 grid over theta1 in [0, arccos(1/sqrt 3)] and
/// theta2 in [0, pi/4], endpoints included, theta1 varying slowest.
std::vector<GridPoint> figure_grid(FigureQuantity q, std::size_t n1, std::size_t n2);

/// Value of one figure quantity at (theta1, theta2).
double figure_value(FigureQuantity q, double theta1, double theta2);

// --- theta2 from g55 ---------------------------------------------------------

/// g55 as a function of (theta1, theta2) only.
double g55_of(double theta1, double theta2);

struct Theta2Interval {
  double lo;
  double hi;
};

/// Range of g55 over theta2 in [0, pi/4] at fixed theta1.
Theta2Interval g55_slice_range(double theta1);

/// Every theta2 in [0, pi/4] with g55(theta1, theta2) = target. g55 = s^2 with
/// s = t / (4 sqrt(u_+)) strictly increasing in theta2, so there is at most one
/// root on each side of the zero of t. Roots are ascending.
/// Throws DomainError carrying the achievable interval if there is none.
std::vector<double> theta2_roots_from_g55(double target, double theta1);

/// Smallest root of theta2_roots_from_g55.
double theta2_from_g55(double target, double theta1);

/// The reference sec^-1 inversion, with the right-hand-side cos(2 theta2)
/// supplied by the caller. Diagnostic only: returns NaN when the sec^-1
/// argument has magnitude below one.
double theta2_inversion_as_printed(double g55, double theta1, double theta2_rhs);

// --- reductions --------------------------------------------------------------

enum class ReductionSlice { beta_b_zero, beta_theta_zero };

struct ReducedElements {
  ReductionSlice slice;
  /// Common value claimed for g11 and g12.
  double g11_g12 = 0.0;
  std::optional<double> g14;
  std::optional<double> g44;
};

/// beta = b = 0: g11 = g12 = reference quotient, g14 = 0.
/// beta = theta = 0: g11 = g12 = g55 sin^2 2b and the claimed
///   -g55 sin 4b sin 2(a + gamma) / 2, attached to g44 (printed) or to g14
///   (corrected). The corrected beta = b = 0 quotient uses cos 2theta1 in the
///   first denominator cosine, i.e. 64 u_-.
/// Throws DomainError if the slice constraint is violated beyond 1e-12.
ReducedElements reduced_elements(const AngleVector& angles, ReductionSlice slice,
                                 Reading reading = Reading::printed);

/// Closed-form inverse of the two-level Cartesian metric,
/// 4 [[1 - x^2, -xy, -xz], [-xy, 1 - y^2, -yz], [-xz, -yz, 1 - z^2]].
MetricTensor two_level_inverse(double x, double y, double z);

}  // namespace bures
