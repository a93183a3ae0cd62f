#pragma once

// Bures metric evaluators.
//
// Three routes to the same quadratic form d_B(rho, rho + X)^2:
//   * Dittmann's explicit trace formulas (2x2 and 3x3), no eigenvalues needed;
//   * the eigenbasis sum (1/2) sum_ij |<i|X|j>|^2 / (l_i + l_j), any n;
//   * the eigen sum applied to finite-difference tangents (cross-check only).
//
// Tensor entries follow ds^2 = sum_jk g_jk dx_j dx_k, so off-diagonal entries
// are the polarized bilinear form B(d_j rho, d_k rho).

#include <array>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "bures/linalg.hpp"
#include "bures/su3.hpp"

namespace bures {

class MetricTensor {
 public:
  MetricTensor() = default;
  explicit MetricTensor(std::size_t dim);
  MetricTensor(std::size_t dim, std::vector<double> entries);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<double>& entries() const noexcept { return data_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  double operator()(Coordinate i, Coordinate j) const { return (*this)(index_of(i), index_of(j)); }

  /// max |g_ij - g_ji|
  double symmetry_defect() const noexcept;
  double min_eigenvalue() const;
  /// Throws DomainError unless symmetric to 1e-12 and eigenvalues >= -1e-10.
  void check_invariants() const;

  friend bool operator==(const MetricTensor&, const MetricTensor&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

double max_abs_diff(const MetricTensor& a, const MetricTensor& b);

enum class EngineKind {
  dittmann_trace,
  eigen,
  finite_difference,
};

std::string_view engine_name(EngineKind e) noexcept;
/// Accepts "dittmann-trace", "eigen", "finite-difference-cross-check" (and
/// the short forms "trace", "fd"). Throws RangeError otherwise.
EngineKind parse_engine(std::string_view name);

/// 1/4 Tr{ X X + |rho|^-1 (X - rho X)(X - rho X) } for a mixed 2x2 state.
double bures_quadratic_2x2(const ComplexMatrix& rho, const ComplexMatrix& x);

/// 1/4 Tr{ X X + 3/(1 - Tr rho^3) (X - rho X)(X - rho X)
///            + 3|rho|/(1 - Tr rho^3) (X - rho^-1 X)(X - rho^-1 X) }.
double bures_quadratic_3x3(const ComplexMatrix& rho, const ComplexMatrix& x);

/// Precomputed eigenbasis of rho for repeated bilinear evaluations.
class EigenBuresForm {
 public:
  /// Throws DomainError if any eigenvalue of rho is <= 1e-10.
  explicit EigenBuresForm(const ComplexMatrix& rho);

  /// (1/2) sum_ij Re[<i|X|j><j|Y|i>] / (l_i + l_j)
  double operator()(const ComplexMatrix& x, const ComplexMatrix& y) const;

  const EigenSystem& eigensystem() const noexcept { return eig_; }

 private:
  ComplexMatrix to_eigenbasis(const ComplexMatrix& m) const;

  EigenSystem eig_;
  ComplexMatrix v_dag_;
};

double bures_bilinear_eig(const ComplexMatrix& rho, const ComplexMatrix& x, const ComplexMatrix& y);

/// Full 8x8 tensor in the Euler-angle chart.
MetricTensor metric_tensor(const AngleVector& angles, EngineKind engine);

/// Tensor from a precomputed state and tangent set (any dimension).
MetricTensor metric_from_tangents(const ComplexMatrix& rho, std::span<const ComplexMatrix> tangents,
                                  EngineKind engine);

// --- two-level systems -----------------------------------------------------

struct Cartesian {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct Spherical {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

using TwoLevelChart = std::variant<Cartesian, Spherical>;

/// rho = 1/2 [[1 + z, x + iy], [x - iy, 1 - z]]
ComplexMatrix two_level_rho(const Cartesian& p);
/// d rho/dx, d rho/dy, d rho/dz
std::array<ComplexMatrix, 3> two_level_tangents();

/// Closed form 1/(4(1 - r^2)) [[1 - y^2 - z^2, xy, xz], ...].
MetricTensor two_level_metric_closed(const Cartesian& p);
/// Polarization of the 2x2 trace formula on the Bloch parameterization.
MetricTensor two_level_metric_trace(const Cartesian& p);

/// Cartesian: closed form, cross-checked against the trace formula.
/// Spherical: diag(1/(4(1 - r^2)), r^2/4, r^2 sin^2(theta)/4).
/// Throws DomainError unless r^2 < 1 - 1e-10.
MetricTensor two_level_metric(const TwoLevelChart& coords);

Cartesian to_cartesian(const Spherical& s) noexcept;

/// sqrt(max(det g, 0)); throws DomainError for asymmetric input.
double volume_element(const MetricTensor& g);

/// J^T g J for a square Jacobian J (row-major, dim x dim).
MetricTensor pullback(const MetricTensor& g, std::span<const double> jacobian);

}  // namespace bures
