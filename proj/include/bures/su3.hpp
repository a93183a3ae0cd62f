#pragma once

// Euler-angle parameterization of 3x3 density matrices:
//   rho = U rho' U^dagger,
//   U   = e^{i l3 alpha} e^{i l2 beta} e^{i l3 gamma} e^{i l5 theta} e^{i l3 a} e^{i l2 b},
//   rho' = diag(cos^2 t1, sin^2 t1 cos^2 t2, sin^2 t1 sin^2 t2).

#include <array>
#include <cstdint>
#include <string_view>

#include "bures/linalg.hpp"

namespace bures {

/// Tensor index ordering (alpha, gamma, a, beta, b, theta, theta1, theta2).
enum class Coordinate : int {
  alpha = 0,
  gamma = 1,
  a = 2,
  beta = 3,
  b = 4,
  theta = 5,
  theta1 = 6,
  theta2 = 7,
};

inline constexpr std::size_t kNumCoordinates = 8;

inline constexpr std::array<Coordinate, kNumCoordinates> kAllCoordinates = {
    Coordinate::alpha, Coordinate::gamma, Coordinate::a,      Coordinate::beta,
    Coordinate::b,     Coordinate::theta, Coordinate::theta1, Coordinate::theta2};

constexpr std::size_t index_of(Coordinate c) noexcept { return static_cast<std::size_t>(c); }

/// 1-based index used in element names (g13 = alpha,a).
constexpr int one_based(Coordinate c) noexcept { return static_cast<int>(c) + 1; }

/// Throws RangeError unless 1 <= k <= 8.
Coordinate coordinate_from_one_based(int k);

std::string_view coordinate_name(Coordinate c) noexcept;

struct AngleRange {
  double lo;
  double hi;
};

/// Closed chart range for each coordinate.
AngleRange coordinate_range(Coordinate c) noexcept;

struct AngleVector {
  double alpha = 0.0;
  double gamma = 0.0;
  double a = 0.0;
  double beta = 0.0;
  double b = 0.0;
  double theta = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;

  double& operator[](Coordinate c) noexcept;
  double operator[](Coordinate c) const noexcept;

  std::array<double, kNumCoordinates> to_array() const noexcept;
  static AngleVector from_array(const std::array<double, kNumCoordinates>& v) noexcept;

  /// Throws RangeError naming the first out-of-range coordinate and its legal
  /// interval. Ranges are closed with tolerance 1e-12.
  void validate() const;
  bool in_range() const noexcept;

  friend bool operator==(const AngleVector&, const AngleVector&) = default;
};

/// theta1 = arccos(1/sqrt(3)), theta2 = pi/4; remaining angles as given.
AngleVector maximally_mixed_point(AngleVector base = {});

/// Gell-Mann matrices lambda_2, lambda_3, lambda_5. Other k throw RangeError.
ComplexMatrix gell_mann(int k);

/// Closed-form e^{i lambda_k t}, k in {2, 3, 5}.
ComplexMatrix factor_exp(int k, double t);

ComplexMatrix build_unitary(const AngleVector& angles);
ComplexMatrix build_rho_prime(double theta1, double theta2);
/// Hermitian-symmetrized U rho' U^dagger. Validates ranges.
ComplexMatrix build_rho(const AngleVector& angles);

/// d rho / d x_k from the product rule on U.
ComplexMatrix tangent_analytic(const AngleVector& angles, Coordinate k);

inline constexpr double kDefaultFdStep = 1e-6;

/// Central difference (rho(x + h e_k) - rho(x - h e_k)) / 2h. Throws RangeError
/// if x_k is closer than h to its range boundary.
ComplexMatrix tangent_fd(const AngleVector& angles, Coordinate k, double h = kDefaultFdStep);

/// All eight analytic tangents, in coordinate order.
std::array<ComplexMatrix, kNumCoordinates> tangents_analytic(const AngleVector& angles);

inline constexpr double kDefaultMargin = 0.05;

/// Deterministic point drawn uniformly on each range shrunk by
/// margin*(hi - lo) at both ends. Requires 0 < margin < 0.5.
AngleVector sample_interior(std::uint64_t seed, double margin = kDefaultMargin);

/// Per-sample seed derived from a campaign seed and sample index.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace bures
