#pragma once

// Small dense complex matrices and a cyclic Jacobi Hermitian eigensolver.
// Sized for 2x2 and 3x3 density matrices; anything up to ~8x8 works.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace bures {

using cplx = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  /// Row-major nested initializer, e.g. {{1, 0}, {0, 1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(const std::vector<cplx>& diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  const std::vector<cplx>& entries() const noexcept { return data_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  /// Largest entrywise modulus.
  double max_abs() const noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix m, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Standard product; throws DimensionError when a.cols() != b.rows().
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);
/// Cofactor expansion for n <= 3, LU with partial pivoting above.
cplx determinant(const ComplexMatrix& a);
/// Gauss-Jordan with partial pivoting. Throws SingularMatrixError when
/// |det| <= 1e-14 * max|entry|^n.
ComplexMatrix inverse(const ComplexMatrix& a);

/// max_ij |a_ij - conj(a_ji)|
double hermiticity_defect(const ComplexMatrix& a);
/// max_ij |a_ij - b_ij|; throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns are unit eigenvectors
};

struct JacobiOptions {
  double threshold = 1e-14;
  int max_sweeps = 100;
  double hermitian_tolerance = 1e-12;
};

/// Cyclic Jacobi on a complex Hermitian matrix. The input is checked for
/// Hermiticity and then symmetrized as (H + H^dagger)/2.
EigenSystem herm_eig(const ComplexMatrix& h, const JacobiOptions& opts = {});

}  // namespace bures
