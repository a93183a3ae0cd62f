#include "bures/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "bures/error.hpp"

namespace bures {

namespace {

constexpr double kMinEigenvalue = 1e-10;
constexpr double kImagResidue = 1e-12;

void require_tangent(const ComplexMatrix& x, std::size_t n, const char* op) {
  if (x.rows() != n || x.cols() != n) {
    throw DimensionError(std::string(op) + ": tangent must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  const double scale = std::max(1.0, x.max_abs());
  if (hermiticity_defect(x) > 1e-8 * scale || std::abs(trace(x)) > 1e-8 * scale) {
    throw DomainError(std::string(op) + ": tangent must be Hermitian and traceless");
  }
}

// scale: magnitude of the largest term summed into v; cond: condition number of rho.
double real_part_checked(cplx v, double scale, double cond, const char* op) {
  if (std::abs(v.imag()) > kImagResidue * std::max(1.0, scale) * std::max(1.0, cond)) {
    std::ostringstream os;
    os << op << ": imaginary residue " << v.imag() << " exceeds tolerance";
    throw DomainError(os.str());
  }
  return v.real();
}

// Dittmann's 3x3 formula with the rho-dependent pieces precomputed.
class DittmannForm3 {
 public:
  explicit DittmannForm3(const ComplexMatrix& rho) : rho_(rho) {
    if (rho.rows() != 3 || rho.cols() != 3) {
      throw DimensionError("bures_quadratic_3x3: rho must be 3x3");
    }
    const EigenSystem eig = herm_eig(rho);
    if (eig.eigenvalues.front() <= kMinEigenvalue) {
      std::ostringstream os;
      os << "bures_quadratic_3x3: rho is singular (smallest eigenvalue " << eig.eigenvalues.front()
         << ")";
      throw DomainError(os.str());
    }
    const double tr3 = trace(rho * rho * rho).real();
    if (!(tr3 < 1.0 - 1e-12)) {
      throw DomainError("bures_quadratic_3x3: rho is pure (Tr rho^3 = 1)");
    }
    cond_ = eig.eigenvalues.back() / eig.eigenvalues.front();
    const double det = determinant(rho).real();
    c1_ = 3.0 / (1.0 - tr3);
    c2_ = 3.0 * det / (1.0 - tr3);
    rho_inv_ = inverse(rho);
  }

  double operator()(const ComplexMatrix& x) const {
    require_tangent(x, 3, "bures_quadratic_3x3");
    const ComplexMatrix a = x - rho_ * x;
    const ComplexMatrix b = x - rho_inv_ * x;
    const cplx t0 = trace(x * x);
    const cplx t1 = c1_ * trace(a * a);
    const cplx t2 = c2_ * trace(b * b);
    const double scale = 0.25 * std::max({std::abs(t0), std::abs(t1), std::abs(t2)});
    return real_part_checked(0.25 * (t0 + t1 + t2), scale, cond_, "bures_quadratic_3x3");
  }

 private:
  ComplexMatrix rho_;
  ComplexMatrix rho_inv_;
  double cond_ = 1.0;
  double c1_ = 0.0;
  double c2_ = 0.0;
};

class DittmannForm2 {
 public:
  explicit DittmannForm2(const ComplexMatrix& rho) : rho_(rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
      throw DimensionError("bures_quadratic_2x2: rho must be 2x2");
    }
    det_ = determinant(rho).real();
    if (!(det_ > 1e-12)) {
      std::ostringstream os;
      os << "bures_quadratic_2x2: |rho| = " << det_ << " (pure or invalid state)";
      throw DomainError(os.str());
    }
  }

  double operator()(const ComplexMatrix& x) const {
    require_tangent(x, 2, "bures_quadratic_2x2");
    const ComplexMatrix a = x - rho_ * x;
    const cplx t0 = trace(x * x);
    const cplx t1 = trace(a * a) / det_;
    const double scale = 0.25 * std::max(std::abs(t0), std::abs(t1));
    return real_part_checked(0.25 * (t0 + t1), scale, 1.0 / det_, "bures_quadratic_2x2");
  }

 private:
  ComplexMatrix rho_;
  double det_ = 0.0;
};

template <class QuadraticForm>
MetricTensor polarize(const QuadraticForm& q, std::span<const ComplexMatrix> tangents) {
  const std::size_t n = tangents.size();
  MetricTensor g(n);
  std::vector<double> diag(n);
  for (std::size_t j = 0; j < n; ++j) {
    diag[j] = q(tangents[j]);
    g(j, j) = diag[j];
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double v = 0.5 * (q(tangents[j] + tangents[k]) - diag[j] - diag[k]);
      g(j, k) = v;
      g(k, j) = v;
    }
  }
  return g;
}

MetricTensor bilinear_tensor(const EigenBuresForm& form, std::span<const ComplexMatrix> tangents) {
  const std::size_t n = tangents.size();
  MetricTensor g(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      const double v = form(tangents[j], tangents[k]);
      g(j, k) = v;
      g(k, j) = v;
    }
  }
  return g;
}

void require_bloch_interior(double r2) {
  if (!(r2 < 1.0 - 1e-10)) {
    std::ostringstream os;
    os << "two-level metric: r^2 = " << r2 << " is on or outside the Bloch sphere (pure state)";
    throw DomainError(os.str());
  }
}

}  // namespace

// --- MetricTensor ------------------------------------------------------------

MetricTensor::MetricTensor(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

MetricTensor::MetricTensor(std::size_t dim, std::vector<double> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim * dim) throw DimensionError("MetricTensor: entry count mismatch");
}

double MetricTensor::symmetry_defect() const noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) d = std::max(d, std::abs((*this)(i, j) - (*this)(j, i)));
  }
  return d;
}

double MetricTensor::min_eigenvalue() const {
  ComplexMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
  }
  return herm_eig(m).eigenvalues.front();
}

void MetricTensor::check_invariants() const {
  const double asym = symmetry_defect();
  if (asym > 1e-12) {
    throw DomainError("metric tensor is not symmetric (defect " + std::to_string(asym) + ")");
  }
  const double lo = min_eigenvalue();
  if (lo < -1e-10) {
    throw DomainError("metric tensor is not positive semidefinite (eigenvalue " +
                      std::to_string(lo) + ")");
  }
}

double max_abs_diff(const MetricTensor& a, const MetricTensor& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: tensor dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return d;
}

// --- engines -------------------------------------------------------------------

std::string_view engine_name(EngineKind e) noexcept {
  switch (e) {
    case EngineKind::dittmann_trace: return "dittmann-trace";
    case EngineKind::eigen: return "eigen";
    case EngineKind::finite_difference: return "finite-difference-cross-check";
  }
  return "?";
}

EngineKind parse_engine(std::string_view name) {
  if (name == "dittmann-trace" || name == "trace") return EngineKind::dittmann_trace;
  if (name == "eigen") return EngineKind::eigen;
  if (name == "finite-difference-cross-check" || name == "fd") return EngineKind::finite_difference;
  throw RangeError("unknown engine '" + std::string(name) +
                   "' (expected dittmann-trace, eigen or finite-difference-cross-check)");
}

double bures_quadratic_2x2(const ComplexMatrix& rho, const ComplexMatrix& x) {
  return DittmannForm2(rho)(x);
}

double bures_quadratic_3x3(const ComplexMatrix& rho, const ComplexMatrix& x) {
  return DittmannForm3(rho)(x);
}

EigenBuresForm::EigenBuresForm(const ComplexMatrix& rho) : eig_(herm_eig(rho)) {
  if (eig_.eigenvalues.front() <= kMinEigenvalue) {
    std::ostringstream os;
    os << "eigen engine: rho is rank-deficient (smallest eigenvalue " << eig_.eigenvalues.front()
       << ")";
    throw DomainError(os.str());
  }
  v_dag_ = adjoint(eig_.eigenvectors);
}

ComplexMatrix EigenBuresForm::to_eigenbasis(const ComplexMatrix& m) const {
  return v_dag_ * m * eig_.eigenvectors;
}

double EigenBuresForm::operator()(const ComplexMatrix& x, const ComplexMatrix& y) const {
  const std::size_t n = eig_.eigenvalues.size();
  if (x.rows() != n || y.rows() != n || x.cols() != n || y.cols() != n) {
    throw DimensionError("eigen engine: tangent dimension does not match rho");
  }
  const ComplexMatrix xt = to_eigenbasis(x);
  const ComplexMatrix yt = x == y ? xt : to_eigenbasis(y);
  const auto& l = eig_.eigenvalues;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s += (xt(i, j) * yt(j, i)).real() / (l[i] + l[j]);
  }
  return 0.5 * s;
}

double bures_bilinear_eig(const ComplexMatrix& rho, const ComplexMatrix& x, const ComplexMatrix& y) {
  return EigenBuresForm(rho)(x, y);
}

MetricTensor metric_from_tangents(const ComplexMatrix& rho, std::span<const ComplexMatrix> tangents,
                                  EngineKind engine) {
  switch (engine) {
    case EngineKind::dittmann_trace:
      if (rho.rows() == 3) return polarize(DittmannForm3(rho), tangents);
      if (rho.rows() == 2) return polarize(DittmannForm2(rho), tangents);
      throw DimensionError("dittmann-trace engine is available for 2x2 and 3x3 states only");
    case EngineKind::eigen:
    case EngineKind::finite_difference:
      return bilinear_tensor(EigenBuresForm(rho), tangents);
  }
  throw Error("unreachable engine");
}

MetricTensor metric_tensor(const AngleVector& angles, EngineKind engine) {
  const ComplexMatrix rho = build_rho(angles);
  if (engine == EngineKind::finite_difference) {
    std::array<ComplexMatrix, kNumCoordinates> t;
    for (Coordinate c : kAllCoordinates) t[index_of(c)] = tangent_fd(angles, c);
    return metric_from_tangents(rho, t, engine);
  }
  const auto t = tangents_analytic(angles);
  return metric_from_tangents(rho, t, engine);
}

// --- two-level ---------------------------------------------------------------

ComplexMatrix two_level_rho(const Cartesian& p) {
  return {{0.5 * (1.0 + p.z), cplx{0.5 * p.x, 0.5 * p.y}},
          {cplx{0.5 * p.x, -0.5 * p.y}, 0.5 * (1.0 - p.z)}};
}

std::array<ComplexMatrix, 3> two_level_tangents() {
  return {ComplexMatrix{{0.0, 0.5}, {0.5, 0.0}},
          ComplexMatrix{{0.0, cplx{0.0, 0.5}}, {cplx{0.0, -0.5}, 0.0}},
          ComplexMatrix{{0.5, 0.0}, {0.0, -0.5}}};
}

MetricTensor two_level_metric_closed(const Cartesian& p) {
  const double x = p.x, y = p.y, z = p.z;
  const double r2 = x * x + y * y + z * z;
  require_bloch_interior(r2);
  const double f = 1.0 / (4.0 * (1.0 - r2));
  return MetricTensor(3, {f * (1.0 - y * y - z * z), f * x * y, f * x * z,
                          f * x * y, f * (1.0 - x * x - z * z), f * y * z,
                          f * x * z, f * y * z, f * (1.0 - x * x - y * y)});
}

MetricTensor two_level_metric_trace(const Cartesian& p) {
  require_bloch_interior(p.x * p.x + p.y * p.y + p.z * p.z);
  const auto t = two_level_tangents();
  return polarize(DittmannForm2(two_level_rho(p)), t);
}

Cartesian to_cartesian(const Spherical& s) noexcept {
  return {s.r * std::sin(s.theta) * std::cos(s.phi), s.r * std::sin(s.theta) * std::sin(s.phi),
          s.r * std::cos(s.theta)};
}

MetricTensor two_level_metric(const TwoLevelChart& coords) {
  if (const auto* c = std::get_if<Cartesian>(&coords)) {
    MetricTensor g = two_level_metric_closed(*c);
    const MetricTensor check = two_level_metric_trace(*c);
    double scale = 1.0;
    for (double v : g.entries()) scale = std::max(scale, std::abs(v));
    if (max_abs_diff(g, check) > 1e-10 * scale) {
      throw Error("two-level metric: closed form and trace formula disagree");
    }
    return g;
  }
  const auto& s = std::get<Spherical>(coords);
  if (s.r < 0.0) throw RangeError("two-level metric: r must be non-negative");
  require_bloch_interior(s.r * s.r);
  const double sin_t = std::sin(s.theta);
  MetricTensor g(3);
  g(0, 0) = 1.0 / (4.0 * (1.0 - s.r * s.r));
  g(1, 1) = s.r * s.r / 4.0;
  g(2, 2) = s.r * s.r * sin_t * sin_t / 4.0;
  return g;
}

double volume_element(const MetricTensor& g) {
  double scale = 1.0;
  for (double v : g.entries()) scale = std::max(scale, std::abs(v));
  if (g.symmetry_defect() > 1e-12 * scale) {
    throw DomainError("volume_element: metric tensor is not symmetric");
  }
  ComplexMatrix m(g.dim(), g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) m(i, j) = g(i, j);
  }
  return std::sqrt(std::max(determinant(m).real(), 0.0));
}

MetricTensor pullback(const MetricTensor& g, std::span<const double> jacobian) {
  const std::size_t n = g.dim();
  if (jacobian.size() != n * n) throw DimensionError("pullback: Jacobian size mismatch");
  auto jac = [&](std::size_t i, std::size_t j) { return jacobian[i * n + j]; };
  MetricTensor out(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p; q < n; ++q) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double jip = jac(i, p);
        if (jip == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) s += jip * g(i, j) * jac(j, q);
      }
      out(p, q) = s;
      out(q, p) = s;
    }
  }
  return out;
}

}  // namespace bures
