#include "bures/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "bures/error.hpp"

namespace bures {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One deviation per key; nullopt means the key was not evaluated at this sample.
using SampleDevs = std::vector<std::optional<double>>;

struct KeySpec {
  std::string name;
  std::optional<double> tolerance;
};

struct Evaluated {
  std::vector<SampleDevs> devs;
  std::vector<std::string> errors;  // per sample, empty when evaluation succeeded
};

Evaluated evaluate(const std::vector<AngleVector>& points, std::size_t nkeys,
                   const std::function<SampleDevs(const AngleVector&)>& fn, Execution exec) {
  struct Out {
    SampleDevs devs;
    std::string error;
  };
  auto results = parallel_map<Out>(
      points.size(),
      [&](std::size_t i) {
        Out o;
        try {
          o.devs = fn(points[i]);
        } catch (const Error& e) {
          o.devs.assign(nkeys, kInf);
          o.error = e.what();
        }
        return o;
      },
      exec);
  Evaluated ev;
  ev.devs.reserve(points.size());
  ev.errors.reserve(points.size());
  for (auto& r : results) {
    ev.devs.push_back(std::move(r.devs));
    ev.errors.push_back(std::move(r.error));
  }
  return ev;
}

ValidationReport named(std::string name) {
  ValidationReport r;
  r.name = std::move(name);
  return r;
}

double as_deviation(double d) { return std::isnan(d) ? kInf : d; }

double ratio(double dev, double tol) {
  if (dev == 0.0) return 0.0;
  return tol > 0.0 ? dev / tol : kInf;
}

void add_error_notes(ValidationReport& r, const Evaluated& ev) {
  std::size_t failures = 0;
  std::string first;
  for (const auto& e : ev.errors) {
    if (e.empty()) continue;
    if (failures++ == 0) first = e;
  }
  if (failures > 0) {
    r.notes.push_back(std::to_string(failures) + " sample(s) outside the evaluation domain; first: " +
                      first);
  }
}

// Reduce per-sample deviations into per-key details. The first sample reaching
// the maximum is the worst point.
void reduce_keys(ValidationReport& r, const std::vector<AngleVector>& points,
                 const std::vector<KeySpec>& keys, const Evaluated& ev) {
  for (std::size_t k = 0; k < keys.size(); ++k) {
    ElementDetail d;
    bool first = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (k >= ev.devs[i].size() || !ev.devs[i][k]) continue;
      const double v = as_deviation(*ev.devs[i][k]);
      ++d.samples;
      if (first || v > d.max_deviation) {
        d.max_deviation = v;
        d.worst_point = points[i];
        first = false;
      }
    }
    d.tolerance = keys[k].tolerance;
    if (d.tolerance) d.passed = d.max_deviation <= *d.tolerance;
    r.per_element[keys[k].name] = d;
  }
  r.samples = points.size();
  add_error_notes(r, ev);
}

// Single-tolerance report: the headline is the max over all keys.
void finish_simple(ValidationReport& r, double tolerance) {
  r.tolerance = tolerance;
  r.normalized = false;
  bool first = true;
  for (const auto& [name, d] : r.per_element) {
    if (!d.tolerance) continue;
    if (first || d.max_deviation > r.max_deviation) {
      r.max_deviation = d.max_deviation;
      r.worst_point = d.worst_point;
      first = false;
    }
  }
  r.passed = r.max_deviation <= tolerance;
}

// Multi-tolerance report: headline is max dev/tol over keys that carry one.
void finish_composite(ValidationReport& r) {
  r.tolerance = 1.0;
  r.normalized = true;
  r.max_deviation = 0.0;
  bool first = true;
  for (const auto& [name, d] : r.per_element) {
    if (!d.tolerance) continue;
    const double q = ratio(d.max_deviation, *d.tolerance);
    if (first || q > r.max_deviation) {
      r.max_deviation = q;
      r.worst_point = d.worst_point;
      first = false;
    }
  }
  r.passed = r.max_deviation <= 1.0;
}

std::string entry_name(Coordinate i, Coordinate j) {
  return "g" + std::to_string(one_based(i)) + std::to_string(one_based(j));
}

std::array<double, kNumCoordinates * kNumCoordinates> tau_jacobian() {
  std::array<double, kNumCoordinates * kNumCoordinates> j{};
  for (std::size_t i = 0; i < kNumCoordinates; ++i) j[i * kNumCoordinates + i] = 1.0;
  // gamma = tau - a
  j[index_of(Coordinate::gamma) * kNumCoordinates + index_of(Coordinate::a)] = -1.0;
  return j;
}

// Move the Euler point along `param` of the given chart by `delta`.
AngleVector shifted(AngleVector x, Coordinate param, Chart chart, double delta) {
  x[param] += delta;
  if (chart == Chart::tau_shifted && param == Coordinate::a) x.gamma -= delta;
  return x;
}

MetricTensor chart_tensor(const AngleVector& x, Chart chart) {
  return chart == Chart::euler ? metric_tensor(x, EngineKind::eigen) : tau_chart_tensor(x);
}

std::string format_point(const Cartesian& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

std::uint64_t splitmix(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_uniform(std::uint64_t& state) noexcept {
  return static_cast<double>(splitmix(state) >> 11) * 0x1.0p-53;
}

}  // namespace

// --- spec / roles ------------------------------------------------------------

void CheckSpec::validate() const {
  if (sample_count < 1) throw RangeError("CheckSpec: sample_count must be >= 1");
  if (!(tolerance > 0.0)) throw RangeError("CheckSpec: tolerance must be positive");
  if (!(margin > 0.0 && margin < 0.5)) throw RangeError("CheckSpec: margin must lie in (0, 0.5)");
}

std::string_view role_name(CheckRole r) noexcept {
  switch (r) {
    case CheckRole::mandatory: return "mandatory";
    case CheckRole::informational: return "informational";
    case CheckRole::negative_control: return "negative-control";
  }
  return "?";
}

const std::vector<std::pair<Coordinate, Coordinate>>& zero_pattern_positions() {
  static const std::vector<std::pair<Coordinate, Coordinate>> positions = [] {
    constexpr int kZeros[][2] = {{1, 7}, {1, 8}, {2, 5}, {2, 6}, {2, 7}, {2, 8},
                                 {3, 5}, {3, 6}, {3, 7}, {3, 8}, {4, 7}, {4, 8},
                                 {5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}, {7, 8}};
    std::vector<std::pair<Coordinate, Coordinate>> v;
    for (const auto& z : kZeros) {
      v.emplace_back(coordinate_from_one_based(z[0]), coordinate_from_one_based(z[1]));
    }
    return v;
  }();
  return positions;
}

std::vector<AngleVector> check_points(const CheckSpec& spec) {
  spec.validate();
  if (spec.point) return {*spec.point};
  return sample_batch(spec.seed, spec.sample_count, spec.margin);
}

// --- individual checks -------------------------------------------------------

ValidationReport check_engine_agreement(const CheckSpec& spec) {
  ValidationReport r = named(spec.name.empty() ? "engine-agreement" : spec.name);
  const auto points = check_points(spec);
  std::vector<KeySpec> keys = {{"max_entry", spec.tolerance}};
  const auto ev = evaluate(
      points, keys.size(),
      [](const AngleVector& x) -> SampleDevs {
        const MetricTensor gt = metric_tensor(x, EngineKind::dittmann_trace);
        const MetricTensor ge = metric_tensor(x, EngineKind::eigen);
        return {max_abs_diff(gt, ge)};
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_simple(r, spec.tolerance);
  if (spec.point) {
    try {
      const MetricTensor g = metric_tensor(*spec.point, EngineKind::eigen);
      if (g.min_eigenvalue() < 1e-12) {
        r.notes.push_back(
            "degenerate point: tensor is rank-deficient (unitary tangents vanish at the maximally "
            "mixed state); both engines remain inside their domains");
      }
    } catch (const Error& e) {
      r.notes.push_back(std::string("eigen engine excluded at this point: ") + e.what());
    }
  }
  return r;
}

ValidationReport check_fixed_entries(const CheckSpec& spec) {
  ValidationReport r = named(spec.name.empty() ? "fixed-entries" : spec.name);
  const auto points = check_points(spec);
  std::vector<KeySpec> keys = {{"g77", spec.tolerance}, {"g88", spec.tolerance}};
  const auto ev = evaluate(
      points, keys.size(),
      [](const AngleVector& x) -> SampleDevs {
        const MetricTensor g = metric_tensor(x, EngineKind::eigen);
        const double s = std::sin(x.theta1);
        return {std::abs(g(Coordinate::theta1, Coordinate::theta1) - 1.0),
                std::abs(g(Coordinate::theta2, Coordinate::theta2) - s * s)};
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_simple(r, spec.tolerance);
  return r;
}

ValidationReport check_zero_pattern(const CheckSpec& spec) {
  return check_zero_pattern(spec, zero_pattern_positions());
}

ValidationReport check_zero_pattern(const CheckSpec& spec,
                                    const std::vector<std::pair<Coordinate, Coordinate>>& positions) {
  ValidationReport r = named(spec.name.empty() ? "zero-pattern" : spec.name);
  const auto points = check_points(spec);
  std::vector<KeySpec> keys;
  for (const auto& [i, j] : positions) keys.push_back({entry_name(i, j), spec.tolerance});
  const auto ev = evaluate(
      points, keys.size(),
      [&](const AngleVector& x) -> SampleDevs {
        const MetricTensor g = metric_tensor(x, EngineKind::eigen);
        SampleDevs d;
        for (const auto& [i, j] : positions) d.push_back(std::abs(g(i, j)));
        return d;
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_simple(r, spec.tolerance);
  r.notes.push_back(std::to_string(positions.size()) + " positions checked");
  return r;
}

ValidationReport check_parameter_independence(const CheckSpec& spec, Coordinate param, Chart chart,
                                              double step) {
  ValidationReport r = named(spec.name.empty()
                         ? std::string(coordinate_name(param)) + "-independence"
                         : spec.name);
  const auto points = check_points(spec);
  std::vector<KeySpec> keys;
  for (std::size_t i = 0; i < kNumCoordinates; ++i) {
    for (std::size_t j = i; j < kNumCoordinates; ++j) {
      keys.push_back({entry_name(kAllCoordinates[i], kAllCoordinates[j]), spec.tolerance});
    }
  }
  const auto ev = evaluate(
      points, keys.size(),
      [&](const AngleVector& x) -> SampleDevs {
        const MetricTensor gp = chart_tensor(shifted(x, param, chart, step), chart);
        const MetricTensor gm = chart_tensor(shifted(x, param, chart, -step), chart);
        SampleDevs d;
        for (std::size_t i = 0; i < kNumCoordinates; ++i) {
          for (std::size_t j = i; j < kNumCoordinates; ++j) {
            d.push_back(std::abs(gp(i, j) - gm(i, j)) / (2.0 * step));
          }
        }
        return d;
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_simple(r, spec.tolerance);
  if (chart == Chart::tau_shifted) r.notes.push_back("tau-shifted chart (gamma = tau - a)");
  return r;
}

MetricTensor tau_chart_tensor(const AngleVector& angles, EngineKind engine) {
  const auto jac = tau_jacobian();
  return pullback(metric_tensor(angles, engine), jac);
}

MetricTensor tau_chart_tensor_recomputed(const AngleVector& angles) {
  auto t = tangents_analytic(angles);
  const ComplexMatrix d_gamma = t[index_of(Coordinate::gamma)];
  // d/dtau at fixed a is d/dgamma; d/da at fixed tau is d/da - d/dgamma.
  t[index_of(Coordinate::a)] = t[index_of(Coordinate::a)] - d_gamma;
  return metric_from_tangents(build_rho(angles), t, EngineKind::dittmann_trace);
}

ValidationReport check_reparameterization(const CheckSpec& spec) {
  ValidationReport r = named(spec.name.empty() ? "reparameterization" : spec.name);
  const auto points = check_points(spec);
  const std::vector<KeySpec> keys = {
      {"a_independence", spec.tolerance},
      {"tilde_g_bb_vs_g55", 1e-10},
      {"tilde_g_tau_a_vs_g_gamma_a", 1e-8},
      {"recomputed_vs_chain_rule", 1e-8},
  };
  const auto ev = evaluate(
      points, keys.size(),
      [&](const AngleVector& x) -> SampleDevs {
        const double h = kIndependenceStep;
        const MetricTensor gp = tau_chart_tensor(shifted(x, Coordinate::a, Chart::tau_shifted, h));
        const MetricTensor gm = tau_chart_tensor(shifted(x, Coordinate::a, Chart::tau_shifted, -h));
        double dmax = 0.0;
        for (std::size_t i = 0; i < gp.entries().size(); ++i) {
          dmax = std::max(dmax, std::abs(gp.entries()[i] - gm.entries()[i]) / (2.0 * h));
        }
        const MetricTensor g = metric_tensor(x, EngineKind::eigen);
        const MetricTensor gt = pullback(g, tau_jacobian());
        const double bb = std::abs(gt(Coordinate::b, Coordinate::b) -
                                   closed_element_real(ElementId::g55, x));
        // In the tau chart the second index slot carries tau.
        const double tau_a = std::abs(gt(Coordinate::gamma, Coordinate::a) -
                                      g(Coordinate::gamma, Coordinate::a));
        const double recomputed = max_abs_diff(tau_chart_tensor_recomputed(x), gt);
        return {dmax, bb, tau_a, recomputed};
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_composite(r);
  r.notes.push_back(
      "chain rule: tilde g_{tau a} = g_{gamma a} - g_{gamma gamma}; the tau_a key measures "
      "|tilde g_{tau a} - g_{gamma a}|");
  return r;
}

ValidationReport check_closed_forms(const CheckSpec& spec, Reading reading) {
  ValidationReport r = named(spec.name.empty()
                         ? std::string("closed-forms-") +
                               (reading == Reading::printed ? "printed" : "corrected")
                         : spec.name);
  const auto points = check_points(spec);
  std::vector<KeySpec> keys;
  std::vector<ElementId> ids;
  for (ElementId id : kAllElements) {
    if (id == ElementId::g24) continue;
    double tol = spec.tolerance;
    if (id == ElementId::g22 || id == ElementId::g44) tol = std::max(spec.tolerance, 1e-6);
    if (id == ElementId::g77 || id == ElementId::g88) tol = std::min(spec.tolerance, 1e-12);
    keys.push_back({std::string(element_name(id)), tol});
    ids.push_back(id);
  }
  keys.push_back({"g24.real_part", std::nullopt});
  keys.push_back({"g24.modulus", std::nullopt});
  keys.push_back({"g24.complex", std::nullopt});

  const auto ev = evaluate(
      points, keys.size(),
      [&](const AngleVector& x) -> SampleDevs {
        const MetricTensor g = metric_tensor(x, EngineKind::eigen);
        SampleDevs d;
        for (ElementId id : ids) {
          if (id == ElementId::g22 && std::abs(x.theta2 - std::numbers::pi / 4) < 1e-3) {
            d.emplace_back(std::nullopt);
            continue;
          }
          const auto [i, j] = element_position(id);
          try {
            d.emplace_back(std::abs(closed_element_real(id, x, reading) - g(i, j)));
          } catch (const DomainError&) {
            d.emplace_back(kInf);
          }
        }
        const auto [i, j] = element_position(ElementId::g24);
        const std::complex<double> z = closed_element(ElementId::g24, x, reading);
        d.emplace_back(std::abs(z.real() - g(i, j)));
        d.emplace_back(std::abs(std::abs(z) - g(i, j)));
        d.emplace_back(std::abs(z - std::complex<double>(g(i, j), 0.0)));
        return d;
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_composite(r);
  r.notes.push_back(reading == Reading::printed
                        ? "formulas evaluated as printed"
                        : "g22 and g44 evaluated with g55 -> 4 g55; all other elements as printed");
  r.notes.push_back("g22 excludes samples with |theta2 - pi/4| < 1e-3");
  return r;
}

ValidationReport diagnose_g24(const CheckSpec& spec) {
  ValidationReport r = named(spec.name.empty() ? "g24-interpretation" : spec.name);
  const auto points = check_points(spec);
  const std::vector<KeySpec> keys = {
      {"real_part", spec.tolerance},
      {"modulus", std::nullopt},
      {"complex", std::nullopt},
      {"imaginary_residue", std::nullopt},
  };
  std::vector<int> negative(points.size(), 0);
  const auto ev = evaluate(
      points, keys.size(),
      [&](const AngleVector& x) -> SampleDevs {
        const MetricTensor g = metric_tensor(x, EngineKind::eigen);
        const double target = g(Coordinate::gamma, Coordinate::beta);
        const std::complex<double> z = closed_element(ElementId::g24, x);
        return {std::abs(z.real() - target), std::abs(std::abs(z) - target),
                std::abs(z - std::complex<double>(target, 0.0)), std::abs(z.imag())};
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_simple(r, spec.tolerance);

  std::size_t negatives = 0;
  for (const auto& x : points) {
    if (metric_tensor(x, EngineKind::eigen)(Coordinate::gamma, Coordinate::beta) < 0.0) ++negatives;
  }
  const auto& d = r.per_element;
  auto matches = [&](const char* k) { return d.at(k).max_deviation <= spec.tolerance; };
  std::ostringstream os;
  os.precision(3);
  os << "verdict: ";
  if (matches("real_part")) {
    os << "printed g24 is real to " << d.at("imaginary_residue").max_deviation
       << " and its real part equals the metric entry";
    if (matches("modulus")) {
      os << "; modulus also matches";
    } else {
      os << "; modulus does not (" << negatives << " of " << points.size()
         << " samples have g24 < 0)";
    }
  } else if (matches("modulus")) {
    os << "only the modulus matches the metric entry";
  } else {
    os << "no interpretation matches the metric entry";
  }
  r.notes.push_back(os.str());
  return r;
}

ValidationReport diagnose_g22_pole(const CheckSpec& spec) {
  ValidationReport r = named(spec.name.empty() ? "g22-pole" : spec.name);
  const auto points = check_points(spec);
  const double quarter = std::numbers::pi / 4;
  const double h = 1e-4;
  const std::vector<KeySpec> keys = {
      {"printed_at_pi/4-1e-3", std::nullopt},
      {"corrected_at_pi/4-1e-3", std::nullopt},
      {"corrected_at_pi/4-1e-5", std::nullopt},
      {"corrected_limit_vs_engine_at_pi/4", 1e-6},
  };
  const auto ev = evaluate(
      points, keys.size(),
      [&](const AngleVector& x) -> SampleDevs {
        auto at = [&](double t2) {
          AngleVector y = x;
          y.theta2 = t2;
          return y;
        };
        auto engine = [&](double t2) {
          return metric_tensor(at(t2), EngineKind::eigen)(Coordinate::gamma, Coordinate::gamma);
        };
        auto closed = [&](double t2, Reading reading) {
          return closed_element_real(ElementId::g22, at(t2), reading);
        };
        // One-sided linear extrapolation to theta2 = pi/4.
        const double limit =
            2.0 * closed(quarter - h, Reading::corrected) - closed(quarter - 2.0 * h, Reading::corrected);
        return {std::abs(closed(quarter - 1e-3, Reading::printed) - engine(quarter - 1e-3)),
                std::abs(closed(quarter - 1e-3, Reading::corrected) - engine(quarter - 1e-3)),
                std::abs(closed(quarter - 1e-5, Reading::corrected) - engine(quarter - 1e-5)),
                std::abs(limit - engine(quarter))};
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_composite(r);
  r.notes.push_back(r.passed ? "upsilon pole is removable: corrected g22 extends continuously to "
                               "theta2 = pi/4 and matches the engine there"
                             : "g22 does not extend continuously to theta2 = pi/4");
  return r;
}

ValidationReport check_reductions(const CheckSpec& spec, Reading reading) {
  ValidationReport r = named(spec.name.empty()
                         ? std::string("reductions-") +
                               (reading == Reading::printed ? "printed" : "corrected")
                         : spec.name);
  const auto points = check_points(spec);
  const bool printed = reading == Reading::printed;
  const std::vector<KeySpec> keys = {
      {"beta_b_zero.g14", 1e-10},
      {"beta_b_zero.g11_vs_quotient", spec.tolerance},
      {"beta_b_zero.g12_vs_quotient", spec.tolerance},
      {"beta_theta_zero.g11_vs_g33", 1e-10},
      {"beta_theta_zero.g12_vs_g33", 1e-10},
      {"beta_theta_zero.g11_vs_g55_sin2_2b", 1e-10},
      {printed ? "beta_theta_zero.g44_vs_claim" : "beta_theta_zero.g14_vs_claim", spec.tolerance},
  };
  const auto ev = evaluate(
      points, keys.size(),
      [&](const AngleVector& x) -> SampleDevs {
        AngleVector y1 = x;
        y1.beta = 0.0;
        y1.b = 0.0;
        const MetricTensor g1 = metric_tensor(y1, EngineKind::eigen);
        const ReducedElements r1 = reduced_elements(y1, ReductionSlice::beta_b_zero, reading);

        AngleVector y2 = x;
        y2.beta = 0.0;
        y2.theta = 0.0;
        const MetricTensor g2 = metric_tensor(y2, EngineKind::eigen);
        const ReducedElements r2 = reduced_elements(y2, ReductionSlice::beta_theta_zero, reading);
        const double claim_target =
            printed ? g2(Coordinate::beta, Coordinate::beta) : g2(Coordinate::alpha, Coordinate::beta);
        const double claim = printed ? *r2.g44 : *r2.g14;

        using C = Coordinate;
        return {std::abs(g1(C::alpha, C::beta)),
                std::abs(g1(C::alpha, C::alpha) - r1.g11_g12),
                std::abs(g1(C::alpha, C::gamma) - r1.g11_g12),
                std::abs(g2(C::alpha, C::alpha) - g2(C::a, C::a)),
                std::abs(g2(C::alpha, C::gamma) - g2(C::a, C::a)),
                std::abs(g2(C::alpha, C::alpha) - r2.g11_g12),
                std::abs(claim_target - claim)};
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_composite(r);
  r.notes.push_back(printed ? "reference quotient and g44 claim as printed"
                            : "quotient denominator 64 u_-; claim attached to g14");
  return r;
}

ValidationReport check_theta2_recovery(const CheckSpec& spec) {
  ValidationReport r = named(spec.name.empty() ? "theta2-recovery" : spec.name);
  const auto points = check_points(spec);
  const std::vector<KeySpec> keys = {
      {"theta2", spec.tolerance},
      {"g55_residual", spec.tolerance},
      {"printed_inversion", std::nullopt},
  };
  const auto ev = evaluate(
      points, keys.size(),
      [&](const AngleVector& x) -> SampleDevs {
        const double target = g55_of(x.theta1, x.theta2);
        const auto roots = theta2_roots_from_g55(target, x.theta1);
        double best = kInf;
        double residual = 0.0;
        for (double root : roots) {
          best = std::min(best, std::abs(root - x.theta2));
          residual = std::max(residual, std::abs(g55_of(x.theta1, root) - target));
        }
        return {best, residual,
                std::abs(theta2_inversion_as_printed(target, x.theta1, x.theta2) - x.theta2)};
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_composite(r);
  std::size_t ambiguous = 0;
  std::size_t printed_nan = 0;
  for (const auto& x : points) {
    if (theta2_roots_from_g55(g55_of(x.theta1, x.theta2), x.theta1).size() > 1) ++ambiguous;
    if (std::isnan(theta2_inversion_as_printed(g55_of(x.theta1, x.theta2), x.theta1, x.theta2))) {
      ++printed_nan;
    }
  }
  r.notes.push_back(std::to_string(ambiguous) + " of " + std::to_string(points.size()) +
                    " targets have two roots (theta1 > pi/4, g55 not monotone in theta2)");
  r.notes.push_back("reference sec^-1 inversion is undefined (argument magnitude < 1) at " +
                    std::to_string(printed_nan) + " of " + std::to_string(points.size()) + " samples");
  return r;
}

Cartesian sample_bloch(std::uint64_t seed, double max_radius) {
  std::uint64_t state = seed;
  const double radius = max_radius * (0.05 + 0.95 * unit_uniform(state));
  const double cos_t = 2.0 * unit_uniform(state) - 1.0;
  const double phi = 2.0 * std::numbers::pi * unit_uniform(state);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  return {radius * sin_t * std::cos(phi), radius * sin_t * std::sin(phi), radius * cos_t};
}

namespace {

// Cartesian bloch points carried through the generic sample machinery.
std::vector<AngleVector> bloch_carriers(const CheckSpec& spec, std::vector<Cartesian>& out,
                                        double max_radius) {
  spec.validate();
  out.clear();
  for (std::size_t i = 0; i < spec.sample_count; ++i) out.push_back(sample_bloch(sample_seed(spec.seed, i), max_radius));
  std::vector<AngleVector> carriers(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) carriers[i].alpha = static_cast<double>(i);
  return carriers;
}

void note_worst_bloch(ValidationReport& r, const std::vector<Cartesian>& pts) {
  for (auto& [name, d] : r.per_element) {
    const auto idx = static_cast<std::size_t>(d.worst_point.alpha);
    if (idx < pts.size()) r.notes.push_back(name + " worst at " + format_point(pts[idx]));
    d.worst_point = AngleVector{};
  }
  r.worst_point = AngleVector{};
}

}  // namespace

ValidationReport check_two_level(const CheckSpec& spec) {
  ValidationReport r = named(spec.name.empty() ? "two-level" : spec.name);
  std::vector<Cartesian> pts;
  const auto carriers = bloch_carriers(spec, pts, 0.95);
  const std::vector<KeySpec> keys = {
      {"closed_vs_trace", spec.tolerance},
      {"metric_times_inverse", spec.tolerance},
      {"spherical_vs_pullback", spec.tolerance},
      {"spherical_vs_diagonal_form", 0.0},
  };
  const auto ev = evaluate(
      carriers, keys.size(),
      [&](const AngleVector& c) -> SampleDevs {
        const Cartesian& p = pts[static_cast<std::size_t>(c.alpha)];
        const MetricTensor closed = two_level_metric_closed(p);
        const MetricTensor trace_form = two_level_metric_trace(p);
        const MetricTensor inv = two_level_inverse(p.x, p.y, p.z);
        double prod_dev = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += closed(i, k) * inv(k, j);
            prod_dev = std::max(prod_dev, std::abs(s - (i == j ? 1.0 : 0.0)));
          }
        }
        const double rad = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
        const Spherical s{rad, std::acos(p.z / rad), std::atan2(p.y, p.x)};
        const double st = std::sin(s.theta), ct = std::cos(s.theta);
        const double sp = std::sin(s.phi), cp = std::cos(s.phi);
        // d(x, y, z) / d(r, theta, phi)
        const std::array<double, 9> jac = {st * cp, rad * ct * cp, -rad * st * sp,
                                           st * sp, rad * ct * sp, rad * st * cp,
                                           ct,      -rad * st,     0.0};
        const MetricTensor pulled = pullback(closed, jac);
        const MetricTensor sph = two_level_metric(s);
        const MetricTensor diag(3, {1.0 / (4.0 * (1.0 - rad * rad)), 0.0, 0.0,
                                    0.0, rad * rad / 4.0, 0.0,
                                    0.0, 0.0, rad * rad * st * st / 4.0});
        return {max_abs_diff(closed, trace_form), prod_dev, max_abs_diff(sph, pulled),
                max_abs_diff(sph, diag)};
      },
      spec.execution);
  reduce_keys(r, carriers, keys, ev);
  finish_composite(r);
  note_worst_bloch(r, pts);
  return r;
}

ValidationReport check_two_level_isometry(const CheckSpec& spec) {
  ValidationReport r = named(spec.name.empty() ? "two-level-isometry" : spec.name);
  std::vector<Cartesian> pts;
  const auto carriers = bloch_carriers(spec, pts, 0.9);
  const std::vector<KeySpec> keys = {{"lie_derivative", spec.tolerance}};
  const auto ev = evaluate(
      carriers, keys.size(),
      [&](const AngleVector& c) -> SampleDevs {
        const auto idx = static_cast<std::size_t>(c.alpha);
        const Cartesian& p = pts[idx];
        std::uint64_t state = sample_seed(spec.seed ^ 0xA5A5A5A5ULL, idx);
        const std::array<double, 3> dir = {2 * unit_uniform(state) - 1, 2 * unit_uniform(state) - 1,
                                           2 * unit_uniform(state) - 1};
        auto at = [](const std::array<double, 3>& q) { return Cartesian{q[0], q[1], q[2]}; };
        auto xi = [&](const std::array<double, 3>& q) {
          const double f = std::sqrt(1.0 - q[0] * q[0] - q[1] * q[1] - q[2] * q[2]);
          return std::array<double, 3>{f * dir[0], f * dir[1], f * dir[2]};
        };
        const std::array<double, 3> p0 = {p.x, p.y, p.z};
        const double h = 1e-5;
        std::array<MetricTensor, 3> dg;
        std::array<std::array<double, 3>, 3> dxi{};  // dxi[i][k] = d_i xi^k
        for (std::size_t i = 0; i < 3; ++i) {
          auto plus = p0, minus = p0;
          plus[i] += h;
          minus[i] -= h;
          const MetricTensor gp = two_level_metric_closed(at(plus));
          const MetricTensor gm = two_level_metric_closed(at(minus));
          dg[i] = MetricTensor(3);
          for (std::size_t e = 0; e < 9; ++e) {
            dg[i](e / 3, e % 3) = (gp.entries()[e] - gm.entries()[e]) / (2 * h);
          }
          const auto xp = xi(plus), xm = xi(minus);
          for (std::size_t k = 0; k < 3; ++k) dxi[i][k] = (xp[k] - xm[k]) / (2 * h);
        }
        const MetricTensor g = two_level_metric_closed(p);
        const auto x0 = xi(p0);
        double dev = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = 0; j < 3; ++j) {
            double l = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
              l += x0[k] * dg[k](i, j) + g(k, j) * dxi[i][k] + g(i, k) * dxi[j][k];
            }
            dev = std::max(dev, std::abs(l));
          }
        }
        return {dev};
      },
      spec.execution);
  reduce_keys(r, carriers, keys, ev);
  finish_simple(r, spec.tolerance);
  note_worst_bloch(r, pts);
  return r;
}

ValidationReport check_tangents(const CheckSpec& spec, double step) {
  ValidationReport r = named(spec.name.empty() ? "tangents" : spec.name);
  const auto points = check_points(spec);
  std::vector<KeySpec> keys;
  for (Coordinate c : kAllCoordinates) keys.push_back({std::string(coordinate_name(c)), spec.tolerance});
  const auto ev = evaluate(
      points, keys.size(),
      [&](const AngleVector& x) -> SampleDevs {
        const auto analytic = tangents_analytic(x);
        SampleDevs d;
        for (Coordinate c : kAllCoordinates) {
          d.push_back(max_abs_diff(analytic[index_of(c)], tangent_fd(x, c, step)));
        }
        return d;
      },
      spec.execution);
  reduce_keys(r, points, keys, ev);
  finish_simple(r, spec.tolerance);
  return r;
}

ValidationReport check_figure_grid(std::size_t n1, std::size_t n2) {
  ValidationReport r = named("figure-grid-g55");
  const auto grid = figure_grid(FigureQuantity::g55, n1, n2);
  ElementDetail slice{};
  slice.tolerance = 1e-12;
  ElementDetail corner{};
  corner.tolerance = 1e-12;
  ElementDetail finite{};
  finite.tolerance = 0.0;
  for (const auto& p : grid) {
    AngleVector at{};
    at.theta1 = p.theta1;
    at.theta2 = p.theta2;
    if (!std::isfinite(p.value) || p.value < 0.0) {
      finite.max_deviation = 1.0;
      finite.worst_point = at;
    }
    ++finite.samples;
    if (p.theta2 == 0.0) {
      const double c = std::cos(2 * p.theta1);
      const double dev = std::abs(p.value - c * c);
      ++slice.samples;
      if (slice.samples == 1 || dev > slice.max_deviation) {
        slice.max_deviation = dev;
        slice.worst_point = at;
      }
    }
  }
  const GridPoint& last = grid.back();
  corner.max_deviation = std::abs(last.value);
  corner.worst_point.theta1 = last.theta1;
  corner.worst_point.theta2 = last.theta2;
  corner.samples = 1;
  for (auto* d : {&slice, &corner, &finite}) d->passed = d->max_deviation <= *d->tolerance;
  r.per_element["slice_theta2_zero_vs_cos2_2theta1"] = slice;
  r.per_element["maximally_mixed_corner"] = corner;
  r.per_element["finite_nonnegative"] = finite;
  r.samples = grid.size();
  finish_composite(r);
  if (grid.size() != n1 * n2) {
    r.passed = false;
    r.notes.push_back("grid size mismatch");
  }
  r.notes.push_back(std::to_string(n1) + "x" + std::to_string(n2) + " grid");
  return r;
}

// --- campaign ----------------------------------------------------------------

namespace {

struct Registered {
  CheckSpec spec;
  CheckRole role;
  std::function<ValidationReport(const CheckSpec&)> run;
};

std::vector<Registered> registry() {
  auto spec = [](std::string name, std::size_t n, double tol) {
    CheckSpec s;
    s.name = std::move(name);
    s.sample_count = n;
    s.tolerance = tol;
    return s;
  };
  using R = CheckRole;
  return {
      {spec("engine-agreement", 1000, 1e-8), R::mandatory, [](const CheckSpec& s) { return check_engine_agreement(s); }},
      {spec("fixed-entries", 200, 1e-10), R::mandatory, [](const CheckSpec& s) { return check_fixed_entries(s); }},
      {spec("zero-pattern", 200, 1e-10), R::mandatory, [](const CheckSpec& s) { return check_zero_pattern(s); }},
      {spec("zero-pattern-misindexed", 20, 1e-10), R::negative_control,
       [](const CheckSpec& s) {
         auto positions = zero_pattern_positions();
         positions.front() = {Coordinate::alpha, Coordinate::a};  // g13 is not a zero
         return check_zero_pattern(s, positions);
       }},
      {spec("alpha-independence", 200, 1e-8), R::mandatory,
       [](const CheckSpec& s) { return check_parameter_independence(s, Coordinate::alpha); }},
      {spec("theta-dependence", 20, 1e-2), R::negative_control,
       [](const CheckSpec& s) { return check_parameter_independence(s, Coordinate::theta); }},
      {spec("reparameterization", 200, 1e-8), R::mandatory, [](const CheckSpec& s) { return check_reparameterization(s); }},
      {spec("closed-forms-printed", 500, 1e-8), R::mandatory,
       [](const CheckSpec& s) { return check_closed_forms(s, Reading::printed); }},
      {spec("closed-forms-corrected", 500, 1e-8), R::informational,
       [](const CheckSpec& s) { return check_closed_forms(s, Reading::corrected); }},
      {spec("g24-interpretation", 500, 1e-8), R::mandatory, [](const CheckSpec& s) { return diagnose_g24(s); }},
      {spec("g22-pole", 50, 1e-6), R::informational, [](const CheckSpec& s) { return diagnose_g22_pole(s); }},
      {spec("reductions-printed", 200, 1e-8), R::mandatory,
       [](const CheckSpec& s) { return check_reductions(s, Reading::printed); }},
      {spec("reductions-corrected", 200, 1e-8), R::informational,
       [](const CheckSpec& s) { return check_reductions(s, Reading::corrected); }},
      {spec("theta2-recovery", 100, 1e-10), R::mandatory, [](const CheckSpec& s) { return check_theta2_recovery(s); }},
      {spec("two-level", 200, 1e-12), R::mandatory, [](const CheckSpec& s) { return check_two_level(s); }},
      {spec("two-level-isometry", 100, 1e-6), R::informational,
       [](const CheckSpec& s) { return check_two_level_isometry(s); }},
      {spec("tangents", 200, 1e-6), R::mandatory, [](const CheckSpec& s) { return check_tangents(s); }},
      {spec("figure-grid-g55", 1, 1e-12), R::mandatory, [](const CheckSpec&) { return check_figure_grid(); }},
  };
}

}  // namespace

std::size_t registered_check_count() noexcept { return registry().size(); }

std::vector<ValidationReport> run_all(const CampaignOptions& opts) {
  std::vector<ValidationReport> out;
  for (auto& entry : registry()) {
    CheckSpec s = entry.spec;
    s.seed = opts.seed;
    s.execution = opts.execution;
    if (opts.samples) s.sample_count = *opts.samples;
    if (opts.tolerance) s.tolerance = *opts.tolerance;
    ValidationReport r = entry.run(s);
    r.name = s.name;
    r.role = entry.role;
    out.push_back(std::move(r));
  }
  return out;
}

bool campaign_passed(const std::vector<ValidationReport>& reports) noexcept {
  return std::all_of(reports.begin(), reports.end(), [](const ValidationReport& r) {
    return r.role == CheckRole::informational || r.satisfied();
  });
}

}  // namespace bures
