#pragma once

// Cross-validation campaigns. Each check samples the chart deterministically,
// evaluates per-sample deviations (in parallel), and reduces them serially
// into a ValidationReport. Checks report failures; they never throw for them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bures/batch.hpp"
#include "bures/closed_forms.hpp"
#include "bures/metric.hpp"
#include "bures/su3.hpp"

namespace bures {

struct CheckSpec {
  std::string name;
  std::size_t sample_count = 200;
  std::uint64_t seed = 20240601;
  double tolerance = 1e-8;
  double margin = kDefaultMargin;
  /// Evaluate exactly this point instead of sampling (sample_count is ignored).
  std::optional<AngleVector> point;
  Execution execution = Execution::parallel;

  /// Throws RangeError unless sample_count >= 1, tolerance > 0, 0 < margin < 0.5.
  void validate() const;
};

enum class CheckRole {
  mandatory,
  informational,
  negative_control,  // must fail for the campaign to pass
};

std::string_view role_name(CheckRole r) noexcept;

struct ElementDetail {
  double max_deviation = 0.0;
  AngleVector worst_point;
  std::size_t samples = 0;
  /// Unset for diagnostic-only records.
  std::optional<double> tolerance;
  std::optional<bool> passed;
};

struct ValidationReport {
  std::string name;
  CheckRole role = CheckRole::mandatory;
  bool passed = false;
  /// For composite checks (normalized == true) this is max_i dev_i / tol_i and
  /// tolerance is 1.
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool normalized = false;
  AngleVector worst_point;
  std::size_t samples = 0;
  std::map<std::string, ElementDetail> per_element;
  std::vector<std::string> notes;

  /// passed for mandatory/informational checks, !passed for negative controls.
  bool satisfied() const noexcept {
    return role == CheckRole::negative_control ? !passed : passed;
  }
};

/// Upper-triangle positions printed as 0 in the reference tensor (18 of them).
const std::vector<std::pair<Coordinate, Coordinate>>& zero_pattern_positions();

/// Points a check evaluates: the fixed point, or sample_batch(seed, count, margin).
std::vector<AngleVector> check_points(const CheckSpec& spec);

/// max entrywise |g_trace - g_eigen|.
ValidationReport check_engine_agreement(const CheckSpec& spec);

/// g_{theta1 theta1} = 1 and g_{theta2 theta2} = sin^2 theta1 (eigen engine).
ValidationReport check_fixed_entries(const CheckSpec& spec);

/// max |g_ij| over the given positions (default: the 18 reference zeros).
ValidationReport check_zero_pattern(const CheckSpec& spec);
ValidationReport check_zero_pattern(const CheckSpec& spec,
                                    const std::vector<std::pair<Coordinate, Coordinate>>& positions);

enum class Chart {
  euler,       // (alpha, gamma, a, beta, b, theta, theta1, theta2)
  tau_shifted  // gamma = tau - a: (alpha, tau, a, beta, b, theta, theta1, theta2)
};

inline constexpr double kIndependenceStep = 1e-5;

/// max over samples and entries of |d g_ij / d param| by central differences.
ValidationReport check_parameter_independence(const CheckSpec& spec, Coordinate param,
                                              Chart chart = Chart::euler,
                                              double step = kIndependenceStep);

/// Tensor in the tau-shifted chart at the Euler point `angles` (tau = gamma + a),
/// by the chain rule from the Euler-chart tensor.
MetricTensor tau_chart_tensor(const AngleVector& angles, EngineKind engine = EngineKind::eigen);

/// Same tensor recomputed directly from tangents in the tau-shifted chart with
/// the Dittmann trace engine.
MetricTensor tau_chart_tensor_recomputed(const AngleVector& angles);

/// a-independence, tilde g_bb = g55, tilde g_{tau a} = g_{gamma a}, plus the
/// chain-rule vs recomputation cross-check. Composite (normalized) report.
ValidationReport check_reparameterization(const CheckSpec& spec);

/// Per-element max |closed form - eigen-engine entry|. g24 is reported in
/// three interpretations without pass/fail; g22 skips samples within 1e-3 of
/// theta2 = pi/4. Composite (normalized) report.
ValidationReport check_closed_forms(const CheckSpec& spec, Reading reading = Reading::printed);

/// Which reading of the printed complex g24 equals the (real) metric entry.
ValidationReport diagnose_g24(const CheckSpec& spec);

/// Behaviour of g22 as theta2 -> pi/4 (one-sided, inside the chart).
ValidationReport diagnose_g22_pole(const CheckSpec& spec);

/// beta = b = 0 and beta = theta = 0 reductions against the eigen engine.
ValidationReport check_reductions(const CheckSpec& spec, Reading reading = Reading::printed);

/// g55 -> theta2 round trip: original theta2 must be among the recovered roots.
ValidationReport check_theta2_recovery(const CheckSpec& spec);

/// Closed-form two-level metric vs the 2x2 trace formula, metric x inverse = I,
/// spherical chart vs pullback of the Cartesian tensor.
ValidationReport check_two_level(const CheckSpec& spec);

/// Lie derivative of the two-level metric along xi = sqrt(1 - r^2) * c for a
/// constant vector c.
ValidationReport check_two_level_isometry(const CheckSpec& spec);

/// Bloch-ball interior point, radius uniform in [0, max_radius].
Cartesian sample_bloch(std::uint64_t seed, double max_radius = 0.95);

/// Analytic vs central-difference tangents for all 8 coordinates.
ValidationReport check_tangents(const CheckSpec& spec, double step = kDefaultFdStep);

/// g55 figure grid: slice theta2 = 0 equals cos^2 2theta1 and the maximally
/// mixed corner vanishes.
ValidationReport check_figure_grid(std::size_t n1 = 50, std::size_t n2 = 50);

struct CampaignOptions {
  std::uint64_t seed = 20240601;
  /// Overrides every check's sample count when set.
  std::optional<std::size_t> samples;
  /// Overrides every check's tolerance when set.
  std::optional<double> tolerance;
  Execution execution = Execution::parallel;
};

/// Every registered check with its default spec.
std::vector<ValidationReport> run_all(const CampaignOptions& opts = {});

/// Number of checks run_all registers.
std::size_t registered_check_count() noexcept;

/// All mandatory checks passed and all negative controls failed.
bool campaign_passed(const std::vector<ValidationReport>& reports) noexcept;

}  // namespace bures
