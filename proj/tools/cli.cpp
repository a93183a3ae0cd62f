#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bures/closed_forms.hpp"
#include "bures/error.hpp"
#include "bures/metric.hpp"
#include "bures/su3.hpp"
#include "bures/validation.hpp"

namespace bures::cli {

namespace {

using nlohmann::json;

enum class Format { json, csv };

std::string fmt17(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json angles_json(const AngleVector& x) {
  json j = json::object();
  for (Coordinate c : kAllCoordinates) j[std::string(coordinate_name(c))] = x[c];
  return j;
}

json tensor_json(const MetricTensor& g, const std::vector<std::string>& order) {
  g.check_invariants();
  json j;
  j["order"] = order;
  j["g"] = g.entries();
  return j;
}

std::string tensor_csv(const MetricTensor& g, const std::vector<std::string>& order) {
  g.check_invariants();
  std::ostringstream os;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) {
      os << (i || j ? "," : "") << "g_" << order[i] << "_" << order[j];
    }
  }
  os << "\n";
  for (std::size_t k = 0; k < g.entries().size(); ++k) {
    os << (k ? "," : "") << fmt17(g.entries()[k]);
  }
  os << "\n";
  return os.str();
}

std::vector<std::string> euler_order() {
  std::vector<std::string> v;
  for (Coordinate c : kAllCoordinates) v.emplace_back(coordinate_name(c));
  return v;
}

struct AngleFlags {
  AngleVector x;

  void add(CLI::App* app) {
    for (Coordinate c : kAllCoordinates) {
      const std::string name(coordinate_name(c));
      app->add_option("--" + name, x[c], name + " (radians)");
    }
  }
};

json detail_json(const ElementDetail& d) {
  json j;
  j["max_deviation"] = d.max_deviation;
  j["samples"] = d.samples;
  j["worst_point"] = angles_json(d.worst_point);
  if (d.tolerance) j["tolerance"] = *d.tolerance;
  if (d.passed) j["passed"] = *d.passed;
  return j;
}

json report_json(const ValidationReport& r) {
  json j;
  j["name"] = r.name;
  j["role"] = std::string(role_name(r.role));
  j["passed"] = r.passed;
  j["satisfied"] = r.satisfied();
  j["max_deviation"] = r.max_deviation;
  j["tolerance"] = r.tolerance;
  j["normalized"] = r.normalized;
  j["samples"] = r.samples;
  j["worst_point"] = angles_json(r.worst_point);
  json per = json::object();
  for (const auto& [k, d] : r.per_element) per[k] = detail_json(d);
  j["per_element"] = per;
  j["notes"] = r.notes;
  return j;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw RangeError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bures metric tensors for two- and three-level density matrices", "bures"};
  app.require_subcommand(1);
  app.fallthrough(false);

  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}};
  Format format = Format::json;
  std::string out_path;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", out_path, "write the document to PATH instead of standard output");
  };

  // eval
  auto* eval = app.add_subcommand("eval", "8x8 metric tensor at one point");
  AngleFlags eval_angles;
  eval_angles.add(eval);
  std::string engine_arg = "eigen";
  eval->add_option("--engine", engine_arg, "dittmann-trace | eigen | finite-difference-cross-check");
  common(eval);

  // validate
  auto* validate = app.add_subcommand("validate", "run the validation campaign");
  CampaignOptions campaign;
  std::optional<std::size_t> samples;
  std::optional<double> tol;
  bool serial = false;
  validate->add_option("--seed", campaign.seed, "base seed");
  validate->add_option("--samples", samples, "override every check's sample count")
      ->check(CLI::PositiveNumber);
  validate->add_option("--tol", tol, "override every check's primary tolerance")
      ->check(CLI::PositiveNumber);
  validate->add_flag("--serial", serial, "use the serial reference path");
  common(validate);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "figure grid over (theta1, theta2)");
  std::string element = "g55";
  std::size_t n1 = 50, n2 = 50;
  sweep->add_option("--element", element, "g55 or v_over_32u_minus");
  sweep->add_option("--n1", n1, "theta1 grid points")->check(CLI::Range(2, 100000));
  sweep->add_option("--n2", n2, "theta2 grid points")->check(CLI::Range(2, 100000));
  common(sweep);

  // two-level
  auto* two = app.add_subcommand("two-level", "3x3 two-level metric");
  const std::map<std::string, int> charts{{"cartesian", 0}, {"spherical", 1}};
  int chart = 0;
  Cartesian cart;
  Spherical sph;
  bool with_inverse = false;
  two->add_option("--coords", chart, "cartesian or spherical")
      ->transform(CLI::CheckedTransformer(charts, CLI::ignore_case));
  two->add_option("--x", cart.x);
  two->add_option("--y", cart.y);
  two->add_option("--z", cart.z);
  two->add_option("--r", sph.r);
  two->add_option("--theta", sph.theta, "polar angle");
  two->add_option("--phi", sph.phi, "azimuth");
  two->add_flag("--inverse", with_inverse, "include the closed-form inverse (cartesian only)");
  common(two);

  // volume
  auto* volume = app.add_subcommand("volume", "sqrt(det g) at one point");
  AngleFlags vol_angles;
  vol_angles.add(volume);
  volume->add_option("--engine", engine_arg, "dittmann-trace | eigen | finite-difference-cross-check");
  common(volume);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    Output sink(out_path, out);
    std::ostream& os = sink.stream();

    if (*eval || *volume) {
      const AngleVector& x = *eval ? eval_angles.x : vol_angles.x;
      x.validate();
      const EngineKind engine = parse_engine(engine_arg);
      const MetricTensor g = metric_tensor(x, engine);
      const auto order = euler_order();
      if (*eval) {
        if (format == Format::csv) {
          os << tensor_csv(g, order);
        } else {
          json j = tensor_json(g, order);
          j["engine"] = std::string(engine_name(engine));
          j["angles"] = angles_json(x);
          os << j.dump(2) << "\n";
        }
      } else {
        g.check_invariants();
        const double v = volume_element(g);
        if (format == Format::csv) {
          os << "volume\n" << fmt17(v) << "\n";
        } else {
          json j;
          j["engine"] = std::string(engine_name(engine));
          j["angles"] = angles_json(x);
          j["volume"] = v;
          os << j.dump(2) << "\n";
        }
      }
      return kSuccess;
    }

    if (*validate) {
      campaign.samples = samples;
      campaign.tolerance = tol;
      campaign.execution = serial ? Execution::serial : Execution::parallel;
      const auto reports = run_all(campaign);
      const bool ok = campaign_passed(reports);
      if (format == Format::csv) {
        os << "name,role,passed,satisfied,max_deviation,tolerance,normalized,samples\n";
        for (const auto& r : reports) {
          os << r.name << "," << role_name(r.role) << "," << r.passed << "," << r.satisfied() << ","
             << fmt17(r.max_deviation) << "," << fmt17(r.tolerance) << "," << r.normalized << ","
             << r.samples << "\n";
        }
      } else {
        json j;
        j["seed"] = campaign.seed;
        j["campaign_passed"] = ok;
        j["checks"] = json::array();
        for (const auto& r : reports) j["checks"].push_back(report_json(r));
        os << j.dump(2) << "\n";
      }
      for (const auto& r : reports) {
        err << (r.satisfied() ? "ok   " : "FAIL ") << r.name << " [" << role_name(r.role)
            << "] max_deviation=" << fmt17(r.max_deviation) << " tol=" << fmt17(r.tolerance) << "\n";
      }
      err << (ok ? "all mandatory checks passed\n" : "validation failed\n");
      return ok ? kSuccess : kValidationFailure;
    }

    if (*sweep) {
      const FigureQuantity q = parse_figure(element);
      const auto grid = figure_grid(q, n1, n2);
      if (format == Format::csv) {
        os << "theta1,theta2," << figure_name(q) << "\n";
        for (const auto& p : grid) {
          os << fmt17(p.theta1) << "," << fmt17(p.theta2) << "," << fmt17(p.value) << "\n";
        }
      } else {
        json j;
        j["quantity"] = std::string(figure_name(q));
        j["n1"] = n1;
        j["n2"] = n2;
        j["rows"] = json::array();
        for (const auto& p : grid) j["rows"].push_back({p.theta1, p.theta2, p.value});
        os << j.dump(2) << "\n";
      }
      return kSuccess;
    }

    if (*two) {
      const bool spherical = chart == 1;
      if (spherical && with_inverse) throw RangeError("--inverse requires --coords cartesian");
      const MetricTensor g = spherical ? two_level_metric(sph) : two_level_metric(cart);
      const std::vector<std::string> order =
          spherical ? std::vector<std::string>{"r", "theta", "phi"}
                    : std::vector<std::string>{"x", "y", "z"};
      if (format == Format::csv) {
        os << tensor_csv(g, order);
        if (with_inverse) os << tensor_csv(two_level_inverse(cart.x, cart.y, cart.z), order);
      } else {
        json j = tensor_json(g, order);
        j["coords"] = spherical ? "spherical" : "cartesian";
        if (with_inverse) j["inverse"] = two_level_inverse(cart.x, cart.y, cart.z).entries();
        os << j.dump(2) << "\n";
      }
      return kSuccess;
    }
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace bures::cli
