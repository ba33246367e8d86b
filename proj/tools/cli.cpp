#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kelvin_eit/bounds.hpp"
#include "kelvin_eit/dnmaps.hpp"
#include "kelvin_eit/errors.hpp"
#include "kelvin_eit/geometry.hpp"
#include "kelvin_eit/harmonics.hpp"
#include "kelvin_eit/moebius2d.hpp"
#include "kelvin_eit/verify.hpp"

namespace kelvin_eit::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundsOptions {
  bool fig1 = false;
  std::vector<double> rho;
  std::vector<int> d;
  std::vector<double> r;
  int truncation = 0;
  int max_sector = 6;
  double tol = 1e-10;
  unsigned threads = 0;
  std::string output;
  std::string format = "csv";
};

struct EigsOptions {
  int d = 3;
  double r = 0.5;
  int truncation = 10;
  std::string output;
  std::string format = "csv";
};

struct MapBallOptions {
  std::vector<double> a;
  std::optional<double> r;
  std::vector<double> C;
  std::optional<double> R;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::vector<std::string> only;
};

struct MoebiusOptions {
  std::vector<double> a;
  std::vector<double> x;
};

void require_open_unit(const std::vector<double>& values, const std::string& name) {
  for (double v : values)
    if (!(v > 0.0 && v < 1.0)) throw UsageError(name + " values must lie in (0, 1), got " + format_real(v));
}

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// Writes to --output when given, else to `out`.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + path);
  file << text;
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
  return line + "\n";
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

int cmd_bounds(const BoundsOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.format != "csv" && opt.format != "json") throw UsageError("unknown format " + opt.format);
  if (opt.truncation < 0 || opt.max_sector < 0 || !(opt.tol > 0.0))
    throw UsageError("truncation and sector counts must be non-negative, tolerance positive");

  if (opt.fig1) {
    std::vector<std::string> header = {"rho", "lower", "upper"};
    for (int d = 2; d <= 15; ++d) header.push_back("C_" + std::to_string(d));
    std::string text = csv_join(header);
    json rows = json::array();
    for (int i = 1; i <= 99; ++i) {
      const double rho = i / 100.0;
      std::vector<std::string> cells = {format_real(rho), format_real(lower_bound(rho)),
                                        format_real(upper_bound(rho))};
      json row = {{"rho", rho}, {"lower", lower_bound(rho)}, {"upper", upper_bound(rho)}};
      for (int d = 2; d <= 15; ++d) {
        cells.push_back(format_real(least_upper_bound(rho, d)));
        row["C_" + std::to_string(d)] = least_upper_bound(rho, d);
      }
      text += csv_join(cells);
      rows.push_back(row);
    }
    emit(opt.output, opt.format == "csv" ? text : rows.dump(2) + "\n", out);
    return kSuccess;
  }

  if (opt.rho.empty() || opt.d.empty()) throw UsageError("bounds needs --rho and --d (or --fig1)");
  require_open_unit(opt.rho, "rho");
  require_open_unit(opt.r, "r");
  for (int d : opt.d)
    if (d < 2) throw UsageError("d must be at least 2");

  NormRatioConfig config;
  config.truncation = opt.truncation;
  config.max_sector = opt.max_sector;
  config.tol = opt.tol;
  const auto reports = sweep(opt.rho, opt.r, opt.d, config, opt.threads);

  int status = kSuccess;
  std::string text = csv_join({"rho", "d", "r", "lower", "mid", "upper", "least_upper", "worse",
                               "ratio_numeric", "sector", "K", "converged"});
  json rows = json::array();
  for (const auto& rep : reports) {
    const bool with_r = rep.r.has_value();
    text += csv_join({format_real(rep.rho), std::to_string(rep.d), with_r ? format_real(*rep.r) : "",
                      format_real(rep.lower), rep.mid ? format_real(*rep.mid) : "", format_real(rep.upper),
                      format_real(rep.least_upper), format_real(rep.worse),
                      rep.ratio_numeric ? format_real(*rep.ratio_numeric) : "",
                      with_r ? std::to_string(rep.sector) : "", with_r ? std::to_string(rep.truncation) : "",
                      rep.converged ? "true" : "false"});
    rows.push_back({{"rho", rep.rho},
                    {"d", rep.d},
                    {"r", optional_json(rep.r)},
                    {"lower", rep.lower},
                    {"mid", optional_json(rep.mid)},
                    {"upper", rep.upper},
                    {"least_upper", rep.least_upper},
                    {"worse", rep.worse},
                    {"ratio_numeric", optional_json(rep.ratio_numeric)},
                    {"sector", rep.sector},
                    {"K", rep.truncation},
                    {"converged", rep.converged}});
    if (!rep.error.empty()) {
      err << "error at rho=" << format_real(rep.rho) << " d=" << rep.d << ": " << rep.error << "\n";
      status = kFailure;
    } else if (!rep.converged) {
      err << "not converged at rho=" << format_real(rep.rho) << " d=" << rep.d
          << " r=" << (with_r ? format_real(*rep.r) : "") << " (K=" << rep.truncation << ")\n";
      status = kFailure;
    }
  }
  emit(opt.output, opt.format == "csv" ? text : rows.dump(2) + "\n", out);
  return status;
}

int cmd_eigs(const EigsOptions& opt, std::ostream& out) {
  if (opt.format != "csv" && opt.format != "json") throw UsageError("unknown format " + opt.format);
  if (opt.d < 2) throw UsageError("d must be at least 2");
  if (opt.truncation < 0) throw UsageError("N must be non-negative");
  require_open_unit({opt.r}, "r");
  const EigenvalueTable table = eigenvalue_table(opt.d, opt.r, opt.truncation);
  std::string text = csv_join({"n", "multiplicity", "lambda_hat", "lambda"});
  json rows = json::array();
  for (int n = 0; n <= opt.truncation; ++n) {
    text += csv_join({std::to_string(n), std::to_string(table.multiplicity[n]), format_real(table.lambda_hat[n]),
                      format_real(table.lambda[n])});
    rows.push_back({{"n", n},
                    {"multiplicity", table.multiplicity[n]},
                    {"lambda_hat", table.lambda_hat[n]},
                    {"lambda", table.lambda[n]}});
  }
  emit(opt.output, opt.format == "csv" ? text : rows.dump(2) + "\n", out);
  return kSuccess;
}

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

int cmd_map_ball(const MapBallOptions& opt, std::ostream& out) {
  const bool concentric_given = !opt.a.empty() || opt.r.has_value();
  const bool ball_given = !opt.C.empty() || opt.R.has_value();
  if (concentric_given == ball_given) throw UsageError("give exactly one of (--a, --r) or (--C, --R)");

  BallCorrespondence corr;
  try {
    if (concentric_given) {
      if (opt.a.empty() || !opt.r) throw UsageError("--a and --r must be given together");
      corr = correspondence_from_concentric(to_vec(opt.a), *opt.r);
    } else {
      if (opt.C.empty() || !opt.R) throw UsageError("--C and --R must be given together");
      corr = correspondence_from_ball(to_vec(opt.C), *opt.R);
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  json doc = {{"dim", corr.dim},     {"concentric", corr.concentric}, {"a", vec_json(corr.a)},
              {"rho", corr.rho},     {"e_a", vec_json(corr.e_a)},     {"r", corr.r},
              {"C", vec_json(corr.C)}, {"R", corr.R}};
  doc["a_hat"] = corr.concentric ? json(nullptr) : vec_json(corr.a_hat);
  doc["b"] = corr.concentric ? json(nullptr) : json(corr.b);
  out << doc.dump(2) << "\n";
  return kSuccess;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<SuiteResult> results;
  try {
    results = run_verification(opt.seed, opt.only);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  int status = kSuccess;
  for (const auto& suite : results) {
    out << (suite.passed() ? "PASS " : "FAIL ") << suite.suite << "\n";
    for (const auto& check : suite.checks) {
      out << "  " << (check.passed ? "ok   " : "FAIL ") << check.name << "  error=" << format_real(check.error)
          << " tol=" << format_real(check.tol) << "\n";
      if (!check.passed) {
        err << "invariant failed: " << suite.suite << ": " << check.name;
        if (!check.message.empty()) err << " (" << check.message << ")";
        err << "\n";
        status = kFailure;
      }
    }
  }
  return status;
}

int cmd_moebius(const MoebiusOptions& opt, std::ostream& out) {
  if (opt.a.size() != 2 || opt.x.size() != 2) throw UsageError("--a and --x take two components (re,im)");
  const Complex a(opt.a[0], opt.a[1]);
  const Complex x(opt.x[0], opt.x[1]);
  IntersectionReport report;
  try {
    report = intersection_check(a, x);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  const auto complex_json = [](Complex z) { return json::array({z.real(), z.imag()}); };
  json doc = {{"a", complex_json(a)},
              {"x", complex_json(x)},
              {"inversion_image", complex_json(report.inversion_image)},
              {"moebius_image", complex_json(report.moebius_image)},
              {"r_xa", report.r_xa},
              {"r_tilde", report.r_tilde},
              {"max_residual", report.max_residual},
              {"passed", report.passed}};
  out << doc.dump(2) << "\n";
  return report.passed ? kSuccess : kFailure;
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kelvin transforms, DN maps and distinguishability bounds for ball inclusions"};
  app.require_subcommand(1);

  BoundsOptions bounds_opt;
  auto* bounds = app.add_subcommand("bounds", "analytic bounds and numeric norm ratios");
  auto* fig1 = bounds->add_flag("--fig1", bounds_opt.fig1, "emit C_d(rho) for d = 2..15, rho = 0.01..0.99");
  bounds->add_option("--rho", bounds_opt.rho, "depth parameters")->delimiter(',')->excludes(fig1);
  bounds->add_option("--d", bounds_opt.d, "dimensions")->delimiter(',')->excludes(fig1);
  bounds->add_option("--r", bounds_opt.r, "inclusion radii of the concentric picture")->delimiter(',')->excludes(fig1);
  bounds->add_option("--K", bounds_opt.truncation, "fixed truncation (0: automatic)");
  bounds->add_option("--M", bounds_opt.max_sector, "highest azimuthal sector scanned");
  bounds->add_option("--tol", bounds_opt.tol, "relative convergence tolerance");
  bounds->add_option("--threads", bounds_opt.threads, "worker count (0: KELVIN_EIT_THREADS or all cores)");
  bounds->add_option("--output,-o", bounds_opt.output, "output file");
  bounds->add_option("--format", bounds_opt.format, "csv or json");

  EigsOptions eigs_opt;
  auto* eigs = app.add_subcommand("eigs", "DN eigenvalue table for a concentric inclusion");
  eigs->add_option("--d", eigs_opt.d, "dimension");
  eigs->add_option("--r", eigs_opt.r, "inclusion radius");
  eigs->add_option("--N", eigs_opt.truncation, "highest degree");
  eigs->add_option("--output,-o", eigs_opt.output, "output file");
  eigs->add_option("--format", eigs_opt.format, "csv or json");

  MapBallOptions map_opt;
  auto* map_ball = app.add_subcommand("map-ball", "ball <-> concentric ball correspondence");
  map_ball->add_option("--a", map_opt.a, "image of the origin")->delimiter(',');
  map_ball->add_option("--r", map_opt.r, "concentric radius");
  map_ball->add_option("--C", map_opt.C, "inclusion center")->delimiter(',');
  map_ball->add_option("--R", map_opt.R, "inclusion radius");

  VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--seed", verify_opt.seed, "random seed");
  verify->add_option("--only", verify_opt.only, "restrict to suites")->delimiter(',');

  MoebiusOptions moebius_opt;
  auto* moebius = app.add_subcommand("moebius", "compare I_a and M_a at one point of the disk");
  moebius->add_option("--a", moebius_opt.a, "parameter re,im")->delimiter(',')->required();
  moebius->add_option("--x", moebius_opt.x, "point re,im")->delimiter(',')->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(bounds_opt, out, err);
    if (eigs->parsed()) return cmd_eigs(eigs_opt, out);
    if (map_ball->parsed()) return cmd_map_ball(map_opt, out);
    if (verify->parsed()) return cmd_verify(verify_opt, out, err);
    if (moebius->parsed()) return cmd_moebius(moebius_opt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace kelvin_eit::cli
