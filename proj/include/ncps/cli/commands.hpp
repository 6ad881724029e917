#pragma once

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncps/fock/spectrum.hpp"
#include "ncps/uncertainty.hpp"
#include "ncps/verify.hpp"

namespace ncps::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2, numeric_failure = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string subcommand;
  fock::ParameterPoint point{};
  int cutoff = 12;
  std::string policy = "first_order";
  std::string format;  // empty: csv for tables, json for reports
  std::string out;  // empty: stdout
  std::string param = "tau";
  double from = 0.0, to = 0.0;
  int steps = 11;
  bool brute_force = false;
  double mean_y = 0.0;
  std::optional<double> sigma;
  double kick = 0.0;
  bool sabotage_epsilon = false;
};

inline symalg::TruncationPolicy policy_named(const std::string& name) {
  using P = symalg::TruncationPolicy;
  if (name == "first_order") return P::first_order();
  if (name == "undeformed") return P::undeformed();
  if (name == "with_theta_eta") return P::with_theta_eta();
  if (name == "multilinear") return P::multilinear();
  throw UsageError("unknown policy '" + name + "' (first_order|undeformed|with_theta_eta|multilinear)");
}

inline double& parameter_ref(fock::ParameterPoint& p, const std::string& name) {
  if (name == "hbar") return p.hbar;
  if (name == "mass") return p.m;
  if (name == "omega") return p.omega;
  if (name == "theta") return p.theta;
  if (name == "eta") return p.eta;
  if (name == "tau") return p.tau;
  throw UsageError("unknown sweep parameter '" + name + "' (hbar|mass|omega|theta|eta|tau)");
}

inline void validate(const RunConfig& c) {
  try {
    c.point.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  policy_named(c.policy);
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
  if ((c.subcommand == "verify" || c.subcommand == "uncertainty") && c.format != "json")
    throw UsageError(c.subcommand + " writes json only");
  if (c.subcommand == "verify" && c.cutoff < 5) throw UsageError("verify needs --cutoff >= 5");
  if ((c.subcommand == "spectrum" || c.subcommand == "sweep") && c.cutoff < 4)
    throw UsageError("--cutoff must be at least 4");
  if (c.subcommand == "sweep") {
    if (c.steps < 1) throw UsageError("--steps must be positive");
    fock::ParameterPoint probe = c.point;
    parameter_ref(probe, c.param);
  }
  if (c.subcommand == "uncertainty" && c.point.tau < 0) throw UsageError("tau must be nonnegative");
}

/// Rounds every floating-point leaf to 12 significant digits.
inline void round_numbers(nlohmann::ordered_json& j) {
  if (j.is_number_float())
    j = std::stod(fock::format_number(j.get<double>()));
  else if (j.is_structured())
    for (auto& v : j) round_numbers(v);
}

inline nlohmann::ordered_json parameters_json(const fock::ParameterPoint& p) {
  return {{"hbar", p.hbar}, {"mass", p.m}, {"omega", p.omega}, {"theta", p.theta}, {"eta", p.eta}, {"tau", p.tau}};
}

// ---------------------------------------------------------------------------

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  verify::Options o;
  o.policy = policy_named(c.policy);
  o.bopp_epsilon = c.sabotage_epsilon ? -1 : 1;
  o.point = c.point;
  o.cutoff = c.cutoff;
  const verify::Report r = verify::run_all(o);
  auto j = verify::to_json(r);
  out << j.dump(2) << '\n';
  if (const auto* f = r.first_failure()) {
    err << "verification failed: " << f->group << ": " << f->name << '\n';
    return verification_failed;
  }
  return ok;
}

inline int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream&) {
  const fock::LevelTable t = fock::compute_spectrum(c.point, c.cutoff, policy_named(c.policy));
  if (c.format == "json")
    out << fock::to_json(t).dump(2) << '\n';
  else
    fock::write_csv(out, t);
  return ok;
}

struct SweepPoint {
  double value;
  std::optional<fock::LevelTable> table;
  std::string error;
};

inline std::vector<double> sweep_values(const RunConfig& c) {
  std::vector<double> v;
  for (int k = 0; k < c.steps; ++k)
    v.push_back(c.steps == 1 ? c.from : c.from + (c.to - c.from) * double(k) / double(c.steps - 1));
  return v;
}

/// One spectrum per sweep value, computed in parallel and reported in sweep
/// order. A failing point is recorded and the others continue.
inline std::vector<SweepPoint> run_sweep(const RunConfig& c) {
  const auto values = sweep_values(c);
  const auto policy = policy_named(c.policy);
  std::vector<SweepPoint> points(values.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), values.size()));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < values.size(); i += workers) {
        points[i].value = values[i];
        fock::ParameterPoint p = c.point;
        parameter_ref(p, c.param) = values[i];
        try {
          points[i].table = fock::compute_spectrum(p, c.cutoff, policy);
        } catch (const std::exception& e) {
          points[i].error = e.what();
        }
      }
    }));
  for (auto& j : jobs) j.get();
  return points;
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto points = run_sweep(c);
  using fock::format_number;
  bool failed = false;
  if (c.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& pt : points) {
      if (!pt.table) {
        rows.push_back({{"param_value", pt.value}, {"status", "error: " + pt.error}});
        continue;
      }
      for (const auto& r : pt.table->rows)
        rows.push_back({{"param_value", pt.value},
                        {"n_plus", r.level.n_plus},
                        {"n_minus", r.level.n_minus},
                        {"E_analytic", r.e_analytic},
                        {"E_numeric_re", r.e_numeric.real()},
                        {"E_numeric_im", r.e_numeric.imag()},
                        {"abs_err", r.abs_err},
                        {"status", "ok"}});
    }
    round_numbers(rows);
    out << rows.dump(2) << '\n';
  } else {
    out << "param_value,n_plus,n_minus,E_analytic,E_numeric_re,E_numeric_im,abs_err,status\n";
    for (const auto& pt : points) {
      if (!pt.table) {
        std::string msg = pt.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        out << format_number(pt.value) << ",,,,,,,error: " << msg << '\n';
        continue;
      }
      for (const auto& r : pt.table->rows)
        out << format_number(pt.value) << ',' << r.level.n_plus << ',' << r.level.n_minus << ','
            << format_number(r.e_analytic) << ',' << format_number(r.e_numeric.real()) << ','
            << format_number(r.e_numeric.imag()) << ',' << format_number(r.abs_err) << ",ok\n";
    }
  }
  for (const auto& pt : points)
    if (!pt.table) {
      err << "sweep point " << c.param << "=" << format_number(pt.value) << " failed: " << pt.error << '\n';
      failed = true;
    }
  return failed ? numeric_failure : ok;
}

inline int cmd_uncertainty(const RunConfig& c, std::ostream& out, std::ostream&) {
  const double sigma = c.sigma.value_or(uncertainty::default_probe_sigma(c.point));
  uncertainty::UncertaintyReport rep;
  try {
    rep = uncertainty::uncertainty_report(c.point, c.mean_y, sigma, c.kick);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  nlohmann::ordered_json j{{"parameters", parameters_json(c.point)}};
  j.update(uncertainty::to_json(rep));
  int code = ok;
  if (c.brute_force) {
    uncertainty::ScanGrid grid;
    grid.centers = {c.mean_y};
    const auto scan = uncertainty::brute_force_min_product(c.point, grid);
    auto block = uncertainty::to_json(scan);
    const double worst = std::min(scan.worst_robertson_slack, scan.worst_formula_slack);
    block["max_bound_violation"] = std::max(0.0, -worst - scan.tolerance);
    if (c.point.tau > 0) block["approaches_within_2pct"] = scan.approaches(0.02);
    j["brute_force"] = std::move(block);
    if (!scan.no_violation() || (c.point.tau > 0 && !scan.approaches(0.02))) code = verification_failed;
  }
  round_numbers(j);
  out << j.dump(2) << '\n';
  return code;
}

// ---------------------------------------------------------------------------

/// Fills options that were not given on the command line from a JSON file
/// whose keys are the long flag names.
inline void apply_config_file(CLI::App& app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = nullptr;
    for (CLI::App* sub : app.get_subcommands()) {
      try {
        opt = sub->get_option("--" + key);
      } catch (const CLI::OptionNotFound&) {
      }
    }
    if (!opt) {
      try {
        opt = app.get_option("--" + key);
      } catch (const CLI::OptionNotFound&) {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
    if (opt->count() > 0) continue;  // the flag wins
    std::string text;
    if (value.is_string())
      text = value.get<std::string>();
    else if (value.is_boolean())
      text = value.get<bool>() ? "true" : "false";
    else
      text = value.dump();
    opt->add_result(text);
    opt->run_callback();
  }
}

/// Parses `args` (without the program name), runs the subcommand and maps
/// failures onto the exit-code contract.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Noncommutative oscillator: symbolic checks, spectra and uncertainty bounds", "ncps"};
  app.require_subcommand(1);
  std::string config_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--hbar", c.point.hbar, "reduced Planck constant");
    sub->add_option("--mass", c.point.m, "mass");
    sub->add_option("--omega", c.point.omega, "angular frequency");
    sub->add_option("--theta", c.point.theta, "position noncommutativity");
    sub->add_option("--eta", c.point.eta, "momentum noncommutativity");
    sub->add_option("--tau", c.point.tau, "deformation parameter");
    sub->add_option("--cutoff", c.cutoff, "Fock cutoff N (n+ + n- <= N)");
    sub->add_option("--policy", c.policy, "truncation policy");
    sub->add_option("--format", c.format, "csv or json");
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--config", config_path, "JSON file with flag values");
  };
  CLI::App* verify = app.add_subcommand("verify", "symbolic, PT and Fock-diagonal identity suite");
  common(verify);
  verify->add_flag("--sabotage-epsilon", c.sabotage_epsilon, "flip the sign convention of the Bopp shift (debug)");
  CLI::App* spectrum = app.add_subcommand("spectrum", "classified truncated-Fock spectrum");
  common(spectrum);
  CLI::App* sweep = app.add_subcommand("sweep", "spectrum over a parameter range");
  common(sweep);
  sweep->add_option("--param", c.param, "parameter to vary");
  sweep->add_option("--from", c.from, "first value");
  sweep->add_option("--to", c.to, "last value");
  sweep->add_option("--steps", c.steps, "number of points");
  CLI::App* unc = app.add_subcommand("uncertainty", "minimal-uncertainty and squeezing bounds");
  common(unc);
  unc->add_flag("--brute-force", c.brute_force, "confirm the bounds by a trial-state scan");
  unc->add_option("--mean-y", c.mean_y, "<Y> of the probe state");
  unc->add_option("--sigma", c.sigma, "width of the probe state");
  unc->add_option("--kick", c.kick, "momentum kick of the probe state");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  std::ofstream file;
  try {
    if (!config_path.empty()) apply_config_file(app, config_path);
    if (c.format.empty()) c.format = (c.subcommand == "spectrum" || c.subcommand == "sweep") ? "csv" : "json";
    validate(c);
    if (!c.out.empty()) {
      file.open(c.out);
      if (!file) throw UsageError("cannot write '" + c.out + "'");
    }
    std::ostream& sink = c.out.empty() ? out : file;
    std::ostringstream buffer;  // written once at the end
    int code = ok;
    if (c.subcommand == "verify") code = cmd_verify(c, buffer, err);
    if (c.subcommand == "spectrum") code = cmd_spectrum(c, buffer, err);
    if (c.subcommand == "sweep") code = cmd_sweep(c, buffer, err);
    if (c.subcommand == "uncertainty") code = cmd_uncertainty(c, buffer, err);
    sink << buffer.str();
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const uncertainty::DomainError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return numeric_failure;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace ncps::cli
