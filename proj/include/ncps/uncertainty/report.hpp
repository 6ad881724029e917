#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncps/uncertainty/bounds.hpp"

namespace ncps::uncertainty {

/// Moments of one state, all from quadrature.
struct StateMoments {
  Wavefunction state;
  double mean_Y = 0, delta_Y = 0, mean_Py = 0, delta_Py = 0;
  double commutator = 0;  // |<[Y,P_y]>_rho|
  double y2 = 0;          // <Y^2>
};

inline StateMoments measure(const Wavefunction& psi, const ParameterPoint& p) {
  const double norm = rho_norm2(psi, p.tau);
  auto moment = [&](SectorOp op) {
    const std::complex<double> v = matrix_element(psi, op, psi, p) / norm;
    if (op != SectorOp::commutator && std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v.real())))
      throw NumericError("expectation of " + to_string(op) + " is not real");
    return v;
  };
  StateMoments m{psi};
  m.mean_Y = moment(SectorOp::Y).real();
  m.y2 = moment(SectorOp::Y2).real();
  m.mean_Py = moment(SectorOp::Py).real();
  const double py2 = moment(SectorOp::Py2).real();
  m.delta_Y = std::sqrt(std::max(0.0, m.y2 - m.mean_Y * m.mean_Y));
  m.delta_Py = std::sqrt(std::max(0.0, py2 - m.mean_Py * m.mean_Py));
  m.commutator = std::abs(moment(SectorOp::commutator));
  return m;
}

struct UncertaintyReport {
  double mean_Y = 0, delta_Y = 0, mean_Py = 0, delta_Py = 0;
  double delta_X_min = 0, delta_Py_min = 0, squeezing_upper_bound = 0;
  Wavefunction state;
};

/// Probe state: deformed gaussian centred at `mean_y` (exact <Y>). The bounds
/// are evaluated at the measured <Y>.
inline UncertaintyReport uncertainty_report(const ParameterPoint& p, double mean_y, double sigma, double kick = 0.0) {
  require_tau(p.tau);
  const Wavefunction psi = Wavefunction::deformed_gaussian(mean_y, sigma, kick, p.tau);
  const StateMoments m = measure(psi, p);
  return {m.mean_Y,
          m.delta_Y,
          m.mean_Py,
          m.delta_Py,
          min_delta_x(p, m.mean_Y),
          min_delta_py(p, m.mean_Y),
          squeezing_bound(p, m.mean_Y),
          psi};
}

/// Width of the probe state that saturates the bound at <Y> = 0.
inline double default_probe_sigma(const ParameterPoint& p) { return p.tau > 0 ? 1.0 / std::sqrt(p.tau) : 1.0; }

/// Trial family for the scan. Widths are geometric between sigma_min and
/// sigma_max; the deformed family drops widths with tau sigma^2 > 4/3 so that
/// its moments stay well inside the convergent range.
struct ScanGrid {
  double sigma_min = 0.2;
  double sigma_max = 40.0;
  std::size_t sigma_points = 200;
  std::vector<double> kicks{0.0, 0.3};
  std::vector<double> centers{0.0};
  bool gaussians = true;
  bool deformed = true;
};

struct ScanReport {
  std::size_t states = 0;
  double worst_robertson_slack = 0;   // min of Delta Y Delta P_y - |<[Y,P_y]>|/2
  double worst_formula_slack = 0;     // min of Delta Y Delta P_y - (hbar/2)(1 + tau <Y^2>)
  double min_ratio = 0;               // min of Delta P_y / (Delta P_y)_min(<Y>)
  StateMoments best;                  // state attaining min_ratio
  double tolerance = 1e-9;
  [[nodiscard]] bool no_violation() const {
    return worst_robertson_slack >= -tolerance && worst_formula_slack >= -tolerance && min_ratio >= 1.0 - tolerance;
  }
  [[nodiscard]] bool approaches(double rel) const { return min_ratio <= 1.0 + rel; }
};

inline std::vector<Wavefunction> scan_states(const ScanGrid& g, double tau) {
  std::vector<Wavefunction> out;
  const std::size_t n = std::max<std::size_t>(g.sigma_points, 2);
  for (double a : g.centers)
    for (double k : g.kicks)
      for (std::size_t i = 0; i < n; ++i) {
        const double s = g.sigma_min * std::pow(g.sigma_max / g.sigma_min, double(i) / double(n - 1));
        if (g.gaussians) out.push_back(Wavefunction::gaussian(a, s, k));
        if (g.deformed && tau > 0 && tau * s * s <= 4.0 / 3.0)
          out.push_back(Wavefunction::deformed_gaussian(a, s, k, tau));
      }
  return out;
}

/// Independent check of the minimum-uncertainty formula: every trial state
/// must satisfy the Robertson bound evaluated by quadrature, and the smallest
/// Delta P_y found should come close to the closed form.
inline ScanReport brute_force_min_product(const ParameterPoint& p, const ScanGrid& grid = {},
                                          unsigned threads = std::thread::hardware_concurrency()) {
  require_tau(p.tau);
  const std::vector<Wavefunction> states = scan_states(grid, p.tau);
  if (states.empty()) throw std::invalid_argument("empty scan grid");
  std::vector<StateMoments> moments(states.size());

  threads = std::max(1u, threads);
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < states.size(); i += threads) moments[i] = measure(states[i], p);
    }));
  for (auto& j : jobs) j.get();

  ScanReport r;
  r.states = states.size();
  r.worst_robertson_slack = r.worst_formula_slack = r.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& m : moments) {
    const double product = m.delta_Y * m.delta_Py;
    r.worst_robertson_slack = std::min(r.worst_robertson_slack, product - 0.5 * m.commutator);
    r.worst_formula_slack = std::min(r.worst_formula_slack, product - 0.5 * p.hbar * (1.0 + p.tau * m.y2));
    if (p.tau > 0) {
      const double ratio = m.delta_Py / min_delta_py(p, m.mean_Y);
      if (ratio < r.min_ratio) {
        r.min_ratio = ratio;
        r.best = m;
      }
    }
  }
  return r;
}

inline nlohmann::ordered_json to_json(const Wavefunction& w) {
  nlohmann::ordered_json j{{"family", to_string(w.family)}, {"center", w.center}, {"sigma", w.sigma}, {"kick", w.kick}};
  return j;
}

inline nlohmann::ordered_json to_json(const UncertaintyReport& r) {
  return {{"mean_Y", r.mean_Y},
          {"delta_Y", r.delta_Y},
          {"mean_Py", r.mean_Py},
          {"delta_Py", r.delta_Py},
          {"bounds",
           {{"delta_X_min", r.delta_X_min},
            {"delta_Py_min", r.delta_Py_min},
            {"squeezing_upper_bound", r.squeezing_upper_bound}}},
          {"state", to_json(r.state)}};
}

inline nlohmann::ordered_json to_json(const ScanReport& r) {
  nlohmann::ordered_json j{{"states", r.states},
                           {"worst_robertson_slack", r.worst_robertson_slack},
                           {"worst_formula_slack", r.worst_formula_slack},
                           {"no_violation", r.no_violation()}};
  if (std::isfinite(r.min_ratio)) {
    j["min_ratio"] = r.min_ratio;
    j["best_state"] = to_json(r.best.state);
    j["best_mean_Y"] = r.best.mean_Y;
    j["best_delta_Py"] = r.best.delta_Py;
  }
  return j;
}

}  // namespace ncps::uncertainty
