#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ncps/uncertainty/sector.hpp"

namespace ncps::uncertainty {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// |theta| sqrt(tau) sqrt(1 + tau <Y>^2)
inline double min_delta_x(const ParameterPoint& p, double mean_y) {
  require_tau(p.tau);
  return std::abs(p.theta) * std::sqrt(p.tau) * std::sqrt(1.0 + p.tau * mean_y * mean_y);
}

/// hbar sqrt(tau) sqrt(1 + tau <Y>^2)
inline double min_delta_py(const ParameterPoint& p, double mean_y) {
  require_tau(p.tau);
  return p.hbar * std::sqrt(p.tau) * std::sqrt(1.0 + p.tau * mean_y * mean_y);
}

/// Roots in Delta Y of Delta Y Delta P_y = (hbar/2)(1 + tau (Delta Y^2 + <Y>^2)):
///   Delta P_y/(hbar tau) -+ sqrt(Delta P_y^2 - hbar^2 tau (1 + tau <Y>^2))/(hbar tau)
/// A discriminant below zero by no more than 1e-12 of its scale is a double root.
inline std::pair<double, double> delta_y_solutions(double delta_py, const ParameterPoint& p, double mean_y) {
  require_tau(p.tau);
  if (p.tau == 0.0) throw DomainError("delta_y_solutions needs tau > 0");
  const double scale = p.hbar * p.hbar * p.tau * (1.0 + p.tau * mean_y * mean_y);
  double disc = delta_py * delta_py - scale;
  if (disc < 0) {
    if (disc < -1e-12 * scale)
      throw DomainError("Delta P_y = " + std::to_string(delta_py) + " is below the minimum " +
                        std::to_string(min_delta_py(p, mean_y)) + ": discriminant " + std::to_string(disc));
    disc = 0.0;
  }
  const double ht = p.hbar * p.tau;
  return {(delta_py - std::sqrt(disc)) / ht, (delta_py + std::sqrt(disc)) / ht};
}

/// Upper end of the squeezing interval, sqrt(hbar (1 + tau <Y>^2) / (2 - hbar tau)).
inline double squeezing_bound(const ParameterPoint& p, double mean_y) {
  require_tau(p.tau);
  if (p.hbar * p.tau >= 2.0) throw DomainError("squeezing bound needs hbar tau < 2");
  return std::sqrt(p.hbar * (1.0 + p.tau * mean_y * mean_y) / (2.0 - p.hbar * p.tau));
}

}  // namespace ncps::uncertainty
