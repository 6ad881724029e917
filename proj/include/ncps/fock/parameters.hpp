#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ncps/symalg/expression.hpp"

namespace ncps::fock {

/// Numeric values for (hbar, m, omega, theta, eta, tau). The derived
/// quantities are recomputed on every call.
struct ParameterPoint {
  double hbar = 1.0;
  double m = 1.0;
  double omega = 1.0;
  double theta = 0.0;
  double eta = 0.0;
  double tau = 0.0;

  void validate() const {
    if (!(hbar > 0) || !(m > 0) || !(omega > 0))
      throw std::invalid_argument("hbar, m and omega must be positive");
    if (!std::isfinite(theta) || !std::isfinite(eta) || !std::isfinite(tau))
      throw std::invalid_argument("deformation parameters must be finite");
  }

  /// sqrt(1 + m^2 omega^2 theta^2 / 4 hbar^2)
  [[nodiscard]] double kappa() const {
    return std::sqrt(1.0 + m * m * omega * omega * theta * theta / (4.0 * hbar * hbar));
  }
  /// omega sqrt(1 + eta^2 / 4 m^2 omega^2 hbar^2)
  [[nodiscard]] double omega_R() const {
    return omega * std::sqrt(1.0 + eta * eta / (4.0 * m * m * omega * omega * hbar * hbar));
  }
  /// 1/m_R = 1/m + m omega^2 theta^2 / 2 hbar, kept in the printed form even
  /// though it is not dimensionally consistent with kappa / m.
  [[nodiscard]] double m_R() const { return 1.0 / (1.0 / m + m * omega * omega * theta * theta / (2.0 * hbar)); }

  [[nodiscard]] double value(symalg::Param p) const {
    switch (p) {
      case symalg::Param::hbar: return hbar;
      case symalg::Param::m: return m;
      case symalg::Param::omega: return omega;
      case symalg::Param::theta: return theta;
      case symalg::Param::eta: return eta;
      case symalg::Param::tau: return tau;
    }
    return 0.0;
  }

  [[nodiscard]] double evaluate(const symalg::Monomial& mono) const {
    double v = 1.0;
    for (std::size_t k = 0; k < symalg::param_count; ++k) {
      const int e = mono.exponents()[k];
      if (e != 0) v *= std::pow(value(static_cast<symalg::Param>(k)), e);
    }
    return v;
  }

  [[nodiscard]] std::complex<double> evaluate(const GaussianRational& c,
                                              const symalg::Monomial& mono) const {
    return std::complex<double>(c.re.to_double(), c.im.to_double()) * evaluate(mono);
  }
};

}  // namespace ncps::fock
