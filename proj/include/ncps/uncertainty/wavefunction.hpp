#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ncps::uncertainty {

enum class Family { gaussian, deformed_gaussian };

inline std::string to_string(Family f) { return f == Family::gaussian ? "gaussian" : "deformed_gaussian"; }

/// psi, psi', psi'' at one point.
struct Jet {
  std::complex<double> value, d1, d2;
};

/// Closed-form trial states on the y line (unnormalized).
///
/// gaussian:           exp(-(y-a)^2 / 2 sigma^2 + i k y)
/// deformed_gaussian:  N (1 + tau y^2)^(-c/2) exp(beta u),  u = atan(sqrt(tau) y),
///                     c = 1/(tau sigma^2),  beta = a/(sigma^2 sqrt(tau)) + i k/sqrt(tau),
///                     N fixed by |psi(a)| = 1
///
/// The deformed family has <Y> = a exactly, turns into the gaussian as
/// tau -> 0, and contains the states saturating [Y,P_y] = i hbar (1 + tau Y^2).
/// Its kick is a plane wave in sqrt(tau)^-1 atan(sqrt(tau) y), on which P_y acts
/// as hbar k. Finite <Y^2> and <P_y^2> need c > 1/2.
struct Wavefunction {
  Family family = Family::gaussian;
  double center = 0.0;
  double sigma = 1.0;
  double kick = 0.0;
  double tau = 0.0;  // deformed family only

  static Wavefunction gaussian(double a, double sigma, double k = 0.0) {
    if (!(sigma > 0)) throw std::invalid_argument("gaussian width must be positive");
    return {Family::gaussian, a, sigma, k, 0.0};
  }

  static Wavefunction deformed_gaussian(double a, double sigma, double k, double tau) {
    if (!(sigma > 0)) throw std::invalid_argument("gaussian width must be positive");
    if (tau < 0) throw std::invalid_argument("tau must be nonnegative");
    if (tau > 0 && 1.0 / (tau * sigma * sigma) <= 0.5)
      throw std::invalid_argument("deformed gaussian needs tau sigma^2 < 2 for finite moments");
    return {Family::deformed_gaussian, a, sigma, k, tau};
  }

  [[nodiscard]] bool flat() const { return family == Family::gaussian || tau == 0.0; }

  [[nodiscard]] Jet jet(double y) const {
    std::complex<double> value, logd, logd2;
    if (flat()) {
      const double s2 = sigma * sigma;
      value = std::exp(std::complex<double>(-(y - center) * (y - center) / (2 * s2), kick * y));
      logd = std::complex<double>(-(y - center) / s2, kick);
      logd2 = -1.0 / s2;
    } else {
      const double st = std::sqrt(tau);
      const double c = 1.0 / (tau * sigma * sigma);
      const double b = center / (sigma * sigma * st);
      const std::complex<double> beta(b, kick / st);
      const double g = 1.0 + tau * y * y;
      // log|psi| relative to its maximum at y = a, so |psi(a)| = 1 as for the gaussian
      auto log_mod = [&](double t) { return -0.5 * c * std::log1p(tau * t * t) + b * std::atan(st * t); };
      const double u = std::atan(st * y);
      value = std::exp(std::complex<double>(log_mod(y) - log_mod(center), kick * u / st));
      const std::complex<double> num = -c * tau * y + beta * st;
      logd = num / g;
      logd2 = (-c * tau * g - num * (2.0 * tau * y)) / (g * g);
    }
    if (value == 0.0) return {};  // far tail: avoid inf * 0
    return {value, logd * value, (logd2 + logd * logd) * value};
  }

  std::complex<double> operator()(double y) const { return jet(y).value; }

  /// Length scale for the compactifying quadrature map.
  [[nodiscard]] double scale() const { return flat() ? sigma : 1.0 / std::sqrt(tau); }
};

}  // namespace ncps::uncertainty
