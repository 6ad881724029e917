#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace ncps::uncertainty {

struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what + " (achieved error estimate " + std::to_string(estimate) + ")"),
        achieved(estimate) {}
  double achieved;
};

using ComplexFn = std::function<std::complex<double>(double)>;

struct QuadratureResult {
  std::complex<double> value;
  double error;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;  // handed to the tanh-sinh refinement
};

/// Integral over the real line through y = scale * tan(u), u in (-pi/2, pi/2).
/// The u-range is split at the images of `breaks` (peak locations) so that
/// narrow features sit where the nodes cluster. Throws QuadratureError when
/// the estimate exceeds `abs_tol`.
inline QuadratureResult integrate_line(const ComplexFn& f, double scale, std::vector<double> breaks = {},
                                       const QuadratureOptions& opts = {}) {
  if (!(scale > 0)) throw std::invalid_argument("quadrature scale must be positive");
  constexpr double half_pi = std::numbers::pi / 2;
  std::vector<double> cuts{-half_pi};
  for (double b : breaks) cuts.push_back(std::atan(b / scale));
  cuts.push_back(half_pi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             cuts.end());

  // (u, distance to the nearer end) form: near +-pi/2 the tangent is taken
  // from the complement, which keeps full precision in the far tails
  auto pulled_back = [&](double u, double uc, bool left_open, bool right_open) -> std::complex<double> {
    double t;
    if (uc < 0 && left_open)
      t = -1.0 / std::tan(-uc);
    else if (uc > 0 && right_open)
      t = 1.0 / std::tan(uc);
    else
      t = std::tan(u);
    const double jac = scale * (1.0 + t * t);
    if (!std::isfinite(jac)) return 0.0;
    const std::complex<double> v = f(scale * t);
    return v == 0.0 ? v : v * jac;
  };

  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  QuadratureResult out{{0.0, 0.0}, 0.0};
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double err_re = 0.0, err_im = 0.0, re = 0.0, im = 0.0;
    const bool lo = k == 0, hi = k + 2 == cuts.size();
    try {
      re = integrator.integrate([&](double u, double uc) { return pulled_back(u, uc, lo, hi).real(); }, cuts[k],
                                cuts[k + 1], opts.rel_tol, &err_re);
      im = integrator.integrate([&](double u, double uc) { return pulled_back(u, uc, lo, hi).imag(); }, cuts[k],
                                cuts[k + 1], opts.rel_tol, &err_im);
    } catch (const boost::math::evaluation_error& e) {
      throw QuadratureError(e.what(), std::numeric_limits<double>::infinity());
    }
    out.value += std::complex<double>(re, im);
    out.error += err_re + err_im;
  }
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
    throw QuadratureError("quadrature produced a non-finite value", out.error);
  if (out.error > opts.abs_tol) throw QuadratureError("quadrature did not reach tolerance", out.error);
  return out;
}

}  // namespace ncps::uncertainty
