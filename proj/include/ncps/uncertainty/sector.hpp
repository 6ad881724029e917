#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncps/fock/parameters.hpp"
#include "ncps/uncertainty/quadrature.hpp"
#include "ncps/uncertainty/wavefunction.hpp"

namespace ncps::uncertainty {

using fock::ParameterPoint;

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operators of the Y-P_y sector in the y representation, with
/// p_y = -i hbar d/dy and P_y = (1 + tau y^2) p_y.
enum class SectorOp { identity, Y, Py, Y2, Py2, commutator, d_dy };

inline std::string to_string(SectorOp op) {
  switch (op) {
    case SectorOp::identity: return "1";
    case SectorOp::Y: return "Y";
    case SectorOp::Py: return "P_y";
    case SectorOp::Y2: return "Y^2";
    case SectorOp::Py2: return "P_y^2";
    case SectorOp::commutator: return "[Y,P_y]";
    case SectorOp::d_dy: return "d/dy";
  }
  return "?";
}

inline void require_tau(double tau) {
  if (!(tau >= 0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be finite and nonnegative");
}

/// (O psi)(y).
inline std::complex<double> apply(SectorOp op, const Wavefunction& psi, double y, const ParameterPoint& p) {
  const Jet j = psi.jet(y);
  if (j.value == 0.0 && j.d1 == 0.0 && j.d2 == 0.0) return 0.0;
  const double g = 1.0 + p.tau * y * y;
  const std::complex<double> i(0.0, 1.0);
  switch (op) {
    case SectorOp::identity: return j.value;
    case SectorOp::Y: return y * j.value;
    case SectorOp::Y2: return y * y * j.value;
    case SectorOp::Py: return -i * p.hbar * g * j.d1;
    case SectorOp::Py2: return -p.hbar * p.hbar * g * (2.0 * p.tau * y * j.d1 + g * j.d2);
    case SectorOp::commutator: return i * p.hbar * g * j.value;
    case SectorOp::d_dy: return j.d1;
  }
  return 0.0;
}

/// Integrates w(y) f(y) with w = 1/(1 + tau y^2).
inline std::complex<double> weighted_integral(const ComplexFn& f, double tau, double scale,
                                              std::vector<double> breaks = {}) {
  require_tau(tau);
  return integrate_line([&](double y) { return f(y) / (1.0 + tau * y * y); }, scale, std::move(breaks)).value;
}

/// rho_inner(phi, psi) = integral dy/(1 + tau y^2) conj(psi(y)) phi(y).
/// Linear in the first argument, antilinear in the second.
inline std::complex<double> rho_inner(const ComplexFn& phi, const ComplexFn& psi, double tau, double scale = 0.0,
                                      std::vector<double> breaks = {}) {
  if (scale <= 0.0) scale = tau > 0 ? 1.0 / std::sqrt(tau) : 1.0;
  return weighted_integral([&](double y) { return std::conj(psi(y)) * phi(y); }, tau, scale, std::move(breaks));
}

inline std::complex<double> rho_inner(const Wavefunction& phi, const Wavefunction& psi, double tau) {
  return weighted_integral([&](double y) { return std::conj(psi(y)) * phi(y); }, tau,
                           std::min(phi.scale(), psi.scale()), {phi.center, psi.center});
}

/// <phi| O psi>_rho in bra-ket order.
inline std::complex<double> matrix_element(const Wavefunction& phi, SectorOp op, const Wavefunction& psi,
                                           const ParameterPoint& p) {
  return weighted_integral([&](double y) { return std::conj(phi(y)) * apply(op, psi, y, p); }, p.tau,
                           std::min(phi.scale(), psi.scale()), {phi.center, psi.center});
}

/// <O phi| psi>_rho.
inline std::complex<double> matrix_element_left(const Wavefunction& phi, SectorOp op, const Wavefunction& psi,
                                                const ParameterPoint& p) {
  return weighted_integral([&](double y) { return std::conj(apply(op, phi, y, p)) * psi(y); }, p.tau,
                           std::min(phi.scale(), psi.scale()), {phi.center, psi.center});
}

inline double rho_norm2(const Wavefunction& psi, double tau) { return rho_inner(psi, psi, tau).real(); }

/// <psi|O psi>_rho / <psi|psi>_rho. Throws NumericError when the result has
/// an imaginary part above 1e-8 (relative to max(1, |Re|)) for the
/// observables Y, P_y, Y^2, P_y^2.
inline std::complex<double> expectation_complex(SectorOp op, const Wavefunction& psi, const ParameterPoint& p) {
  return matrix_element(psi, op, psi, p) / rho_norm2(psi, p.tau);
}

inline double expectation(SectorOp op, const Wavefunction& psi, const ParameterPoint& p) {
  const std::complex<double> v = expectation_complex(op, psi, p);
  if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v.real())))
    throw NumericError("expectation of " + to_string(op) + " is not real: imaginary part " +
                       std::to_string(v.imag()));
  return v.real();
}

struct HermiticityReport {
  SectorOp op;
  std::size_t pairs = 0;
  double max_deviation = 0.0;
  double tolerance = 1e-8;
  [[nodiscard]] bool passed() const { return max_deviation <= tolerance; }
};

/// max |<phi|O psi>_rho - <O phi|psi>_rho| over all ordered pairs of the set.
inline HermiticityReport verify_rho_hermiticity(SectorOp op, const std::vector<Wavefunction>& states,
                                                const ParameterPoint& p, double tol = 1e-8) {
  HermiticityReport r{op, 0, 0.0, tol};
  for (const auto& phi : states)
    for (const auto& psi : states) {
      const double d = std::abs(matrix_element(phi, op, psi, p) - matrix_element_left(phi, op, psi, p));
      r.max_deviation = std::max(r.max_deviation, d);
      ++r.pairs;
    }
  return r;
}

/// Reproducible set of ordinary gaussians with centers in [-3, 3], widths in
/// [0.5, 3] and kicks in [-1, 1].
inline std::vector<Wavefunction> random_gaussians(std::size_t count, unsigned seed = 7) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> center(-3.0, 3.0), width(0.5, 3.0), kick(-1.0, 1.0);
  std::vector<Wavefunction> out;
  for (std::size_t k = 0; k < count; ++k) {
    const double a = center(rng), s = width(rng), q = kick(rng);
    out.push_back(Wavefunction::gaussian(a, s, q));
  }
  return out;
}

}  // namespace ncps::uncertainty
