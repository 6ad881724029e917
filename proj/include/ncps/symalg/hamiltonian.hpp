#pragma once

#include "ncps/symalg/parser.hpp"
#include "ncps/symalg/substitution.hpp"
#include "ncps/symalg/truncation.hpp"

namespace ncps::symalg {

/// H = (Px^2 + Py^2)/2m + m omega^2 (X^2 + Y^2)/2 over the noncommutative
/// alphabet, unreduced.
inline Expression deformed_hamiltonian() {
  const Expression X = rep6(Capital::X);
  const Expression Y = rep6(Capital::Y);
  const Expression Px = rep6(Capital::Px);
  const Expression Py = rep6(Capital::Py);
  const Scalar kinetic{Rational(1, 2), Monomial::of(Param::m, -1)};
  const Scalar potential{Rational(1, 2), Monomial::of(Param::m) * Monomial::of(Param::omega, 2)};
  return kinetic * (Px * Px + Py * Py) + potential * (X * X + Y * Y);
}

/// The deformed Hamiltonian rewritten in canonical variables (via the Bopp
/// shift), normal-ordered and truncated by `policy`.
///
/// The unreduced noncommutative words are substituted directly: the shift
/// only closes the noncommutative algebra up to i theta eta / 4 hbar, so
/// reordering before substituting would change the theta*eta terms.
/// Truncating first is safe because substitution never lowers a power.
inline Expression build_hamiltonian_symbolic(
    const TruncationPolicy& policy = TruncationPolicy::first_order(),
    const SubstitutionMap& shift = bopp()) {
  return truncate(substitute(truncate(deformed_hamiltonian(), policy), shift), policy);
}

// Reference pieces of the first-order Hamiltonian, written out directly.

/// (pi1^2 + pi2^2)/2m + m omega^2 (q1^2 + q2^2)/2
inline Expression oscillator_part() {
  return parse("(pi1^2 + pi2^2)/(2*m) + m*omega^2*(q1^2 + q2^2)/2");
}

/// q2 pi1 - q1 pi2, whose Fock diagonal is hbar (n+ - n-).
inline Expression rotation_generator() { return parse("q2*pi1 - q1*pi2"); }

/// (eta/2 m hbar + m omega^2 theta/2 hbar)(q2 pi1 - q1 pi2)
inline Expression rotation_part() {
  return parse("(eta/(2*m*hbar) + m*omega^2*theta/(2*hbar))") * rotation_generator();
}

/// m omega^2 q2^2 q1^2 - (i hbar/m) q2 pi2 + (1/m) q2^2 pi2^2, without the tau prefactor.
inline Expression tau_part_unit() {
  return normal_order(parse("m*omega^2*q2^2*q1^2 - i*hbar/m*q2*pi2 + q2^2*pi2^2/m"),
                      AlgebraTable::canonical());
}

inline Expression tau_part() { return param(Param::tau) * tau_part_unit(); }

/// H_c + H_theta_eta + H_tau
inline Expression first_order_reference() {
  return oscillator_part() + rotation_part() + tau_part();
}

}  // namespace ncps::symalg
