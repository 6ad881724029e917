#pragma once

#include <algorithm>
#include <vector>

#include "ncps/symalg/expression.hpp"

namespace ncps::symalg {

/// Maximum exponents for the deformation parameters plus forbidden products.
/// A term is dropped if an exponent exceeds its cap or its (theta, eta, tau)
/// part is divisible by a forbidden monomial.
struct TruncationPolicy {
  struct Deformation {
    int theta = 0;
    int eta = 0;
    int tau = 0;
    friend bool operator==(const Deformation&, const Deformation&) = default;
  };

  Deformation caps{1, 1, 1};
  std::vector<Deformation> forbidden;

  /// First order in each parameter, no products of two deformations.
  static TruncationPolicy first_order() {
    return {{1, 1, 1}, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}, {0, 2, 0}, {2, 0, 0}}};
  }
  /// Undeformed oscillator.
  static TruncationPolicy undeformed() { return {{0, 0, 0}, {}}; }
  /// Like first_order but keeps the theta*eta cross term.
  static TruncationPolicy with_theta_eta() {
    return {{1, 1, 1}, {{1, 0, 1}, {0, 1, 1}, {0, 0, 2}, {0, 2, 0}, {2, 0, 0}}};
  }
  /// Everything up to first order in each parameter separately, all products kept.
  static TruncationPolicy multilinear() { return {{1, 1, 1}, {}}; }

  [[nodiscard]] bool keeps(const Monomial& m) const {
    const int th = m[Param::theta];
    const int et = m[Param::eta];
    const int ta = m[Param::tau];
    if (th > caps.theta || et > caps.eta || ta > caps.tau) return false;
    return std::none_of(forbidden.begin(), forbidden.end(), [&](const Deformation& f) {
      return th >= f.theta && et >= f.eta && ta >= f.tau;
    });
  }
};

inline Expression truncate(const Expression& e, const TruncationPolicy& policy) {
  Expression out;
  for (const auto& [key, c] : e.terms())
    if (policy.keeps(key.powers)) out.add_term(key.word, Scalar{c, key.powers});
  return out;
}

}  // namespace ncps::symalg
