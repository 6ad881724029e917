#pragma once

#include <map>
#include <string>
#include <utility>

#include "ncps/symalg/algebra.hpp"

namespace ncps::symalg {

/// Homomorphic image of each source generator, expressed over `target`.
struct SubstitutionMap {
  std::string name;
  Alphabet target;
  std::map<Generator, Expression> images;
};

/// Bopp shift
///   x_i = q_i - (theta / 2 hbar) eps_ij pi_j
///   p_i = pi_i + (eta / 2 hbar) eps_ij q_j
/// with eps_12 = +1. `epsilon_sign = -1` flips the convention; only used to
/// check that the closure test notices.
inline SubstitutionMap bopp(int epsilon_sign = 1) {
  using G = Generator;
  const Scalar half_theta_over_hbar{GaussianRational(Rational(epsilon_sign, 2)),
                                    Monomial::of(Param::theta) * Monomial::of(Param::hbar, -1)};
  const Scalar half_eta_over_hbar{GaussianRational(Rational(epsilon_sign, 2)),
                                  Monomial::of(Param::eta) * Monomial::of(Param::hbar, -1)};
  SubstitutionMap map{"bopp", Alphabet::canonical, {}};
  map.images[G::x] = Expression(G::q1) - half_theta_over_hbar * Expression(G::pi2);
  map.images[G::y] = Expression(G::q2) + half_theta_over_hbar * Expression(G::pi1);
  map.images[G::px] = Expression(G::pi1) + half_eta_over_hbar * Expression(G::q2);
  map.images[G::py] = Expression(G::pi2) - half_eta_over_hbar * Expression(G::q1);
  return map;
}

struct MissingImageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Replace every generator by its image, then normal-order in the target algebra.
inline Expression substitute(const Expression& e, const SubstitutionMap& map) {
  Expression out;
  for (const auto& [key, c] : e.terms()) {
    Expression term(Scalar{c, key.powers});
    for (Generator g : key.word) {
      auto it = map.images.find(g);
      if (it == map.images.end())
        throw MissingImageError("substitution '" + map.name + "' has no image for " +
                                std::string(name_of(g)));
      term *= it->second;
    }
    out += term;
  }
  return normal_order(out, AlgebraTable::for_alphabet(map.target));
}

// ---------------------------------------------------------------------------
// Deformed (non-Hermitian) variables over the noncommutative alphabet:
//   X = (1 + tau y^2) x,  Y = y,  Px = px,  Py = (1 + tau y^2) py

enum class Capital { X, Y, Px, Py };

inline std::string_view name_of(Capital c) {
  switch (c) {
    case Capital::X: return "X";
    case Capital::Y: return "Y";
    case Capital::Px: return "Px";
    case Capital::Py: return "Py";
  }
  return "?";
}

/// The deformation factor 1 + tau y^2.
inline Expression deformation_factor() {
  return Expression(1) + param(Param::tau) * Expression::word({Generator::y, Generator::y});
}

/// Unreduced image of a capital operator.
inline Expression rep6(Capital c) {
  using G = Generator;
  switch (c) {
    case Capital::X: return deformation_factor() * Expression(G::x);
    case Capital::Y: return Expression(G::y);
    case Capital::Px: return Expression(G::px);
    case Capital::Py: return deformation_factor() * Expression(G::py);
  }
  return {};
}

inline constexpr std::array<Capital, 4> all_capitals{Capital::X, Capital::Y, Capital::Px,
                                                     Capital::Py};

}  // namespace ncps::symalg
