#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncps/symalg/algebra.hpp"

namespace ncps::ptsym {

using symalg::Alphabet;
using symalg::Expression;
using symalg::Generator;
using symalg::Param;

enum class PTKind { PT, PthetaT, PthetaetaT };

inline std::string_view name_of(PTKind k) {
  switch (k) {
    case PTKind::PT: return "PT";
    case PTKind::PthetaT: return "PthetaT";
    case PTKind::PthetaetaT: return "PthetaetaT";
  }
  return "?";
}

/// Antilinear discrete transformation: flips positions (q, or x and y),
/// fixes momenta, conjugates i, and optionally flips theta and eta.
///
/// On the canonical alphabet the theta/eta flips are the action induced
/// through the Bopp shift: x = q1 - (theta/2hbar) pi2 -> -x needs q -> -q
/// together with theta -> -theta, and px = pi1 + (eta/2hbar) q2 -> px needs
/// eta -> -eta. PthetaT on canonical words is therefore only compatible with
/// the shift when eta = 0.
struct PTVariant {
  PTKind kind;

  [[nodiscard]] bool flips_theta() const { return kind != PTKind::PT; }
  [[nodiscard]] bool flips_eta() const { return kind == PTKind::PthetaetaT; }

  static PTVariant pt() { return {PTKind::PT}; }
  static PTVariant ptheta() { return {PTKind::PthetaT}; }
  static PTVariant pthetaeta() { return {PTKind::PthetaetaT}; }
};

/// Term-wise sign flips and conjugation, followed by normal ordering.
inline Expression apply(const Expression& e, const PTVariant& v) {
  Expression out;
  for (const auto& [key, c] : e.terms()) {
    int sign = 1;
    for (Generator g : key.word)
      if (symalg::is_position(g)) sign = -sign;
    if (v.flips_theta() && key.powers[Param::theta] % 2 != 0) sign = -sign;
    if (v.flips_eta() && key.powers[Param::eta] % 2 != 0) sign = -sign;
    GaussianRational coeff = c.conj();
    if (sign < 0) coeff = -coeff;
    out.add_term(key.word, symalg::Scalar{coeff, key.powers});
  }
  return symalg::normal_order(out);
}

inline bool is_invariant(const Expression& e, const PTVariant& v) {
  return apply(e, v) == symalg::normal_order(e);
}

struct RelationCheck {
  std::string relation;
  bool preserved;
  Expression residual;
};

/// For every generator pair compares T([g_i, g_j]) with [T g_i, T g_j].
inline std::vector<RelationCheck> check_algebra_invariance(const symalg::AlgebraTable& alg,
                                                           const PTVariant& v) {
  std::vector<RelationCheck> report;
  const auto& gens = symalg::generators_of(alg.alphabet());
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const Expression ga(gens[a]);
      const Expression gb(gens[b]);
      const Expression lhs = apply(symalg::commutator(ga, gb, alg), v);
      const Expression rhs = symalg::commutator(apply(ga, v), apply(gb, v), alg);
      Expression residual = lhs - rhs;
      report.push_back({"[" + std::string(symalg::name_of(gens[a])) + "," +
                            std::string(symalg::name_of(gens[b])) + "]",
                        residual.is_zero(), std::move(residual)});
    }
  }
  return report;
}

inline nlohmann::json to_json(const std::vector<RelationCheck>& report) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : report)
    out.push_back({{"relation", r.relation}, {"preserved", r.preserved}, {"residual", r.residual.str()}});
  return out;
}

}  // namespace ncps::ptsym
