#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncps/fock/spectrum.hpp"
#include "ncps/symalg/algebra.hpp"
#include "ncps/symalg/hamiltonian.hpp"

namespace ncps::fock {

/// Outcome of comparing a Fock diagonal against a closed form on the
/// interior states.
struct DiagonalIdentity {
  std::string name;
  double max_rel_error = 0.0;
  Level worst{};
  double measured_at_worst = 0.0;
  double expected_at_worst = 0.0;
  bool passed = false;
};

struct DiagonalReport {
  std::vector<DiagonalIdentity> identities;
  double tolerance = 1e-10;
  [[nodiscard]] bool passed() const {
    for (const auto& i : identities)
      if (!i.passed) return false;
    return true;
  }
};

namespace detail {

inline DiagonalIdentity compare_diagonal(std::string name, const FockOperator& op, int margin,
                                         const std::function<double(Level)>& expected, double tol) {
  DiagonalIdentity id{std::move(name)};
  for (std::size_t i : op.basis.interior(margin)) {
    const Level l = op.basis[i];
    const auto d = op.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    const double want = expected(l);
    const double err = std::abs(d - want) / std::max(std::abs(want), 1e-300);
    if (err >= id.max_rel_error) {
      id.max_rel_error = err;
      id.worst = l;
      id.measured_at_worst = d.real();
      id.expected_at_worst = want;
    }
  }
  id.passed = id.max_rel_error <= tol;
  return id;
}

}  // namespace detail

/// Checks the closed forms for the diagonal of the three tau-terms on every
/// state with n+ + n- <= N - 4:
///   <n| m omega^2 q2^2 q1^2 |n>  = (hbar^2/4m)(2 n+ n- + n+ + n- + 3/2)
///   <n| -(i hbar/m) q2 pi2 |n>   =  hbar^2/2m
///   <n| (1/m) q2^2 pi2^2 |n>     = (hbar^2/4m)(2 n+ n- + n+ + n- + 1/2)
/// and that their sum is (hbar^2/2m)(2 n+ n- + n+ + n- + 2).
inline DiagonalReport diagonal_check(const FockBasis& basis, const ParameterPoint& p, double tol = 1e-10) {
  using symalg::parse;
  constexpr int margin = 4;
  const double unit = p.hbar * p.hbar / (4.0 * p.m);
  auto mix = [](Level l) { return 2.0 * l.n_plus * l.n_minus + l.n_plus + l.n_minus; };

  const auto& canon = symalg::AlgebraTable::canonical();
  const FockOperator t1 = evaluate(symalg::normal_order(parse("m*omega^2*q2^2*q1^2"), canon), basis, p);
  const FockOperator t2 = evaluate(parse("-i*hbar/m*q2*pi2"), basis, p);
  const FockOperator t3 = evaluate(parse("q2^2*pi2^2/m"), basis, p);
  const FockOperator sum(t1.matrix + t2.matrix + t3.matrix, basis);

  DiagonalReport report{{}, tol};
  report.identities.push_back(detail::compare_diagonal(
      "m*omega^2*q2^2*q1^2", t1, margin, [&](Level l) { return unit * (mix(l) + 1.5); }, tol));
  report.identities.push_back(detail::compare_diagonal(
      "-i*hbar/m*q2*pi2", t2, margin, [&](Level) { return 2.0 * unit; }, tol));
  report.identities.push_back(detail::compare_diagonal(
      "q2^2*pi2^2/m", t3, margin, [&](Level l) { return unit * (mix(l) + 0.5); }, tol));
  report.identities.push_back(detail::compare_diagonal(
      "E_tau/tau", sum, margin, [&](Level l) { return 2.0 * unit * (mix(l) + 2.0); }, tol));
  return report;
}

struct CommutatorCheck {
  std::string name;
  double relative_norm;  // ||[A,B]||_interior / (||A|| ||B||)
  bool numerically_zero;
  bool exactly_zero;     // symbolic result
  bool claimed_zero;
};

/// Numeric and symbolic commutators of H_c, the rotation generator
/// q2 pi1 - q1 pi2 (H_theta_eta up to its coefficient) and H_tau / tau.
inline std::vector<CommutatorCheck> commuting_check(const FockBasis& basis, const ParameterPoint& p,
                                                    double tol = 1e-8) {
  const auto& canon = symalg::AlgebraTable::canonical();
  struct Named {
    std::string name;
    symalg::Expression expr;
  };
  const Named hc{"H_c", symalg::oscillator_part()};
  const Named rot{"H_theta_eta", symalg::rotation_generator()};
  const Named ht{"H_tau", symalg::tau_part_unit()};

  auto check = [&](const Named& a, const Named& b, bool claimed) {
    const FockOperator ma = evaluate(a.expr, basis, p);
    const FockOperator mb = evaluate(b.expr, basis, p);
    const FockOperator c(ma.matrix * mb.matrix - mb.matrix * ma.matrix, basis);
    // degrees add up to at most 6
    const double rel = c.interior_block(6).norm() / (ma.matrix.norm() * mb.matrix.norm());
    return CommutatorCheck{"[" + a.name + "," + b.name + "]", rel, rel <= tol,
                           symalg::commutator(a.expr, b.expr, canon).is_zero(), claimed};
  };
  return {check(hc, rot, true), check(ht, rot, true), check(hc, ht, false)};
}

inline nlohmann::ordered_json to_json(const DiagonalReport& r) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& i : r.identities)
    out.push_back({{"identity", i.name},
                   {"passed", i.passed},
                   {"max_rel_error", i.max_rel_error},
                   {"worst_state", {i.worst.n_plus, i.worst.n_minus}},
                   {"measured", i.measured_at_worst},
                   {"expected", i.expected_at_worst}});
  return out;
}

inline nlohmann::ordered_json to_json(const std::vector<CommutatorCheck>& checks) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    out.push_back({{"commutator", c.name},
                   {"relative_norm", c.relative_norm},
                   {"numerically_zero", c.numerically_zero},
                   {"exactly_zero", c.exactly_zero},
                   {"claimed_zero", c.claimed_zero}});
  return out;
}

}  // namespace ncps::fock
