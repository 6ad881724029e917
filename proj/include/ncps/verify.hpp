#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncps/fock/checks.hpp"
#include "ncps/ptsym.hpp"
#include "ncps/symalg.hpp"

namespace ncps::verify {

enum class Status { pass, known, fail };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::known: return "known";
    case Status::fail: return "fail";
  }
  return "?";
}

struct Check {
  std::string group;
  std::string name;
  Status status;
  std::string residual;  // symbolic residue, or a relative error for numeric checks
};

struct Options {
  symalg::TruncationPolicy policy = symalg::TruncationPolicy::first_order();
  int bopp_epsilon = 1;  // -1 injects a sign fault into the Bopp shift
  fock::ParameterPoint point{};
  int cutoff = 12;
};

struct Report {
  std::vector<Check> checks;

  [[nodiscard]] bool passed() const {
    for (const auto& c : checks)
      if (c.status == Status::fail) return false;
    return true;
  }
  [[nodiscard]] const Check* first_failure() const {
    for (const auto& c : checks)
      if (c.status == Status::fail) return &c;
    return nullptr;
  }
};

namespace detail {

inline Check symbolic(std::string group, std::string name, const symalg::Expression& residual) {
  return {std::move(group), std::move(name), residual.is_zero() ? Status::pass : Status::fail,
          residual.is_zero() ? "0" : residual.str()};
}

}  // namespace detail

/// [a, b] of Bopp-shifted noncommutative generators against the
/// noncommutative relations. The residue i theta eta / 4 hbar on the
/// diagonal pairs is dropped when the policy truncates theta*eta and is
/// reported as "known" otherwise.
inline void bopp_closure(Report& r, const Options& o) {
  using symalg::parse;
  const auto shift = symalg::bopp(o.bopp_epsilon);
  const auto& canon = symalg::AlgebraTable::canonical();
  const symalg::Expression known = parse("i*theta*eta/(4*hbar)");
  struct Rel {
    const char *a, *b, *rhs;
    bool diagonal;
  };
  for (const Rel& rel : {Rel{"x", "y", "i*theta", false}, Rel{"px", "py", "i*eta", false},
                         Rel{"x", "px", "i*hbar", true}, Rel{"y", "py", "i*hbar", true}, Rel{"x", "py", "0", false},
                         Rel{"y", "px", "0", false}}) {
    const auto lhs = symalg::commutator(symalg::substitute(parse(rel.a), shift),
                                        symalg::substitute(parse(rel.b), shift), canon);
    const auto residual = lhs - parse(rel.rhs);
    const auto kept = symalg::truncate(residual, o.policy);
    const std::string name = std::string("[") + rel.a + "," + rel.b + "]";
    if (rel.diagonal && residual == known && !kept.is_zero())
      r.checks.push_back({"bopp_closure", name, Status::known, residual.str()});
    else
      r.checks.push_back(detail::symbolic("bopp_closure", name, kept));
  }
}

inline void deformed_algebra(Report& r) {
  using symalg::Capital;
  using symalg::parse;
  using symalg::rep6;
  const auto& nc = symalg::AlgebraTable::noncommutative();
  const auto f = symalg::deformation_factor();
  auto rel = [&](const char* name, Capital a, Capital b, const symalg::Expression& rhs) {
    r.checks.push_back(detail::symbolic("deformed_algebra", name,
                                        symalg::commutator(rep6(a), rep6(b), nc) - symalg::normal_order(rhs, nc)));
  };
  rel("[X,Y]", Capital::X, Capital::Y, parse("i*theta") * f);
  rel("[X,Px]", Capital::X, Capital::Px, parse("i*hbar") * f);
  rel("[Y,Py]", Capital::Y, Capital::Py, parse("i*hbar") * f);
  rel("[Px,Py]", Capital::Px, Capital::Py, parse("i*eta") * f);
  rel("[Y,Px]", Capital::Y, Capital::Px, symalg::Expression{});
  rel("[X,Py]", Capital::X, Capital::Py, parse("2*i*tau*Y*(theta*Py + hbar*X)"));
}

inline void jacobi_identities(Report& r) {
  const auto& nc = symalg::AlgebraTable::noncommutative();
  const auto& caps = symalg::all_capitals;
  for (std::size_t a = 0; a < caps.size(); ++a)
    for (std::size_t b = a + 1; b < caps.size(); ++b)
      for (std::size_t c = b + 1; c < caps.size(); ++c) {
        const std::string name = "(" + std::string(symalg::name_of(caps[a])) + "," +
                                 std::string(symalg::name_of(caps[b])) + "," + std::string(symalg::name_of(caps[c])) +
                                 ")";
        r.checks.push_back(detail::symbolic(
            "jacobi", name, symalg::jacobi(symalg::rep6(caps[a]), symalg::rep6(caps[b]), symalg::rep6(caps[c]), nc)));
      }
}

inline void adjoints(Report& r) {
  using symalg::Capital;
  using symalg::parse;
  using symalg::rep6;
  const auto& nc = symalg::AlgebraTable::noncommutative();
  auto adj = [&](const char* name, Capital c, const symalg::Expression& shift) {
    const auto lhs = symalg::normal_order(symalg::formal_adjoint(rep6(c)), nc);
    r.checks.push_back(detail::symbolic("adjoint", name, lhs - symalg::normal_order(rep6(c) + shift, nc)));
  };
  adj("X^dagger = X + 2i tau theta Y", Capital::X, parse("2*i*tau*theta*y"));
  adj("Y^dagger = Y", Capital::Y, symalg::Expression{});
  adj("Px^dagger = Px", Capital::Px, symalg::Expression{});
  adj("Py^dagger = Py - 2i tau hbar Y", Capital::Py, parse("-2*i*tau*hbar*y"));
}

inline void hamiltonian(Report& r, const Options& o) {
  if (o.policy.caps == symalg::TruncationPolicy::first_order().caps &&
      o.policy.forbidden == symalg::TruncationPolicy::first_order().forbidden)
    r.checks.push_back(detail::symbolic("hamiltonian", "first-order truncation",
                                        symalg::build_hamiltonian_symbolic(o.policy) - symalg::first_order_reference()));
}

inline void pt_symmetry(Report& r) {
  using ptsym::PTVariant;
  const auto h = symalg::build_hamiltonian_symbolic();
  auto expect = [&](const char* name, bool got, bool want) {
    r.checks.push_back({"pt_symmetry", name, got == want ? Status::pass : Status::fail, got ? "invariant" : "not invariant"});
  };
  expect("H under PthetaetaT", ptsym::is_invariant(h, PTVariant::pthetaeta()), true);
  expect("H_theta_eta under PT (expected broken)", ptsym::is_invariant(symalg::rotation_part(), PTVariant::pt()), false);
  expect("H_tau under PT", ptsym::is_invariant(symalg::tau_part(), PTVariant::pt()), true);
  for (const auto& rel : ptsym::check_algebra_invariance(symalg::AlgebraTable::noncommutative(), PTVariant::pthetaeta()))
    r.checks.push_back({"pt_symmetry", "PthetaetaT preserves " + rel.relation,
                        rel.preserved ? Status::pass : Status::fail, rel.preserved ? "0" : rel.residual.str()});
}

inline void diagonal_identities(Report& r, const Options& o) {
  const auto d = fock::diagonal_check(fock::FockBasis(o.cutoff), o.point);
  for (const auto& id : d.identities)
    r.checks.push_back({"diagonal", id.name, id.passed ? Status::pass : Status::fail,
                        "max relative error " + fock::format_number(id.max_rel_error) + " at (" +
                            std::to_string(id.worst.n_plus) + "," + std::to_string(id.worst.n_minus) +
                            "): measured " + fock::format_number(id.measured_at_worst) + ", closed form " +
                            fock::format_number(id.expected_at_worst)});
}

/// Full symbolic, PT and Fock-diagonal suite in a fixed order.
inline Report run_all(const Options& o = {}) {
  Report r;
  bopp_closure(r, o);
  deformed_algebra(r);
  jacobi_identities(r);
  adjoints(r);
  hamiltonian(r, o);
  pt_symmetry(r);
  diagonal_identities(r, o);
  return r;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"group", c.group}, {"name", c.name}, {"status", to_string(c.status)}, {"residual", c.residual}});
  nlohmann::ordered_json out{{"status", r.passed() ? "pass" : "fail"}};
  if (const Check* f = r.first_failure()) out["first_failure"] = f->group + ": " + f->name;
  out["checks"] = std::move(checks);
  return out;
}

}  // namespace ncps::verify
