#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncps/fock/basis.hpp"
#include "ncps/fock/parameters.hpp"
#include "ncps/symalg/expression.hpp"

namespace ncps::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense matrix over a truncated helicity basis.
struct FockOperator {
  Matrix matrix;
  FockBasis basis;

  explicit FockOperator(FockBasis b) : matrix(Matrix::Zero(dim(b), dim(b))), basis(std::move(b)) {}
  FockOperator(Matrix mat, FockBasis b) : matrix(std::move(mat)), basis(std::move(b)) {
    if (matrix.rows() != dim(basis) || matrix.cols() != dim(basis))
      throw std::invalid_argument("matrix dimension does not match basis");
  }

  [[nodiscard]] std::complex<double> element(Level bra, Level ket) const {
    auto i = basis.index(bra.n_plus, bra.n_minus);
    auto j = basis.index(ket.n_plus, ket.n_minus);
    if (!i || !j) throw std::out_of_range("level outside basis");
    return matrix(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j));
  }

  /// Restriction to rows and columns with n+ + n- <= N - margin.
  [[nodiscard]] Matrix interior_block(int margin) const {
    const auto idx = basis.interior(margin);
    Matrix out(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            matrix(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c]));
    return out;
  }

  static Eigen::Index dim(const FockBasis& b) { return static_cast<Eigen::Index>(b.dimension()); }
};

struct Ladder {
  FockOperator a_plus, a_minus, a_plus_dag, a_minus_dag;
};

/// A+|n+,n-> = sqrt(n+)|n+ - 1, n->, A-|n+,n-> = sqrt(n-)|n+, n- - 1>;
/// the daggered operators are the conjugate transposes.
inline Ladder build_ladder(const FockBasis& basis) {
  if (basis.cutoff() < 1) throw std::invalid_argument("ladder operators need cutoff >= 1");
  FockOperator ap(basis), am(basis);
  for (std::size_t j = 0; j < basis.dimension(); ++j) {
    const Level s = basis[j];
    const auto col = static_cast<Eigen::Index>(j);
    if (s.n_plus > 0)
      ap.matrix(static_cast<Eigen::Index>(*basis.index(s.n_plus - 1, s.n_minus)), col) = std::sqrt(double(s.n_plus));
    if (s.n_minus > 0)
      am.matrix(static_cast<Eigen::Index>(*basis.index(s.n_plus, s.n_minus - 1)), col) = std::sqrt(double(s.n_minus));
  }
  FockOperator apd(ap.matrix.adjoint(), basis), amd(am.matrix.adjoint(), basis);
  return {std::move(ap), std::move(am), std::move(apd), std::move(amd)};
}

struct PhaseSpace {
  FockOperator q1, q2, pi1, pi2;

  [[nodiscard]] const FockOperator& operator[](symalg::Generator g) const {
    switch (g) {
      case symalg::Generator::q1: return q1;
      case symalg::Generator::q2: return q2;
      case symalg::Generator::pi1: return pi1;
      case symalg::Generator::pi2: return pi2;
      default: throw symalg::AlphabetError("only canonical generators have Fock matrices");
    }
  }
};

/// Canonical coordinates through the helicity ladder operators:
///   q1  =  sqrt(hbar/4 m omega) (A+ + A- + A+^ + A-^)
///   q2  =  (1/2i) sqrt(hbar/m omega) (A+ - A- - A+^ + A-^)
///   pi1 =  (sqrt(hbar m omega)/2i) (A+ + A- - A+^ - A-^)
///   pi2 = -(sqrt(hbar m omega)/2) (A+ - A- + A+^ - A-^)
inline PhaseSpace build_phase_space(const FockBasis& basis, const ParameterPoint& p) {
  p.validate();
  const Ladder l = build_ladder(basis);
  const std::complex<double> i(0.0, 1.0);
  const double len = std::sqrt(p.hbar / (p.m * p.omega));
  const double mom = std::sqrt(p.hbar * p.m * p.omega);
  const Matrix &ap = l.a_plus.matrix, &am = l.a_minus.matrix;
  const Matrix &apd = l.a_plus_dag.matrix, &amd = l.a_minus_dag.matrix;
  return {FockOperator(0.5 * len * (ap + am + apd + amd), basis),
          FockOperator((len / (2.0 * i)) * (ap - am - apd + amd), basis),
          FockOperator((mom / (2.0 * i)) * (ap + am - apd - amd), basis),
          FockOperator(-0.5 * mom * (ap - am + apd - amd), basis)};
}

/// Matrix of a canonical-alphabet expression: words become matrix products,
/// scalars are evaluated at `p`.
inline FockOperator evaluate(const symalg::Expression& e, const FockBasis& basis, const ParameterPoint& p) {
  if (auto a = e.alphabet(); a && *a != symalg::Alphabet::canonical)
    throw symalg::AlphabetError("evaluate needs canonical variables; apply the Bopp shift first");
  const PhaseSpace ps = build_phase_space(basis, p);
  const auto n = FockOperator::dim(basis);

  // prefix cache: words share their leading factors
  std::map<symalg::Word, Matrix> cache;
  auto product = [&](const symalg::Word& w) -> const Matrix& {
    if (auto it = cache.find(w); it != cache.end()) return it->second;
    symalg::Word prefix;
    Matrix acc = ps[w.front()].matrix;
    prefix.push_back(w.front());
    for (std::size_t k = 1; k < w.size(); ++k) {
      prefix.push_back(w[k]);
      if (auto it = cache.find(prefix); it != cache.end()) {
        acc = it->second;
        continue;
      }
      acc = (acc * ps[w[k]].matrix).eval();
      cache.emplace(prefix, acc);
    }
    return cache.emplace(w, std::move(acc)).first->second;
  };

  FockOperator out(basis);
  for (const auto& [key, c] : e.terms()) {
    const std::complex<double> coeff = p.evaluate(c, key.powers);
    if (key.word.empty())
      out.matrix += coeff * Matrix::Identity(n, n);
    else
      out.matrix += coeff * product(key.word);
  }
  return out;
}

}  // namespace ncps::fock
