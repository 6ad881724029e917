#pragma once

#include <map>
#include <string>
#include <utility>

#include "ncps/symalg/expression.hpp"

namespace ncps::symalg {

/// Central commutator table. Only pairs with rank(first) > rank(second) are
/// stored; [b, a] = -[a, b] is implied.
class AlgebraTable {
 public:
  AlgebraTable(std::string name, Alphabet alphabet) : name_(std::move(name)), alphabet_(alphabet) {}

  /// [q_i, pi_j] = i hbar delta_ij.
  static AlgebraTable canonical() {
    using G = Generator;
    AlgebraTable t("canonical", Alphabet::canonical);
    const Scalar ihbar = imag_unit() * param(Param::hbar);
    t.set(G::q1, G::pi1, ihbar);
    t.set(G::q2, G::pi2, ihbar);
    return t;
  }

  /// [x, y] = i theta, [x, px] = [y, py] = i hbar, [px, py] = i eta,
  /// [x, py] = [y, px] = 0.
  static AlgebraTable noncommutative() {
    using G = Generator;
    AlgebraTable t("noncommutative", Alphabet::noncommutative);
    const Scalar i = imag_unit();
    t.set(G::x, G::y, i * param(Param::theta));
    t.set(G::x, G::px, i * param(Param::hbar));
    t.set(G::y, G::py, i * param(Param::hbar));
    t.set(G::px, G::py, i * param(Param::eta));
    return t;
  }

  static const AlgebraTable& for_alphabet(Alphabet a) {
    static const AlgebraTable c = canonical();
    static const AlgebraTable n = noncommutative();
    return a == Alphabet::canonical ? c : n;
  }

  /// Record [a, b] = value (either argument order).
  void set(Generator a, Generator b, const Scalar& value) {
    if (alphabet_of(a) != alphabet_ || alphabet_of(b) != alphabet_)
      throw AlphabetError("generator outside the table's alphabet");
    if (rank_of(a) == rank_of(b)) throw std::invalid_argument("self-commutator is always zero");
    if (rank_of(a) > rank_of(b))
      entries_[{a, b}] = value;
    else
      entries_[{b, a}] = -value;
  }

  /// [a, b] as an expression (zero if absent).
  [[nodiscard]] Expression bracket(Generator a, Generator b) const {
    if (rank_of(a) == rank_of(b)) return {};
    const bool swapped = rank_of(a) < rank_of(b);
    auto it = entries_.find(swapped ? std::pair{b, a} : std::pair{a, b});
    if (it == entries_.end()) return {};
    return swapped ? Expression(-it->second) : Expression(it->second);
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] Alphabet alphabet() const { return alphabet_; }
  [[nodiscard]] const std::map<std::pair<Generator, Generator>, Scalar>& entries() const {
    return entries_;
  }

 private:
  std::string name_;
  Alphabet alphabet_;
  std::map<std::pair<Generator, Generator>, Scalar> entries_;
};

namespace detail {

class NormalOrderer {
 public:
  explicit NormalOrderer(const AlgebraTable& alg) : alg_(alg) {}

  const Expression& word(const Word& w) {
    if (auto it = cache_.find(w); it != cache_.end()) return it->second;
    Expression result;
    std::size_t i = 0;
    while (i + 1 < w.size() && rank_of(w[i]) <= rank_of(w[i + 1])) ++i;
    if (i + 1 >= w.size()) {
      result = Expression::word(w);
    } else {
      // g_i g_j -> g_j g_i + [g_i, g_j]
      Word swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      result = word(swapped);
      Expression c = alg_.bracket(w[i], w[i + 1]);
      if (!c.is_zero()) {
        Word shorter;
        shorter.reserve(w.size() - 2);
        shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
        result += c * word(shorter);
      }
    }
    return cache_.emplace(w, std::move(result)).first->second;
  }

 private:
  const AlgebraTable& alg_;
  std::map<Word, Expression> cache_;
};

}  // namespace detail

/// Rewrites every word into nondecreasing generator rank.
inline Expression normal_order(const Expression& e, const AlgebraTable& alg) {
  if (auto a = e.alphabet(); a && *a != alg.alphabet())
    throw AlphabetError("expression alphabet does not match algebra table " + alg.name());
  detail::NormalOrderer orderer(alg);
  Expression result;
  for (const auto& [key, c] : e.terms()) {
    if (key.word.size() < 2) {
      result.add_term(key.word, Scalar{c, key.powers});
      continue;
    }
    result += Expression(Scalar{c, key.powers}) * orderer.word(key.word);
  }
  return result;
}

/// Normal ordering in the table matching the expression's own alphabet.
inline Expression normal_order(const Expression& e) {
  auto a = e.alphabet();
  return a ? normal_order(e, AlgebraTable::for_alphabet(*a)) : e;
}

inline Expression commutator(const Expression& a, const Expression& b, const AlgebraTable& alg) {
  return normal_order(a * b - b * a, alg);
}

inline Expression jacobi(const Expression& a, const Expression& b, const Expression& c,
                         const AlgebraTable& alg) {
  return normal_order(commutator(a, commutator(b, c, alg), alg) +
                          commutator(b, commutator(c, a, alg), alg) +
                          commutator(c, commutator(a, b, alg), alg),
                      alg);
}

}  // namespace ncps::symalg
