#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncps/rational.hpp"

namespace ncps::symalg {

// ---------------------------------------------------------------------------
// Generators

enum class Alphabet : std::uint8_t { canonical, noncommutative };

/// Operator generators. The first four form the canonical alphabet
/// (q1 < q2 < pi1 < pi2), the last four the noncommutative one
/// (x < y < px < py). Rank is the position inside the alphabet.
enum class Generator : std::uint8_t { q1, q2, pi1, pi2, x, y, px, py };

inline constexpr std::array<Generator, 4> canonical_generators{Generator::q1, Generator::q2,
                                                               Generator::pi1, Generator::pi2};
inline constexpr std::array<Generator, 4> noncommutative_generators{Generator::x, Generator::y,
                                                                    Generator::px, Generator::py};

constexpr Alphabet alphabet_of(Generator g) {
  return static_cast<std::uint8_t>(g) < 4 ? Alphabet::canonical : Alphabet::noncommutative;
}
constexpr int rank_of(Generator g) { return static_cast<int>(g) % 4; }
/// q and x, y are positions; pi and px, py are momenta.
constexpr bool is_position(Generator g) { return rank_of(g) < 2; }

inline std::string_view name_of(Generator g) {
  static constexpr std::array<std::string_view, 8> names{"q1", "q2", "pi1", "pi2",
                                                         "x",  "y",  "px",  "py"};
  return names[static_cast<std::size_t>(g)];
}
inline std::string_view name_of(Alphabet a) {
  return a == Alphabet::canonical ? "canonical" : "noncommutative";
}

inline const std::array<Generator, 4>& generators_of(Alphabet a) {
  return a == Alphabet::canonical ? canonical_generators : noncommutative_generators;
}

using Word = std::vector<Generator>;

struct AlphabetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Parameter monomials

enum class Param : std::uint8_t { hbar, m, omega, theta, eta, tau };
inline constexpr std::size_t param_count = 6;

inline std::string_view name_of(Param p) {
  static constexpr std::array<std::string_view, param_count> names{"hbar",  "m",   "omega",
                                                                   "theta", "eta", "tau"};
  return names[static_cast<std::size_t>(p)];
}

/// Integer exponent vector over (hbar, m, omega, theta, eta, tau).
/// Only hbar, m and omega may carry negative exponents.
class Monomial {
 public:
  constexpr Monomial() = default;
  explicit Monomial(const std::array<int, param_count>& e) : exp_(e) { validate(); }

  static Monomial of(Param p, int power = 1) {
    std::array<int, param_count> e{};
    e[static_cast<std::size_t>(p)] = power;
    return Monomial(e);
  }

  [[nodiscard]] int operator[](Param p) const { return exp_[static_cast<std::size_t>(p)]; }
  [[nodiscard]] const std::array<int, param_count>& exponents() const { return exp_; }
  [[nodiscard]] bool is_one() const {
    return std::all_of(exp_.begin(), exp_.end(), [](int e) { return e == 0; });
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::array<int, param_count> e{};
    for (std::size_t k = 0; k < param_count; ++k) e[k] = a.exp_[k] + b.exp_[k];
    return Monomial(e);
  }
  [[nodiscard]] Monomial pow(int n) const {
    std::array<int, param_count> e{};
    for (std::size_t k = 0; k < param_count; ++k) e[k] = exp_[k] * n;
    return Monomial(e);
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  /// "hbar^-1*m*omega^2"; empty for the unit monomial.
  [[nodiscard]] std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < param_count; ++k) {
      if (exp_[k] == 0) continue;
      if (!s.empty()) s += '*';
      s += name_of(static_cast<Param>(k));
      if (exp_[k] != 1) s += "^" + std::to_string(exp_[k]);
    }
    return s;
  }

 private:
  void validate() const {
    for (auto p : {Param::theta, Param::eta, Param::tau})
      if ((*this)[p] < 0)
        throw std::domain_error("negative exponent not allowed for " + std::string(name_of(p)));
  }

  std::array<int, param_count> exp_{};
};

/// Exact scalar: Gaussian rational times a parameter monomial.
struct Scalar {
  GaussianRational value;
  Monomial powers;

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return {a.value * b.value, a.powers * b.powers};
  }
  Scalar operator-() const { return {-value, powers}; }
  friend bool operator==(const Scalar&, const Scalar&) = default;
};

inline Scalar param(Param p, int power = 1) { return {Rational(1), Monomial::of(p, power)}; }
inline Scalar imag_unit() { return {GaussianRational::i(), {}}; }

// ---------------------------------------------------------------------------
// Expressions

struct TermKey {
  Word word;
  Monomial powers;

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend std::strong_ordering operator<=>(const TermKey& a, const TermKey& b) {
    if (auto c = a.word.size() <=> b.word.size(); c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.word.begin(), a.word.end(),
                                                        b.word.begin(), b.word.end());
        c != 0)
      return c;
    return a.powers <=> b.powers;
  }
};

/// Finite sum of generator words with exact scalar coefficients.
/// Zero coefficients are never stored, so structural equality of two
/// normal-ordered expressions decides operator equality.
class Expression {
 public:
  using TermMap = std::map<TermKey, GaussianRational>;

  Expression() = default;
  Expression(const Scalar& s) { add_term({}, s); }  // NOLINT(implicit)
  Expression(std::int64_t c) : Expression(Scalar{Rational(c), {}}) {}  // NOLINT(implicit)
  Expression(Generator g) { add_term({g}, Scalar{Rational(1), {}}); }  // NOLINT(implicit)

  static Expression word(Word w, const Scalar& coeff = Scalar{Rational(1), {}}) {
    Expression e;
    e.add_term(std::move(w), coeff);
    return e;
  }

  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// Alphabet of the operator words; nullopt for a pure scalar.
  [[nodiscard]] std::optional<Alphabet> alphabet() const {
    for (const auto& [key, c] : terms_)
      if (!key.word.empty()) return alphabet_of(key.word.front());
    return std::nullopt;
  }

  void add_term(Word w, const Scalar& coeff) {
    if (coeff.value.is_zero()) return;
    check_word(w);
    if (!w.empty()) {
      if (auto a = alphabet(); a && *a != alphabet_of(w.front()))
        throw AlphabetError("mixed-alphabet expression");
    }
    TermKey key{std::move(w), coeff.powers};
    auto [it, inserted] = terms_.try_emplace(std::move(key), coeff.value);
    if (!inserted) {
      it->second += coeff.value;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Expression operator-() const {
    Expression r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  Expression& operator+=(const Expression& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.word, Scalar{c, k.powers});
    return *this;
  }
  Expression& operator-=(const Expression& o) { return *this += -o; }
  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }

  /// Distributive concatenation of words; no reordering.
  friend Expression operator*(const Expression& a, const Expression& b) {
    check_compatible(a, b);
    Expression r;
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        Word w = ka.word;
        w.insert(w.end(), kb.word.begin(), kb.word.end());
        r.add_term(std::move(w), Scalar{ca * cb, ka.powers * kb.powers});
      }
    }
    return r;
  }
  Expression& operator*=(const Expression& o) { return *this = *this * o; }

  [[nodiscard]] Expression pow(unsigned n) const {
    Expression r(1);
    for (unsigned k = 0; k < n; ++k) r *= *this;
    return r;
  }

  friend bool operator==(const Expression&, const Expression&) = default;

  /// Coefficient of the exact (word, monomial) key; zero when absent.
  [[nodiscard]] GaussianRational coefficient(const Word& w, const Monomial& powers = {}) const {
    auto it = terms_.find(TermKey{w, powers});
    return it == terms_.end() ? GaussianRational{} : it->second;
  }

  static void check_compatible(const Expression& a, const Expression& b) {
    auto aa = a.alphabet();
    auto bb = b.alphabet();
    if (aa && bb && *aa != *bb)
      throw AlphabetError(std::string("mixed-alphabet operands: ") + std::string(name_of(*aa)) +
                          " and " + std::string(name_of(*bb)));
  }

  /// Deterministic text form: terms in key order, parseable by `parse`.
  [[nodiscard]] std::string str() const;

 private:
  static void check_word(const Word& w) {
    for (std::size_t k = 1; k < w.size(); ++k)
      if (alphabet_of(w[k]) != alphabet_of(w[0])) throw AlphabetError("word mixes alphabets");
  }

  TermMap terms_;
};

inline Expression operator*(const Scalar& s, const Expression& e) { return Expression(s) * e; }

namespace detail {
inline std::string word_str(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size();) {
    std::size_t run = 1;
    while (k + run < w.size() && w[k + run] == w[k]) ++run;
    if (!s.empty()) s += '*';
    s += name_of(w[k]);
    if (run > 1) s += "^" + std::to_string(run);
    k += run;
  }
  return s;
}
}  // namespace detail

inline std::string Expression::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    GaussianRational coeff = c;
    bool negative = (coeff.im.is_zero() && coeff.re < Rational(0)) ||
                    (coeff.re.is_zero() && coeff.im < Rational(0));
    if (negative) coeff = -coeff;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;

    std::string body;
    const bool unit = coeff == GaussianRational(1);
    if (!unit) body = coeff.str();
    auto append = [&body](const std::string& part) {
      if (part.empty()) return;
      if (!body.empty()) body += '*';
      body += part;
    };
    append(key.powers.str());
    append(detail::word_str(key.word));
    out += body.empty() ? "1" : body;
  }
  return out;
}

}  // namespace ncps::symalg
