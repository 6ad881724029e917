#pragma once

#include "ncps/symalg/expression.hpp"

namespace ncps::symalg {

/// Formal dagger: reverse every word and conjugate coefficients. All
/// generators are self-adjoint and the parameters are real.
inline Expression formal_adjoint(const Expression& e) {
  Expression out;
  for (const auto& [key, c] : e.terms()) {
    Word w(key.word.rbegin(), key.word.rend());
    out.add_term(std::move(w), Scalar{c.conj(), key.powers});
  }
  return out;
}

}  // namespace ncps::symalg
