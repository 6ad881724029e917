#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace ncps::fock {

struct Level {
  int n_plus = 0;
  int n_minus = 0;

  [[nodiscard]] int total() const { return n_plus + n_minus; }
  friend bool operator==(const Level&, const Level&) = default;
};

/// Truncated helicity basis |n+, n-> with n+ + n- <= N, enumerated by total
/// quantum number and then by n+ ascending:
///   (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
class FockBasis {
 public:
  explicit FockBasis(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    states_.reserve(dimension());
    for (int s = 0; s <= cutoff; ++s)
      for (int np = 0; np <= s; ++np) states_.push_back({np, s - np});
  }

  [[nodiscard]] int cutoff() const { return cutoff_; }
  [[nodiscard]] std::size_t dimension() const {
    return static_cast<std::size_t>(cutoff_ + 1) * static_cast<std::size_t>(cutoff_ + 2) / 2;
  }
  [[nodiscard]] const std::vector<Level>& states() const { return states_; }
  [[nodiscard]] const Level& operator[](std::size_t i) const { return states_[i]; }

  [[nodiscard]] std::optional<std::size_t> index(int n_plus, int n_minus) const {
    if (n_plus < 0 || n_minus < 0 || n_plus + n_minus > cutoff_) return std::nullopt;
    const auto s = static_cast<std::size_t>(n_plus + n_minus);
    return s * (s + 1) / 2 + static_cast<std::size_t>(n_plus);
  }

  /// Indices of states with n+ + n- <= N - margin.
  [[nodiscard]] std::vector<std::size_t> interior(int margin) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < states_.size(); ++i)
      if (states_[i].total() <= cutoff_ - margin) out.push_back(i);
    return out;
  }

  friend bool operator==(const FockBasis& a, const FockBasis& b) { return a.cutoff_ == b.cutoff_; }

 private:
  int cutoff_;
  std::vector<Level> states_;
};

}  // namespace ncps::fock
