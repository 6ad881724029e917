#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "ncps/fock/operators.hpp"
#include "ncps/symalg/hamiltonian.hpp"

namespace ncps::fock {

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// hbar omega (n+ + n- + 1) + hbar (eta/2m + m omega^2 theta/2)(n+ - n-)
///   + (tau hbar^2 / 2m)(2 n+ n- + n+ + n- + 2)
inline double analytic_energy(int n_plus, int n_minus, const ParameterPoint& p) {
  const double np = n_plus, nm = n_minus;
  const double oscillator = p.hbar * p.omega * (np + nm + 1.0);
  const double rotation = p.hbar * (p.eta / (2.0 * p.m) + p.m * p.omega * p.omega * p.theta / 2.0) * (np - nm);
  const double deformation = p.tau * p.hbar * p.hbar / (2.0 * p.m) * (2.0 * np * nm + np + nm + 2.0);
  return oscillator + rotation + deformation;
}

struct Eigenpair {
  std::complex<double> value;
  Vector vector;
  double residual;
};

/// Dense non-Hermitian eigensolve. Every returned pair satisfies
/// ||H v - lambda v|| <= rel_tol ||H||_F; sorted by real part.
inline std::vector<Eigenpair> diagonalize(const FockOperator& h, double rel_tol = 1e-8) {
  if (h.matrix.rows() != h.matrix.cols()) throw std::invalid_argument("diagonalize: matrix not square");
  Eigen::ComplexEigenSolver<Matrix> solver;
  solver.compute(h.matrix, true);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigensolver did not converge within " +
                       std::to_string(solver.getMaxIterations() * h.matrix.rows()) + " iterations");
  }
  const double norm = h.matrix.norm();
  std::vector<Eigenpair> out;
  out.reserve(static_cast<std::size_t>(h.matrix.rows()));
  for (Eigen::Index k = 0; k < h.matrix.rows(); ++k) {
    Vector v = solver.eigenvectors().col(k);
    v.normalize();
    const std::complex<double> lambda = solver.eigenvalues()(k);
    const double res = (h.matrix * v - lambda * v).norm();
    if (res > rel_tol * std::max(norm, 1.0))
      throw NumericError("eigenpair residual " + std::to_string(res) + " exceeds tolerance");
    out.push_back({lambda, std::move(v), res});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Eigenpair& a, const Eigenpair& b) { return a.value.real() < b.value.real(); });
  return out;
}

struct LevelRow {
  Level level;
  double e_analytic;
  std::complex<double> e_numeric;
  double abs_err;
  double residual;
  double overlap;
};

struct RejectedPair {
  std::complex<double> value;
  Level best_label;
  double overlap;
  std::string reason;
};

struct LevelTable {
  std::vector<LevelRow> rows;  // basis order
  std::vector<RejectedPair> rejected;

  [[nodiscard]] const LevelRow* find(int n_plus, int n_minus) const {
    for (const auto& r : rows)
      if (r.level.n_plus == n_plus && r.level.n_minus == n_minus) return &r;
    return nullptr;
  }
};

struct ClassifyOptions {
  double min_overlap = 0.5;
  int margin = 4;  // labels with n+ + n- > N - margin are not trusted
};

/// Assigns each eigenpair to the basis label of maximal overlap |<n|v>|^2
/// (ties go to the lower (n+ + n-, n+)). Each label keeps at most one pair.
inline LevelTable classify(const std::vector<Eigenpair>& pairs, const FockBasis& basis, const ParameterPoint& p,
                           const ClassifyOptions& opts = {}) {
  LevelTable table;
  std::vector<int> owner(basis.dimension(), -1);
  std::vector<double> owner_overlap(basis.dimension(), 0.0);

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Vector& v = pairs[k].vector;
    const double norm2 = v.squaredNorm();
    Eigen::Index best = 0;
    double best_overlap = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double o = std::norm(v(i)) / norm2;
      if (o > best_overlap) {
        best_overlap = o;
        best = i;
      }
    }
    const auto bi = static_cast<std::size_t>(best);
    const Level label = basis[bi];
    if (label.total() > basis.cutoff() - opts.margin) {
      table.rejected.push_back({pairs[k].value, label, best_overlap, "within truncation margin"});
      continue;
    }
    if (best_overlap < opts.min_overlap) {
      table.rejected.push_back({pairs[k].value, label, best_overlap, "overlap below threshold"});
      continue;
    }
    if (owner[bi] >= 0) {
      const bool replace = best_overlap > owner_overlap[bi];
      const auto loser = replace ? static_cast<std::size_t>(owner[bi]) : k;
      table.rejected.push_back({pairs[loser].value, label, replace ? owner_overlap[bi] : best_overlap,
                                "label already assigned"});
      if (!replace) continue;
    }
    owner[bi] = static_cast<int>(k);
    owner_overlap[bi] = best_overlap;
  }

  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    if (owner[i] < 0) continue;
    const Eigenpair& e = pairs[static_cast<std::size_t>(owner[i])];
    const Level l = basis[i];
    const double ea = analytic_energy(l.n_plus, l.n_minus, p);
    table.rows.push_back({l, ea, e.value, std::abs(e.value - ea), e.residual, owner_overlap[i]});
  }
  return table;
}

/// First-order Hamiltonian (or a richer truncation) as a Fock matrix.
inline FockOperator hamiltonian_matrix(const FockBasis& basis, const ParameterPoint& p,
                                       const symalg::TruncationPolicy& policy = symalg::TruncationPolicy::first_order()) {
  return evaluate(symalg::build_hamiltonian_symbolic(policy), basis, p);
}

/// Build, diagonalize and classify in one go.
inline LevelTable compute_spectrum(const ParameterPoint& p, int cutoff,
                                   const symalg::TruncationPolicy& policy = symalg::TruncationPolicy::first_order(),
                                   const ClassifyOptions& opts = {}) {
  p.validate();
  const FockBasis basis(cutoff);
  return classify(diagonalize(hamiltonian_matrix(basis, p, policy)), basis, p, opts);
}

// ---------------------------------------------------------------------------
// Serialization

/// Fixed 12 significant digits.
inline std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline void write_csv(std::ostream& os, const LevelTable& table) {
  os << "n_plus,n_minus,E_analytic,E_numeric_re,E_numeric_im,abs_err,residual,overlap\n";
  for (const auto& r : table.rows) {
    os << r.level.n_plus << ',' << r.level.n_minus << ',' << format_number(r.e_analytic) << ','
       << format_number(r.e_numeric.real()) << ',' << format_number(r.e_numeric.imag()) << ','
       << format_number(r.abs_err) << ',' << format_number(r.residual) << ',' << format_number(r.overlap) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const LevelTable& table) {
  auto num = [](double v) { return std::stod(format_number(v)); };
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"n_plus", r.level.n_plus},
                    {"n_minus", r.level.n_minus},
                    {"E_analytic", num(r.e_analytic)},
                    {"E_numeric_re", num(r.e_numeric.real())},
                    {"E_numeric_im", num(r.e_numeric.imag())},
                    {"abs_err", num(r.abs_err)},
                    {"residual", num(r.residual)},
                    {"overlap", num(r.overlap)}});
  }
  return rows;
}

}  // namespace ncps::fock
