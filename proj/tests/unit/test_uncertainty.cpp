#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "ncps/uncertainty.hpp"

using namespace ncps::uncertainty;
using cd = std::complex<double>;

namespace {

ParameterPoint at_tau(double tau, double hbar = 1.0, double theta = 0.0) { return {hbar, 1.0, 1.0, theta, 0.0, tau}; }

// flat overlap  integral conj(psi) phi  of two gaussians
cd gaussian_overlap(const Wavefunction& phi, const Wavefunction& psi) {
  const double s1 = phi.sigma * phi.sigma, s2 = psi.sigma * psi.sigma;
  const double A = 1 / (2 * s1) + 1 / (2 * s2);
  const cd B(phi.center / s1 + psi.center / s2, phi.kick - psi.kick);
  const double C = -phi.center * phi.center / (2 * s1) - psi.center * psi.center / (2 * s2);
  return std::sqrt(std::numbers::pi / A) * std::exp(B * B / (4 * A) + C);
}

}  // namespace

TEST(RhoInner, ConstantFunctionGivesWeightIntegral) {
  const double tau = 0.04;
  const cd v = rho_inner([](double) { return cd(1.0); }, [](double) { return cd(1.0); }, tau);
  EXPECT_NEAR(v.real(), std::numbers::pi / std::sqrt(tau), 1e-10);
  EXPECT_NEAR(v.imag(), 0.0, 1e-12);
}

TEST(RhoInner, FlatLimitMatchesClosedFormOverlap) {
  for (const auto& phi : random_gaussians(4, 11))
    for (const auto& psi : random_gaussians(4, 12)) {
      const cd got = rho_inner(phi, psi, 0.0);
      EXPECT_LT(std::abs(got - gaussian_overlap(phi, psi)), 1e-10);
    }
  const auto g = Wavefunction::gaussian(0.0, 1.0);
  EXPECT_NEAR(rho_inner(g, g, 0.0).real(), std::sqrt(std::numbers::pi), 1e-12);
}

TEST(RhoInner, ConjugateSymmetric) {
  const auto set = random_gaussians(6, 3);
  for (const auto& phi : set)
    for (const auto& psi : set) EXPECT_LT(std::abs(rho_inner(phi, psi, 0.04) - std::conj(rho_inner(psi, phi, 0.04))), 1e-12);
}

TEST(RhoInner, LinearInFirstArgument) {
  const auto a = Wavefunction::gaussian(0.3, 1.1, 0.4), b = Wavefunction::gaussian(-1.0, 0.7);
  const cd c(0.0, 2.0);
  const cd lhs = rho_inner([&](double y) { return c * a(y); }, [&](double y) { return b(y); }, 0.04, 1.0);
  EXPECT_LT(std::abs(lhs - c * rho_inner(a, b, 0.04)), 1e-12);
}

TEST(RhoInner, NonConvergentIntegralIsReported) {
  // flat weight and a constant integrand: divergent
  EXPECT_THROW(rho_inner([](double) { return cd(1.0); }, [](double) { return cd(1.0); }, 0.0), QuadratureError);
  EXPECT_THROW(rho_inner(Wavefunction::gaussian(0, 1), Wavefunction::gaussian(0, 1), -0.1), std::invalid_argument);
}

TEST(Expectation, Examples) {
  const ParameterPoint p = at_tau(0.04);
  EXPECT_NEAR(expectation(SectorOp::Y, Wavefunction::gaussian(0.0, 1.3), p), 0.0, 1e-12);
  EXPECT_NEAR(expectation(SectorOp::Py, Wavefunction::gaussian(0.8, 1.3), p), 0.0, 1e-12);
  for (double s : {0.5, 1.0, 2.5})
    EXPECT_NEAR(expectation(SectorOp::Y2, Wavefunction::gaussian(0.0, s), at_tau(0.0)), s * s / 2, 1e-10);
}

TEST(Expectation, FlatGaussianMomentum) {
  // tau = 0: <p> = hbar k, <p^2> = hbar^2 (k^2 + 1/(2 sigma^2))
  const ParameterPoint p = at_tau(0.0, 1.7);
  const auto g = Wavefunction::gaussian(0.4, 0.9, 1.2);
  EXPECT_NEAR(expectation(SectorOp::Py, g, p), 1.7 * 1.2, 1e-10);
  EXPECT_NEAR(expectation(SectorOp::Py2, g, p), 1.7 * 1.7 * (1.44 + 1 / (2 * 0.81)), 1e-10);
}

TEST(Expectation, ObservablesRealOnRandomStates) {
  const ParameterPoint p = at_tau(0.04, 1.3);
  for (const auto& psi : random_gaussians(10))
    for (SectorOp op : {SectorOp::Y, SectorOp::Py, SectorOp::Y2, SectorOp::Py2}) {
      const cd v = expectation_complex(op, psi, p);
      EXPECT_LE(std::abs(v.imag()), 1e-8 * std::max(1.0, std::abs(v.real()))) << to_string(op);
    }
}

TEST(Expectation, CommutatorMatchesDeformedAlgebra) {
  // <[Y,P_y]> = i hbar (1 + tau <Y^2>)
  const ParameterPoint p = at_tau(0.04, 1.3);
  for (const auto& psi : random_gaussians(5)) {
    const cd c = expectation_complex(SectorOp::commutator, psi, p);
    EXPECT_NEAR(c.real(), 0.0, 1e-10);
    EXPECT_NEAR(c.imag(), 1.3 * (1 + 0.04 * expectation(SectorOp::Y2, psi, p)), 1e-9);
  }
}

TEST(Hermiticity, ObservablesPass) {
  const auto set = random_gaussians(10);
  const ParameterPoint p = at_tau(0.04, 1.3);
  for (SectorOp op : {SectorOp::Y, SectorOp::Py, SectorOp::Y2, SectorOp::Py2}) {
    const HermiticityReport r = verify_rho_hermiticity(op, set, p);
    EXPECT_EQ(r.pairs, 100u);
    EXPECT_TRUE(r.passed()) << to_string(op) << " " << r.max_deviation;
  }
}

TEST(Hermiticity, DerivativeAloneIsFlagged) {
  const HermiticityReport r = verify_rho_hermiticity(SectorOp::d_dy, random_gaussians(10), at_tau(0.04));
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.max_deviation, 1e-2);
}

TEST(Wavefunction, JetMatchesFiniteDifferences) {
  const double h = 1e-4;
  for (const auto& w : {Wavefunction::gaussian(0.5, 1.2, 0.7), Wavefunction::deformed_gaussian(1.5, 3.0, 0.4, 0.04)})
    for (double y : {-2.0, 0.3, 4.0}) {
      const Jet j = w.jet(y);
      EXPECT_LT(std::abs(j.d1 - (w(y + h) - w(y - h)) / (2 * h)), 1e-7);
      EXPECT_LT(std::abs(j.d2 - (w(y + h) - 2.0 * w(y) + w(y - h)) / (h * h)), 1e-5);
    }
}

TEST(Wavefunction, DeformedFamilyReducesToGaussian) {
  const auto g = Wavefunction::gaussian(0.7, 1.1, 0.3);
  const auto d = Wavefunction::deformed_gaussian(0.7, 1.1, 0.3, 1e-9);
  for (double y : {-1.0, 0.0, 2.0}) EXPECT_LT(std::abs(g(y) - d(y)), 1e-7);
  EXPECT_THROW(Wavefunction::deformed_gaussian(0, 10.0, 0, 0.04), std::invalid_argument);
  EXPECT_THROW(Wavefunction::gaussian(0, 0.0), std::invalid_argument);
}

TEST(Wavefunction, DeformedFamilyMoments) {
  // <Y> = a exactly; at a = 0, <Y^2> = 1/(tau (2c - 1)) with c = 1/(tau sigma^2)
  const ParameterPoint p = at_tau(0.04);
  for (double s : {1.0, 3.0, 5.0}) {
    const double c = 1 / (0.04 * s * s);
    EXPECT_NEAR(expectation(SectorOp::Y2, Wavefunction::deformed_gaussian(0.0, s, 0.0, 0.04), p),
                1 / (0.04 * (2 * c - 1)), 1e-8);
    EXPECT_NEAR(expectation(SectorOp::Y, Wavefunction::deformed_gaussian(2.5, s, 0.0, 0.04), p), 2.5, 1e-9);
  }
  // c = 1 saturates the minimal momentum spread
  const StateMoments m = measure(Wavefunction::deformed_gaussian(0.0, 5.0, 0.0, 0.04), p);
  EXPECT_NEAR(m.delta_Py, 0.2, 1e-9);
  EXPECT_NEAR(m.delta_Y * m.delta_Py, 0.5 * m.commutator, 1e-9);
}

TEST(Bounds, MinimalSpreads) {
  const ParameterPoint p = at_tau(0.04, 1.0, 0.1);
  EXPECT_NEAR(min_delta_x(p, 0.0), 0.02, 1e-15);
  EXPECT_NEAR(min_delta_x(p, 5.0), 0.1 * 0.2 * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(min_delta_x(at_tau(0.0, 1.0, 0.1), 3.0), 0.0);
  EXPECT_NEAR(min_delta_py(p, 0.0), 0.2, 1e-15);
  EXPECT_NEAR(min_delta_py(p, 5.0), 0.2 * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(min_delta_py(at_tau(0.0), 3.0), 0.0);
}

TEST(Bounds, DeltaYSolutions) {
  const ParameterPoint p = at_tau(0.04);
  const auto [lo, hi] = delta_y_solutions(0.25, p, 0.0);
  EXPECT_NEAR(lo, 2.5, 1e-12);
  EXPECT_NEAR(hi, 10.0, 1e-12);
  for (double y : {0.0, 5.0}) {
    const auto [a, b] = delta_y_solutions(min_delta_py(p, y), p, y);
    const double root = std::sqrt((1 + 0.04 * y * y) / 0.04);
    EXPECT_NEAR(a, root, 1e-6);
    EXPECT_NEAR(b, root, 1e-6);
  }
  EXPECT_THROW(delta_y_solutions(0.1, p, 0.0), DomainError);
}

TEST(Bounds, DeltaYSolutionsSaturateTheProduct) {
  // both roots satisfy Delta Y Delta P = (hbar/2)(1 + tau (Delta Y^2 + <Y>^2))
  const ParameterPoint p = at_tau(0.03, 1.4);
  const double y = 2.0, dp = 0.4;
  const auto [a, b] = delta_y_solutions(dp, p, y);
  for (double dy : {a, b}) EXPECT_NEAR(dy * dp, 0.7 * (1 + 0.03 * (dy * dy + y * y)), 1e-12);
}

TEST(Bounds, SqueezingBound) {
  EXPECT_NEAR(squeezing_bound(at_tau(0.04), 0.0), std::sqrt(1 / 1.96), 1e-15);
  EXPECT_NEAR(squeezing_bound(at_tau(0.04), 0.0), 0.714285714285714, 1e-12);
  EXPECT_NEAR(squeezing_bound(at_tau(0.0), 0.0), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(squeezing_bound(at_tau(0.04), 5.0), std::sqrt(2 / 1.96), 1e-15);
  EXPECT_THROW(squeezing_bound(at_tau(2.0), 0.0), DomainError);
  EXPECT_THROW(squeezing_bound(at_tau(1.0, 3.0), 0.0), DomainError);
}

TEST(Bounds, SmallTauBehaviour) {
  // the squeezing bound approaches its flat value linearly, the minimal
  // spreads vanish like sqrt(tau)
  const double t = 1e-3;
  const double d1 = squeezing_bound(at_tau(t), 1.0) - std::sqrt(0.5);
  const double d2 = squeezing_bound(at_tau(t / 2), 1.0) - std::sqrt(0.5);
  EXPECT_NEAR(d1 / d2, 2.0, 1e-2);
  EXPECT_NEAR(min_delta_py(at_tau(t), 1.0) / min_delta_py(at_tau(t / 2), 1.0), std::sqrt(2.0), 1e-3);
}

TEST(Completeness, ParsevalInSineBasis) {
  // e_n(y) = sqrt(2 sqrt(tau)/pi) sin(n (u + pi/2)), u = atan(sqrt(tau) y),
  // is orthonormal for the rho inner product.
  const double tau = 0.04, st = std::sqrt(tau);
  const double amp = std::sqrt(2 * st / std::numbers::pi);
  const auto set = random_gaussians(10, 21);
  // panel breaks uniform in u keep the high modes resolved
  std::vector<double> panels;
  for (int j = 1; j < 16; ++j) panels.push_back(std::tan(-std::numbers::pi / 2 + j * std::numbers::pi / 16) / st);
  double worst = 0;
  for (const auto& psi : set) {
    const double norm = rho_inner(psi, psi, tau).real();
    double sum = 0;
    for (int n = 1; n <= 100; ++n) {
      auto e = [&](double y) { return cd(amp * std::sin(n * (std::atan(st * y) + std::numbers::pi / 2))); };
      sum += std::norm(rho_inner(psi, e, tau, 0.0, panels));
    }
    worst = std::max(worst, std::abs(sum - norm) / norm);
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(Report, ReferencePoint) {
  const ParameterPoint p = at_tau(0.04, 1.0, 0.1);
  const UncertaintyReport r = uncertainty_report(p, 0.0, default_probe_sigma(p));
  EXPECT_NEAR(r.delta_X_min, 0.02, 1e-9);
  EXPECT_NEAR(r.delta_Py_min, 0.2, 1e-9);
  EXPECT_NEAR(r.squeezing_upper_bound, 0.714285714285714, 1e-9);
  EXPECT_NEAR(r.mean_Y, 0.0, 1e-10);
  EXPECT_NEAR(r.delta_Py, 0.2, 1e-9);
  EXPECT_NEAR(r.delta_Y, 5.0, 1e-8);
  const auto j = to_json(r);
  for (const char* key : {"mean_Y", "delta_Y", "mean_Py", "delta_Py", "bounds"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["bounds"].contains("squeezing_upper_bound"));
}

TEST(Report, BoundsFollowMeasuredMean) {
  const ParameterPoint p = at_tau(0.04, 1.0, 0.1);
  const UncertaintyReport r = uncertainty_report(p, 5.0, 4.0, 0.3);
  EXPECT_NEAR(r.mean_Y, 5.0, 1e-9);
  EXPECT_NEAR(r.mean_Py, 0.3, 1e-9);
  EXPECT_NEAR(r.delta_Py_min, 0.2 * std::sqrt(2.0), 1e-9);
  EXPECT_GE(r.delta_Py, r.delta_Py_min);
}

TEST(BruteForce, NoViolationAndApproachAtOrigin) {
  const ScanReport r = brute_force_min_product(at_tau(0.04));
  EXPECT_GE(r.states, 600u);
  EXPECT_TRUE(r.no_violation()) << r.worst_robertson_slack << " " << r.worst_formula_slack;
  EXPECT_TRUE(r.approaches(0.02)) << r.min_ratio;
}

TEST(BruteForce, ShiftedCenterTracksScaling) {
  ScanGrid g;
  g.centers = {5.0};
  const ScanReport r = brute_force_min_product(at_tau(0.04), g);
  EXPECT_TRUE(r.no_violation());
  EXPECT_TRUE(r.approaches(0.02)) << r.min_ratio;
  EXPECT_NEAR(r.best.mean_Y, 5.0, 1e-6);
  EXPECT_NEAR(r.best.delta_Py, 0.2 * std::sqrt(2.0), 0.02 * 0.2 * std::sqrt(2.0));
}

TEST(BruteForce, PlainGaussiansStayAwayFromMinimum) {
  ScanGrid g;
  g.deformed = false;
  const ScanReport r = brute_force_min_product(at_tau(0.04), g);
  EXPECT_TRUE(r.no_violation());
  EXPECT_GT(r.min_ratio, 1.2);
}

TEST(BruteForce, FlatSpaceSaturation) {
  ScanGrid g;
  g.sigma_points = 20;
  const ScanReport r = brute_force_min_product(at_tau(0.0), g);
  EXPECT_TRUE(r.no_violation());
  EXPECT_NEAR(r.worst_robertson_slack, 0.0, 1e-9);
}
