#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "gen.hpp"
#include "spinor/fourier.hpp"

using namespace spinor;
using namespace spinor::fourier;

namespace {

constexpr double kPi = std::numbers::pi;

RVec random_vec(std::mt19937_64& rng, int m, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  RVec v(m);
  for (int i = 0; i < m; ++i) v(i) = N(rng);
  return v;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST(Gamma, ValuesAndRecurrence) {
  EXPECT_NEAR(std::abs(gamma_fn(1.0) - 1.0), 0.0, 1e-13);
  EXPECT_LT(rel(gamma_fn(0.5), std::sqrt(kPi)), 1e-13);
  EXPECT_LT(rel(gamma_fn(-0.5), -2.0 * std::sqrt(kPi)), 1e-13);
  EXPECT_THROW(gamma_fn(-2.0), std::domain_error);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const cplx z(gen::uniform_real(rng, -6.0, 8.0), gen::uniform_real(rng, -4.0, 4.0));
    EXPECT_LT(rel(gamma_fn(z + 1.0), z * gamma_fn(z)), 1e-12) << z;
    const double x = gen::uniform_real(rng, 0.05, 12.0);
    EXPECT_LT(rel(gamma_fn(x), std::tgamma(x)), 1e-12) << x;
    // Duplication formula.
    EXPECT_LT(rel(gamma_fn(x) * gamma_fn(x + 0.5), std::pow(2.0, 1.0 - 2.0 * x) * std::sqrt(kPi) * gamma_fn(2.0 * x)), 1e-12);
  }
  EXPECT_EQ(rgamma(0.0), 0.0);
  EXPECT_EQ(rgamma(-3.0), 0.0);
  EXPECT_NEAR(rgamma(3.0), 0.5, 1e-15);
}

TEST(KBessel, HalfOrderClosedForm) {
  for (double x : {0.01, 0.1, 1.0, 5.0, 20.0, 50.0})
    EXPECT_NEAR(kbessel_tilde(0.5, x) / (0.5 * std::sqrt(kPi) * std::exp(-x)), 1.0, 1e-12) << x;
}

TEST(KBessel, SmallArgumentLimit) {
  for (double a : {0.5, 1.0, 1.5, 2.5}) EXPECT_NEAR(kbessel_tilde(a, 1e-6) / (std::tgamma(a) / 2.0), 1.0, 1e-5) << a;
}

TEST(KBessel, RecursionByCentralDifferences) {
  for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5})
    for (double x = 0.1; x <= 20.0; x += 0.35) {
      const double h = 1e-5;
      const double deriv = (kbessel_tilde(a + 1.0, x + h) - kbessel_tilde(a + 1.0, x - h)) / (2.0 * h);
      const double want = -(x / 2.0) * kbessel_tilde(a, x);
      EXPECT_LT(std::abs(deriv - want) / std::abs(want), 1e-6) << "alpha=" << a << " x=" << x;
    }
}

TEST(KBessel, UnderflowFlag) {
  bool uf = false;
  EXPECT_EQ(kbessel_tilde(1.0, 1e5, &uf), 0.0);
  EXPECT_TRUE(uf);
  EXPECT_THROW(kbessel_tilde(1.0, 0.0), std::domain_error);
}

TEST(RieszD, ExamplesAndPairing) {
  EXPECT_NEAR(riesz_d(2.0, 3), std::sqrt(kPi) / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(riesz_d(1.0, 2), 1.0, 1e-14);
  EXPECT_LT(riesz_pairing_residual(1.0, 3), 1e-6);
  EXPECT_LT(riesz_pairing_residual(2.0, 3), 1e-6);
  EXPECT_THROW(riesz_d(0.0, 3), std::domain_error);
}

TEST(Wedge, BasisAndMinors) {
  EXPECT_EQ(wedge_basis(4, 2).size(), 6u);
  EXPECT_EQ(wedge_index({1, 3}, 4), 4);
  std::mt19937_64 rng(43);
  const RMat A = RMat::Random(4, 4), B = RMat::Random(4, 4);
  // Lambda^k is multiplicative.
  EXPECT_LT((wedge_power(A * B, 2) - wedge_power(A, 2) * wedge_power(B, 2)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(wedge_power(A, 4)(0, 0), A.determinant(), 1e-12);
}

TEST(Reflection, InvolutiveOrthogonalAndCoordinateCase) {
  EXPECT_TRUE(reflection_matrix(RVec::Unit(3, 0), 0).isApprox(RMat::Identity(1, 1)));
  RMat d = RMat::Identity(3, 3);
  d(0, 0) = -1.0;
  EXPECT_LT((reflection_matrix(RVec::Unit(3, 0), 1) - d).cwiseAbs().maxCoeff(), 1e-15);
  std::mt19937_64 rng(47);
  for (int t = 0; t < 50; ++t) {
    const int m = gen::uniform_int(rng, 2, 6);
    const RVec x = random_vec(rng, m);
    for (int j = 0; j <= m; ++j) {
      const RMat s = reflection_matrix(x, j);
      const RMat I = RMat::Identity(s.rows(), s.cols());
      EXPECT_LT((s * s - I).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((s * s.transpose() - I).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
  EXPECT_THROW(reflection(RVec::Zero(3)), std::invalid_argument);
}

TEST(KnappStein, SpecialParameters) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 30; ++t) {
    const int m = gen::uniform_int(rng, 2, 6);
    const RVec xi = random_vec(rng, m);
    const double r = xi.norm();
    for (int j = 0; j <= m / 2; ++j) {
      // nu = 0: scalar (m/2 - j) 2^{-m/2} / Gamma(1 + m/2).
      const RMat k0 = ft_knapp_stein_kernel({m, j, 0.0}, xi);
      const double c0 = (m / 2.0 - j) * std::pow(2.0, -m / 2.0) / std::tgamma(1.0 + m / 2.0);
      EXPECT_LT((k0 - c0 * RMat::Identity(k0.rows(), k0.cols())).cwiseAbs().maxCoeff(), 1e-12);

      // nu = m/2 - j: (2^{m/2-2j} / j!) |xi|^{-m+2j} (m/2 - j)(1 - sigma_j(r_xi)).
      const double nj = m / 2.0 - j;
      const RMat kj = ft_knapp_stein_kernel({m, j, nj}, xi);
      const RMat s = reflection_matrix(xi, j);
      const RMat want = std::pow(2.0, m / 2.0 - 2.0 * j) / factorial(j) * std::pow(r, -m + 2.0 * j) * nj *
                        (RMat::Identity(s.rows(), s.cols()) - s);
      EXPECT_LT((kj - want).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, want.cwiseAbs().maxCoeff()));
    }
    // j = 0: d_{m-2nu} |xi|^{-2nu} / Gamma(nu).
    const double nu = gen::uniform_real(rng, 0.1, m / 2.0 - 0.1);
    const double scalar = ft_knapp_stein_kernel({m, 0, nu}, xi)(0, 0);
    const double want = riesz_d(m - 2.0 * nu, m) * std::pow(r, -2.0 * nu) / std::tgamma(nu);
    EXPECT_LT(std::abs(scalar - want) / std::abs(want), 1e-12);
  }
}

TEST(KnappStein, HermitianPositiveAndComposition) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 100; ++t) {
    const int m = gen::uniform_int(rng, 2, 6);
    const int j = gen::uniform_int(rng, 0, m / 2);
    const double nu = gen::uniform_real(rng, -m / 2.0 + 0.05, m / 2.0 - 0.05);
    const RVec xi = random_vec(rng, m);
    const RMat k = ft_knapp_stein_kernel({m, j, nu}, xi);
    EXPECT_LT((k - k.transpose()).cwiseAbs().maxCoeff(), 1e-13);

    // The multiplier (m/2 - j) - nu sigma_j has eigenvalues m/2 - j -+ nu.
    const RMat s = reflection_matrix(xi, j);
    const RMat mult = (m / 2.0 - j) * RMat::Identity(s.rows(), s.cols()) - nu * s;
    const double lo = Eigen::SelfAdjointEigenSolver<RMat>(mult).eigenvalues().minCoeff();
    const bool both = j > 0 && j < m;
    const bool expect_pd = both ? std::abs(nu) < m / 2.0 - j : nu < m / 2.0 - j;
    EXPECT_EQ(lo > 1e-12, expect_pd) << "m=" << m << " j=" << j << " nu=" << nu;

    const RMat prod = ft_knapp_stein_kernel({m, j, nu}, xi) * ft_knapp_stein_kernel({m, j, -nu}, xi);
    const double c = prod(0, 0);
    EXPECT_LT((prod - c * RMat::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, std::abs(c)));
  }
  EXPECT_THROW(ft_knapp_stein_kernel({3, 2, 0.5}, RVec::Ones(3)), std::invalid_argument);
}

TEST(Poisson, ClosedFormsAndQuadrature) {
  for (double r : {0.2, 1.0, 3.0}) {
    RVec xi = RVec::Zero(1);
    xi(0) = r;
    EXPECT_NEAR(ft_poisson(-1.0, 1, r), std::sqrt(kPi / 2.0) * std::exp(-r), 1e-13);
    for (int n : {2, 3}) {
      const double want = std::pow(2.0, 0.5 - n) * std::sqrt(kPi) / factorial(n - 1) * std::exp(-r);
      EXPECT_LT(std::abs(ft_poisson(-n, 2 * n - 1, r) - want) / want, 1e-12);
    }
    for (int m : {1, 2, 3})
      for (double l : {-2.0, -3.0}) {
        const double c = ft_poisson(l, m, r);
        const double q = radial_ft_quadrature([&](double x) { return std::pow(1.0 + x * x, l); }, m, r);
        EXPECT_LT(std::abs(c - q) / std::abs(c), 1e-6) << "m=" << m << " lambda=" << l << " r=" << r;
      }
  }
  EXPECT_EQ(ft_poisson(0.0, 3, 1.0), 0.0);
  EXPECT_EQ(ft_poisson(2.0, 3, 1.0), 0.0);
}

TEST(Poisson, ReproducesFirstFormulaConstant) {
  RVec xi(3);
  xi << 0.4, -1.2, 0.7;
  EXPECT_LT(rel(ft_poisson(-2.0, 3, xi.norm()), f_formula_closed(1, 2, xi)), 1e-12);
}

TEST(FFormulas, ClosedMatchesQuadrature) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 8; ++t) {
    const RVec xi = random_vec(rng, 3);
    for (int w = 1; w <= 5; ++w) {
      const cplx c = f_formula_closed(w, 2, xi, 0, 1);
      const cplx q = f_formula_quadrature(w, 2, xi, 0, 1);
      EXPECT_LT(rel(q, c), 1e-5) << "formula " << w << " xi=" << xi.transpose();
    }
    EXPECT_LT(rel(f_formula_quadrature(4, 2, xi, 2, 2), f_formula_closed(4, 2, xi, 2, 2)), 1e-5);
    EXPECT_LT(rel(f_formula_quadrature(5, 2, xi, 1, 2), f_formula_closed(5, 2, xi, 1, 2)), 1e-5);
  }
}

TEST(LowestKType, ValueAtOriginAndMatrixRoute) {
  for (int n : {2, 3}) {
    const CVec u = lowest_ktype_u(n);
    EXPECT_LT((f_lowest_ktype(RVec::Zero(2 * n - 1), n) - u).norm(), 1e-14);
    std::mt19937_64 rng(67 + n);
    for (int t = 0; t < 100; ++t) {
      const RVec x = random_vec(rng, 2 * n - 1, 2.0);
      const CVec a = f_lowest_ktype(x, n), b = f_lowest_ktype_matrix(x, n);
      EXPECT_LT((a - b).norm(), 1e-12 * std::max(1.0, b.norm())) << x.transpose();
      // p(r'_x u) has norm at most |u|, so the weight (1+|x|^2)^{-n} bounds the decay.
      EXPECT_LE(a.norm() * std::pow(1.0 + x.squaredNorm(), n), u.norm() * (1.0 + 1e-12));
    }
  }
}

TEST(LowestKType, TransformAtBaseCovector) {
  for (int n : {2, 3}) {
    const RVec e = RVec::Unit(2 * n - 1, 2 * n - 2);
    const double c = std::pow(2.0, -0.5 - n) * std::sqrt(kPi) / factorial(n);
    const CVec want = c / std::exp(1.0) * 4.0 * lowest_ktype_u(n);
    EXPECT_LT((ft_lowest_ktype(e, n) - want).norm(), 1e-14);
  }
}

TEST(LowestKType, DftOracle) { EXPECT_LE(verify_lowest_ktype_dft(2), 5e-2); }

TEST(Convolution, MultiplierIdentityOnGrid) {
  for (int j : {0, 1})
    for (double nu : {0.5, 1.0}) EXPECT_LE(verify_convolution_identity({3, j, nu}), 1e-3) << "j=" << j << " nu=" << nu;
  EXPECT_THROW(verify_convolution_identity({3, 0, 2.0}), std::invalid_argument);
}

TEST(AntiTrivialization, Weight) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    RVec xi = random_vec(rng, 3);
    const double nu = gen::uniform_real(rng, -1.0, 1.0);
    EXPECT_NEAR(anti_trivialization_weight(nu, 3, xi / xi.norm()), 1.0, 1e-14);
    EXPECT_NEAR(anti_trivialization_weight(nu, 3, xi) / std::pow(xi.norm(), (2 * nu + 3) / 2.0), 1.0, 1e-14);
    // At nu = 0 the squared weight cancels the |xi|^{-m} Haar density.
    const double w = anti_trivialization_weight(0.0, 3, xi);
    EXPECT_NEAR(w * w * std::pow(xi.norm(), -3.0), 1.0, 1e-13);
  }
}
