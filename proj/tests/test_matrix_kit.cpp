#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gen.hpp"
#include "spinor/matrix_kit.hpp"

using namespace spinor;

namespace {

Vec random_vec(std::mt19937_64& rng, int m) {
  Vec v(m);
  for (int i = 0; i < m; ++i) v(i) = gen::uniform_real(rng, -2.0, 2.0);
  return v;
}

Mat random_skew(std::mt19937_64& rng, int m) {
  Mat A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = gen::uniform_real(rng, -2.0, 2.0);
  return A - A.transpose();
}

double maxabs(const Mat& A) { return A.cwiseAbs().maxCoeff(); }

// Pfaffian by expansion along the first row; exponential but exact in structure.
double pfaffian_expansion(const Mat& A) {
  const Eigen::Index n = A.rows();
  if (n == 0) return 1.0;
  double s = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    Mat sub(n - 2, n - 2);
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = 0; b < keep.size(); ++b) sub(a, b) = A(keep[a], keep[b]);
    s += ((j % 2 == 1) ? 1.0 : -1.0) * A(0, j) * pfaffian_expansion(sub);
  }
  return s;
}

Mat Hprime() {
  Mat H(2, 2);
  H << 0, 1, -1, 0;
  return H;
}

}  // namespace

TEST(MatrixKit, XAlphaDisplay) {
  Vec a(2);
  a << 1, 0;
  Mat expect(4, 4);
  expect << 0, 0, -1, 1,  //
      0, 0, 0, 0,         //
      1, 0, 0, 0,         //
      1, 0, 0, 0;
  EXPECT_EQ(mk::X_alpha(a), expect);
  EXPECT_EQ(mk::build(mk::BuildKind::X_alpha, a), expect);
  EXPECT_TRUE(mk::in_g(expect));
  EXPECT_EQ(mk::nbar_alpha(Vec::Zero(3)), Mat::Identity(5, 5));
}

TEST(MatrixKit, BracketIdentities) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = gen::uniform_int(rng, 2, 7);
    const Vec al = random_vec(rng, m), be = random_vec(rng, m);
    const Mat Y = random_skew(rng, m);
    const Mat H = mk::H0(m);
    Mat lhs1 = mk::bracket(mk::X_alpha(al), mk::Xbar_alpha(be));
    Mat rhs1 = Mat::Zero(m + 2, m + 2);
    rhs1.topLeftCorner(m, m) = 2.0 * (al * be.transpose() - be * al.transpose());
    rhs1 += 2.0 * al.dot(be) * H;
    EXPECT_LE(maxabs(lhs1 - rhs1), 1e-12);
    EXPECT_LE(maxabs(mk::bracket(mk::diag_Y(Y), mk::X_alpha(al)) - mk::X_alpha(Y * al)), 1e-12);
    EXPECT_LE(maxabs(mk::bracket(mk::diag_Y(Y), mk::Xbar_alpha(be)) - mk::Xbar_alpha(Y * be)), 1e-12);
    EXPECT_LE(maxabs(mk::bracket(H, mk::X_alpha(al)) - mk::X_alpha(al)), 1e-12);
    EXPECT_LE(maxabs(mk::bracket(H, mk::Xbar_alpha(be)) + mk::Xbar_alpha(be)), 1e-12);
  }
}

TEST(MatrixKit, NilpotentExponentials) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = gen::uniform_int(rng, 2, 6);
    const Vec a = random_vec(rng, m);
    const Mat X = mk::X_alpha(a);
    EXPECT_LE(maxabs(X * X * X), 1e-12);
    EXPECT_LE(maxabs(mk::theta(mk::n_alpha(a)) - mk::nbar_alpha(-a)), 1e-12);
    EXPECT_LE(maxabs(mk::n_alpha(a) * mk::n_alpha(-a) - Mat::Identity(m + 2, m + 2)), 1e-12);
  }
}

TEST(MatrixKit, OppositeIwasawaAndBruhat) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = gen::uniform_int(rng, 2, 7);
    const Vec x = random_vec(rng, m);
    const double nn = x.squaredNorm();
    const Mat iwasawa = mk::s_x(x) * mk::exp_H0(-std::log(1.0 + nn), m) * mk::nbar_alpha(x / (1.0 + nn));
    EXPECT_LE(maxabs(mk::n_alpha(x) - iwasawa), 1e-10);
    const Mat bruhat = mk::n_alpha(x / nn) * mk::r_x(x) * mk::exp_H0(-2.0 * std::log(std::sqrt(nn)), m) * mk::nbar_alpha(x / nn);
    EXPECT_LE(maxabs(mk::s_elem(m) * mk::n_alpha(x) - bruhat), 1e-10);
  }
}

TEST(ProjectP, Examples) {
  const int m = 3;
  const PStdForm h = project_p(mk::H0(m));
  EXPECT_EQ(maxabs(h.Y), 0.0);
  EXPECT_EQ(h.beta.norm(), 0.0);
  EXPECT_EQ(h.a, 1.0);
  Vec al(3);
  al << 1, -2, 0.5;
  const PStdForm xb = project_p(mk::Xbar_alpha(al));
  EXPECT_LE((xb.beta - al).norm(), 1e-15);
  EXPECT_EQ(xb.a, 0.0);
  const PStdForm xa = project_p(mk::X_alpha(al));
  EXPECT_EQ(xa.beta.norm(), 0.0);
  EXPECT_EQ(maxabs(xa.Y), 0.0);
  Mat bad = Mat::Identity(5, 5);
  EXPECT_THROW(project_p(bad), std::invalid_argument);
}

TEST(ProjectP, InverseOfXYba) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = gen::uniform_int(rng, 2, 8);
    PStdForm p{random_skew(rng, m), random_vec(rng, m), gen::uniform_real(rng, -2, 2)};
    const PStdForm q = project_p(X_Yba(p) + mk::X_alpha(random_vec(rng, m)));
    EXPECT_LE(maxabs(q.Y - p.Y), 1e-12);
    EXPECT_LE((q.beta - p.beta).norm(), 1e-12);
    EXPECT_NEAR(q.a, p.a, 1e-12);
  }
}

TEST(Canonicalize, Examples) {
  PStdForm p{Mat::Zero(3, 3), Vec::Unit(3, 2), 1.0};
  const Canonicalized c = canonicalize(p);
  EXPECT_LE((c.gamma + 0.5 * Vec::Unit(3, 2)).norm(), 1e-15);
  EXPECT_EQ(maxabs(c.form.Y), 0.0);
  EXPECT_TRUE(is_canonical(c.form));
  PStdForm z{Mat::Zero(3, 3), Vec::Zero(3), 0.0};
  EXPECT_THROW(canonicalize(z), std::domain_error);
}

TEST(Canonicalize, AdjointConjugationOracle) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = gen::uniform_int(rng, 2, 8);
    PStdForm p{random_skew(rng, m), random_vec(rng, m), gen::uniform_real(rng, -2, 2)};
    const Canonicalized c = canonicalize(p);
    EXPECT_TRUE(is_canonical(c.form));
    // Ad(n_gamma) X_{Y,beta,a} projects to the canonical form.
    const PStdForm q = project_p(mk::Ad(mk::n_alpha(c.gamma), X_Yba(p)));
    EXPECT_LE(maxabs(q.Y - c.form.Y), 1e-10);
    EXPECT_LE((q.beta - c.form.beta).norm(), 1e-10);
    EXPECT_NEAR(q.a, 0.0, 1e-10);
    const Canonicalized again = canonicalize(c.form);
    EXPECT_LE(again.gamma.norm(), 1e-12);
    EXPECT_LE(maxabs(again.form.Y - c.form.Y), 1e-12);
  }
}

TEST(Pfaffian, Examples) {
  Mat a(2, 2);
  a << 0, 2.5, -2.5, 0;
  EXPECT_DOUBLE_EQ(pfaffian(a), 2.5);
  Mat b = Mat::Zero(4, 4);
  b.topLeftCorner(2, 2) = 3.0 * Hprime();
  b.bottomRightCorner(2, 2) = -2.0 * Hprime();
  EXPECT_NEAR(pfaffian(b), -6.0, 1e-14);
  EXPECT_THROW(pfaffian(Mat::Zero(3, 3)), std::invalid_argument);
  EXPECT_THROW(pfaffian(Mat::Identity(2, 2)), std::invalid_argument);
}

TEST(Pfaffian, SquaresToDeterminantAndMatchesExpansion) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = gen::uniform_int(rng, 1, 4);
    const Mat S = random_skew(rng, 2 * k);
    const double pf = pfaffian(S);
    EXPECT_NEAR(pf * pf, S.determinant(), 1e-9 * std::max(1.0, std::abs(S.determinant())));
    EXPECT_NEAR(pf, pfaffian_expansion(S), 1e-9 * std::max(1.0, std::abs(pf)));
  }
}

TEST(Pfaffian, AlternatesUnderSwap) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 2 * gen::uniform_int(rng, 1, 4);
    const Mat S = random_skew(rng, N);
    const int i = gen::uniform_int(rng, 0, N - 1);
    int j = gen::uniform_int(rng, 0, N - 2);
    if (j >= i) ++j;
    Eigen::PermutationMatrix<Eigen::Dynamic> P(N);
    P.setIdentity();
    P.applyTranspositionOnTheRight(i, j);
    const Mat T = P.transpose() * S * P;
    EXPECT_NEAR(pfaffian(T), -pfaffian(S), 1e-10 * std::max(1.0, std::abs(pfaffian(S))));
  }
}

TEST(SingularValues, Examples) {
  EXPECT_EQ(singular_values(Mat::Identity(3, 3)), (std::vector<double>{1, 1, 1}));
  const auto s = singular_values(-1.5 * Hprime());
  EXPECT_NEAR(s[0], 1.5, 1e-15);
  EXPECT_NEAR(s[1], 1.5, 1e-15);
}

TEST(SingularValues, MatchSymmetricEigenRoute) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = gen::uniform_int(rng, 2, 9);
    const Mat A = random_skew(rng, m);
    Eigen::SelfAdjointEigenSolver<Mat> es(A.transpose() * A);
    std::vector<double> ev;
    for (int i = 0; i < m; ++i) ev.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
    std::sort(ev.begin(), ev.end(), std::greater<>());
    const auto sv = singular_values(A);
    for (int i = 0; i < m; ++i) EXPECT_NEAR(sv[i], ev[i], 1e-7);
  }
}

TEST(POrbitInvariants, Examples) {
  const Group g3(3);
  const POrbitDescriptor d0 = p_orbit_invariants({Mat::Zero(3, 3), Vec::Unit(3, 2), 0.0}, g3);
  EXPECT_EQ(d0.x, std::vector<double>{0.0});
  EXPECT_EQ(d0.pf_sign, 0);
  for (double x1 : {1.5, -0.75}) {
    Mat Y = Mat::Zero(3, 3);
    Y.topLeftCorner(2, 2) = x1 * Hprime();
    const POrbitDescriptor d = p_orbit_invariants({Y, 2.0 * Vec::Unit(3, 2), 0.0}, g3);
    EXPECT_NEAR(d.x[0], std::abs(x1), 1e-14);
    EXPECT_EQ(d.pf_sign, x1 > 0 ? 1 : -1);
    EXPECT_NEAR(d.signed_last(), x1, 1e-14);
  }
  Mat Y4 = Mat::Zero(4, 4);
  Y4.topLeftCorner(2, 2) = 2.0 * Hprime();
  const POrbitDescriptor d4 = p_orbit_invariants({Y4, Vec::Unit(4, 3), 0.0}, Group(4));
  EXPECT_NEAR(d4.x[0], 2.0, 1e-14);
  EXPECT_EQ(d4.pf_sign, 0);
  EXPECT_THROW(p_orbit_invariants({Y4, Vec::Unit(4, 0), 0.0}, Group(4)), std::invalid_argument);
}
