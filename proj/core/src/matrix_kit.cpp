#include "spinor/matrix_kit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinor {

namespace mk {

namespace {

void put_block(Mat& M, int r, double c) {
  M(r, r + 1) = c;
  M(r + 1, r) = -c;
}

}  // namespace

Mat H0(int m) {
  Mat H = Mat::Zero(m + 2, m + 2);
  H(m, m + 1) = H(m + 1, m) = 1.0;
  return H;
}

Mat X_alpha(const Vec& alpha) {
  const int m = static_cast<int>(alpha.size());
  Mat X = Mat::Zero(m + 2, m + 2);
  for (int i = 0; i < m; ++i) {
    X(i, m) = -alpha(i);
    X(i, m + 1) = alpha(i);
    X(m, i) = alpha(i);
    X(m + 1, i) = alpha(i);
  }
  return X;
}

Mat Xbar_alpha(const Vec& alpha) {
  const int m = static_cast<int>(alpha.size());
  Mat X = Mat::Zero(m + 2, m + 2);
  for (int i = 0; i < m; ++i) {
    X(i, m) = alpha(i);
    X(i, m + 1) = alpha(i);
    X(m, i) = -alpha(i);
    X(m + 1, i) = alpha(i);
  }
  return X;
}

Mat n_alpha(const Vec& alpha) {
  const Mat X = X_alpha(alpha);
  return Mat::Identity(X.rows(), X.cols()) + X + 0.5 * X * X;
}

Mat nbar_alpha(const Vec& alpha) {
  const Mat X = Xbar_alpha(alpha);
  return Mat::Identity(X.rows(), X.cols()) + X + 0.5 * X * X;
}

Mat exp_H0(double t, int m) {
  Mat E = Mat::Identity(m + 2, m + 2);
  E(m, m) = E(m + 1, m + 1) = std::cosh(t);
  E(m, m + 1) = E(m + 1, m) = std::sinh(t);
  return E;
}

Mat s_elem(int m) {
  Mat S = Mat::Identity(m + 2, m + 2);
  S(m, m) = -1.0;
  return S;
}

Mat r_x(const Vec& x) {
  const int m = static_cast<int>(x.size());
  const double nn = x.squaredNorm();
  if (nn == 0.0) throw std::invalid_argument("r_x: x must be nonzero");
  Mat R = Mat::Identity(m + 2, m + 2);
  R.topLeftCorner(m, m) -= 2.0 * x * x.transpose() / nn;
  return R;
}

Mat s_x(const Vec& x) {
  const int m = static_cast<int>(x.size());
  Vec y(m + 1);
  y << x, 1.0;
  Mat R = Mat::Identity(m + 2, m + 2);
  R.topLeftCorner(m + 1, m + 1) -= 2.0 * y * y.transpose() / y.squaredNorm();
  return s_elem(m) * R;
}

Mat diag_Y(const Mat& Y) {
  const int m = static_cast<int>(Y.rows());
  Mat D = Mat::Zero(m + 2, m + 2);
  D.topLeftCorner(m, m) = Y;
  return D;
}

Mat theta(const Mat& g) {
  Mat J = Mat::Identity(g.rows(), g.cols());
  J(g.rows() - 1, g.cols() - 1) = -1.0;
  return J * g * J;
}

Mat t_vec(const Vec& a) {
  const int n = static_cast<int>(a.size());
  const int m = 2 * n - 1;
  Mat T = Mat::Zero(m + 2, m + 2);
  for (int i = 0; i < n; ++i) put_block(T, 2 * i, a(i));
  return T;
}

Mat tprime_vec(const Vec& a, int m) {
  const int n = (m + 2) / 2;
  if (a.size() != n) throw std::invalid_argument("tprime_vec: a must have n = floor((m+2)/2) entries");
  Mat T = Mat::Zero(m + 2, m + 2);
  for (int i = 0; i + 1 < n; ++i) put_block(T, 2 * i, a(i));
  T(m, m + 1) = T(m + 1, m) = a(n - 1);
  return T;
}

Mat s_vec(const Vec& a, int sign) {
  const int n = static_cast<int>(a.size()) + 1;
  const int m = 2 * n - 1;
  if (sign != 1 && sign != -1) throw std::invalid_argument("s_vec: sign must be +1 or -1");
  Mat T = Mat::Zero(m + 2, m + 2);
  for (int i = 0; i + 1 < n; ++i) put_block(T, 2 * i, a(i));
  Vec e = Vec::Zero(m);
  e(m - 1) = sign;
  return T + Xbar_alpha(e);
}

Mat build(BuildKind kind, const Vec& data, int m) {
  switch (kind) {
    case BuildKind::X_alpha: return X_alpha(data);
    case BuildKind::Xbar_alpha: return Xbar_alpha(data);
    case BuildKind::t_vec: return t_vec(data);
    case BuildKind::tprime_vec: return tprime_vec(data, m);
    case BuildKind::nbar_exp: return nbar_alpha(data);
    case BuildKind::H0: return H0(m);
    case BuildKind::s: return s_elem(m);
    case BuildKind::r_x: return r_x(data);
    case BuildKind::s_x: return s_x(data);
  }
  throw std::invalid_argument("build: unknown kind");
}

Mat bracket(const Mat& A, const Mat& B) { return A * B - B * A; }

Mat Ad(const Mat& g, const Mat& X) { return g * X * g.inverse(); }

bool in_g(const Mat& X, double tol) {
  Mat I = Mat::Identity(X.rows(), X.cols());
  I(X.rows() - 1, X.cols() - 1) = -1.0;
  const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
  return (X * I + I * X.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace mk

Mat X_Yba(const PStdForm& p) {
  const int m = static_cast<int>(p.Y.rows());
  Mat X = Mat::Zero(m + 2, m + 2);
  X.topLeftCorner(m, m) = p.Y;
  X.block(0, m, m, 1) = p.beta;
  X.block(0, m + 1, m, 1) = p.beta;
  X.block(m, 0, 1, m) = -p.beta.transpose();
  X.block(m + 1, 0, 1, m) = p.beta.transpose();
  X(m, m + 1) = X(m + 1, m) = p.a;
  return X;
}

PStdForm project_p(const Mat& X, double tol) {
  if (X.rows() != X.cols() || X.rows() < 4) throw std::invalid_argument("project_p: expected an (m+2)x(m+2) matrix");
  if (!mk::in_g(X, tol)) throw std::invalid_argument("project_p: matrix is not in so(m+1,1)");
  const int m = static_cast<int>(X.rows()) - 2;
  PStdForm p;
  p.Y = X.topLeftCorner(m, m);
  p.beta = 0.5 * (X.block(0, m, m, 1) + X.block(0, m + 1, m, 1));
  p.a = X(m, m + 1);
  return p;
}

Canonicalized canonicalize(const PStdForm& p) {
  const double bb = p.beta.squaredNorm();
  if (!(bb > 0.0)) throw std::domain_error("canonicalize: beta = 0 (depth-zero orbit)");
  const Vec Yb = p.Y * p.beta;
  Canonicalized c;
  c.gamma = -(Yb + p.a * p.beta) / (2.0 * bb);
  c.form.Y = p.Y - (Yb * p.beta.transpose() - p.beta * Yb.transpose()) / bb;
  c.form.beta = p.beta;
  c.form.a = 0.0;
  return c;
}

bool is_canonical(const PStdForm& p, double tol) {
  const double scale = std::max({1.0, p.Y.cwiseAbs().maxCoeff(), p.beta.cwiseAbs().maxCoeff()});
  return std::abs(p.a) <= tol * scale && (p.Y * p.beta).cwiseAbs().maxCoeff() <= tol * scale * scale;
}

double pfaffian(const Mat& S, double tol) {
  const Eigen::Index N = S.rows();
  if (N != S.cols()) throw std::invalid_argument("pfaffian: matrix must be square");
  if (N % 2 != 0) throw std::invalid_argument("pfaffian: odd dimension");
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  if ((S + S.transpose()).cwiseAbs().maxCoeff() > tol * scale) throw std::invalid_argument("pfaffian: matrix is not skew");
  if (N == 0) return 1.0;
  Mat A = 0.5 * (S - S.transpose());
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < N; ++k) {
    const Eigen::Index len = N - k - 1;
    Vec x = A.block(k + 1, k, len, 1);
    const double tail = len > 1 ? x.tail(len - 1).norm() : 0.0;
    if (tail > 0.0) {
      const double alpha = (x(0) > 0 ? -1.0 : 1.0) * x.norm();
      Vec v = x;
      v(0) -= alpha;
      v.normalize();
      // Two-sided Householder reflection on rows/cols k+1..N-1; det = -1.
      A.bottomRows(len) -= 2.0 * v * (v.transpose() * A.bottomRows(len));
      A.rightCols(len) -= 2.0 * (A.rightCols(len) * v) * v.transpose();
      pf = -pf;
    }
    if (k % 2 == 0) pf *= A(k, k + 1);
  }
  return pf;
}

std::vector<double> singular_values(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A);
  const Vec s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Mat Z_matrix(const PStdForm& p) {
  const int m = static_cast<int>(p.Y.rows());
  const double nb = p.beta.norm();
  if (!(nb > 0.0)) throw std::domain_error("Z_matrix: beta = 0");
  Mat Z = Mat::Zero(m + 1, m + 1);
  Z.topLeftCorner(m, m) = p.Y;
  Z.block(0, m, m, 1) = p.beta / nb;
  Z.block(m, 0, 1, m) = -p.beta.transpose() / nb;
  return Z;
}

POrbitDescriptor p_orbit_invariants(const PStdForm& c, const Group& g, double zero_tol) {
  const int m = static_cast<int>(c.Y.rows());
  if (m != g.m()) throw std::invalid_argument("p_orbit_invariants: Y has the wrong size for m = " + std::to_string(g.m()));
  if (!is_canonical(c)) throw std::invalid_argument("p_orbit_invariants: input is not in canonical form");
  const std::vector<double> sv = singular_values(c.Y);
  const int pairs = g.np() - 1;
  POrbitDescriptor d;
  d.depth = 1;
  for (int k = 0; k < pairs; ++k) d.x.push_back(0.5 * (sv[2 * k] + sv[2 * k + 1]));
  if (g.odd() && !d.x.empty() && d.x.back() > zero_tol) {
    const double pf = pfaffian(Z_matrix(c));
    d.pf_sign = pf > 0 ? 1 : (pf < 0 ? -1 : 0);
  }
  return d;
}

}  // namespace spinor
