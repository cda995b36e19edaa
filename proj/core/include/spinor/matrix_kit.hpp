#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spinor/porbit.hpp"
#include "spinor/weights.hpp"

namespace spinor {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Matrix model of so(m+1,1) in (m+2)x(m+2) matrices. Slots 0..m-1 carry
// R^m, slot m is the (m+1)-st coordinate and slot m+1 the time coordinate.
namespace mk {

struct Tolerances {
  double structural = 1e-10;
  double oracle = 1e-9;
  double bracket = 1e-12;
  double double_zero = 1e-7;
};

Mat H0(int m);
Mat X_alpha(const Vec& alpha);
Mat Xbar_alpha(const Vec& alpha);
Mat n_alpha(const Vec& alpha);     // exp(X_alpha)
Mat nbar_alpha(const Vec& alpha);  // exp(Xbar_alpha)
Mat exp_H0(double t, int m);
Mat s_elem(int m);                 // diag(I_m, -1, 1)
Mat r_x(const Vec& x);             // diag(I_m - 2 x x^t / |x|^2, I_2)
Mat s_x(const Vec& x);             // s * diag(I_{m+1} - 2 y y^t / |y|^2, 1), y = (x, 1)
Mat diag_Y(const Mat& Y);          // diag(Y, 0_2)
Mat theta(const Mat& g);           // Cartan involution, conjugation by diag(I_{m+1}, -1)

// t_a for odd m: a_i H' on slots (2i-2, 2i-1), i = 1..n.
Mat t_vec(const Vec& a);
// t'_a = diag(a_1 H', ..., a_{n-1} H', [0,] a_n H) with a = (a_1, ..., a_n).
Mat tprime_vec(const Vec& a, int m);
// s_a = diag(a_1 H', ..., a_{n-1} H', sign * U) for odd m.
Mat s_vec(const Vec& a, int sign);

enum class BuildKind { X_alpha, Xbar_alpha, t_vec, tprime_vec, nbar_exp, H0, s, r_x, s_x };
// `m` is used by H0, s and tprime_vec; the other kinds infer it from data.
Mat build(BuildKind kind, const Vec& data, int m = 0);

Mat bracket(const Mat& A, const Mat& B);
Mat Ad(const Mat& g, const Mat& X);
bool in_g(const Mat& X, double tol = 1e-10);

}  // namespace mk

// pr(X) = pr(X_{Y,beta,a}).
struct PStdForm {
  Mat Y;
  Vec beta;
  double a = 0.0;
};

Mat X_Yba(const PStdForm& p);
PStdForm project_p(const Mat& X, double tol = 1e-10);

struct Canonicalized {
  Vec gamma;
  PStdForm form;
};
Canonicalized canonicalize(const PStdForm& p);
bool is_canonical(const PStdForm& p, double tol = 1e-10);

double pfaffian(const Mat& S, double tol = 1e-10);
std::vector<double> singular_values(const Mat& A);

// Z_{Y,beta} = [[Y, beta^t/|beta|], [-beta/|beta|, 0]].
Mat Z_matrix(const PStdForm& p);

using POrbitDescriptor = BasicPOrbit<double>;

POrbitDescriptor p_orbit_invariants(const PStdForm& canonical, const Group& g, double zero_tol = 1e-9);

}  // namespace spinor
