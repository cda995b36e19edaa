#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace spinor::fourier {

using cplx = std::complex<double>;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

// Fourier transform convention: Ff(xi) = (2 pi)^{-m/2} int e^{i(xi,x)} f(x) dx.

// Lanczos approximation with reflection; throws at poles.
cplx gamma_fn(cplx z);
// 1/Gamma(x), zero at the poles.
double rgamma(double x);

// K~_alpha(x) = (x/2)^alpha K_alpha(x), x > 0. Sets *underflow when K_alpha(x) underflows.
double kbessel_tilde(double alpha, double x, bool* underflow = nullptr);

// d_alpha = 2^{m/2-alpha} Gamma((m-alpha)/2) / Gamma(alpha/2), with F|x|^{-alpha} = d_alpha |xi|^{alpha-m}.
double riesz_d(double alpha, int m);

// Lambda^k basis: k-subsets of {0, ..., N-1} in lexicographic order.
std::vector<std::vector<int>> wedge_basis(int N, int k);
int wedge_index(const std::vector<int>& subset, int N);
// Lambda^k A on the wedge basis; entries are k x k minors.
RMat wedge_power(const RMat& A, int k);
// Coefficients of w_1 ^ ... ^ w_k for complex vectors w_i in C^N.
CVec wedge(const std::vector<CVec>& ws);

// r_x = I - 2 x x^t / |x|^2.
RMat reflection(const RVec& x);
// sigma_j(r_x) on Lambda^j C^m.
RMat reflection_matrix(const RVec& x, int j);

struct KernelParams {
  int m = 3;
  int j = 0;
  double nu = 0.0;
};
void validate(const KernelParams& p);

// F T_j(nu) = 2^{2nu - m/2} |xi|^{-2nu} / Gamma(1 + m/2 - nu) (m/2 - j - nu sigma_j(r_xi)).
RMat ft_knapp_stein_kernel(const KernelParams& p, const RVec& xi);

// F(1+|x|^2)^lambda at |xi| = xi_norm in dimension m.
double ft_poisson(double lambda, int m, double xi_norm);

// |xi|^{(2 nu + m)/2}.
double anti_trivialization_weight(double nu, int m, const RVec& xi);

// f_{u-}(n_x) = (1+|x|^2)^{-n} p(r'_x u+), x in R^{2n-1}, value in Lambda^n C^{2n-1},
// from the expanded wedge display of r'_x u+.
CVec f_lowest_ktype(const RVec& x, int n);
// Same vector from Lambda^n of the matrix r'_x applied to u+.
CVec f_lowest_ktype_matrix(const RVec& x, int n);
// (2^{-1/2-n} sqrt(pi) / n!) e^{-|xi|} (|xi| (1 - r_xi) u + 2 u' ^ xi).
CVec ft_lowest_ktype(const RVec& xi, int n);
// u = v_1 ^ ... ^ v_{n-1} ^ e_{2n-1} in Lambda^n C^{2n-1}.
CVec lowest_ktype_u(int n);

// Radial Fourier transform of g(|x|) in dimension m by oscillatory quadrature.
double radial_ft_quadrature(const std::function<double(double)>& g, int m, double rho);
// int_0^inf f(r) dr where f oscillates with angular frequency omega and zeros
// near (k pi + phase) / omega; half-period panels with repeated averaging.
double oscillatory_integral(const std::function<double(double)>& f, double omega, double phase);

// Formulas F1..F5 at n: 1: F(1+|x|^2)^{-n}, 2: F(1+|x|^2)^{-(n+1)},
// 3: F(x_j (..)^{-(n+1)}), 4: F(x_j^2 (..)^{-(n+1)}), 5: F(x_j x_k (..)^{-(n+1)}).
// Indices j, k are 0-based.
cplx f_formula_closed(int which, int n, const RVec& xi, int j = 0, int k = 1);
// Same transforms by spherical-Bessel radial quadrature; m = 2n-1 = 3 only.
cplx f_formula_quadrature(int which, int n, const RVec& xi, int j = 0, int k = 1);

// Relative error of int |x|^{-alpha} Fg = d_alpha int |xi|^{alpha-m} g for g = e^{-s|xi|^2}.
double riesz_pairing_residual(double alpha, int m, double s = 0.7);

struct GridSpec {
  int side = 64;
  double half_width = 12.0;
};

// Sampled vector-valued function on a cube with wrapped coordinates.
struct GridFn {
  int side = 0;
  double spacing = 0.0;
  int fiber = 1;
  std::vector<cplx> values;  // values[c * side^3 + flat index]
};

// (2 pi)^{-3/2} h^3 sum_x e^{i(xi,x)} f(x) on the dual grid.
GridFn dft3(const GridFn& f);
double grid_coord(int idx, int side, double spacing);

// Relative L2 residual of F(T_j(nu) * f) = (2 pi)^{m/2} F T_j(nu) F f on the
// punctured DFT grid, m = 3, for a moment-free Gaussian-mixture test function.
double verify_convolution_identity(const KernelParams& p, const GridSpec& grid = {});

// Relative L2 error between the DFT of f_lowest_ktype and ft_lowest_ktype, n = 2.
double verify_lowest_ktype_dft(int n = 2, const GridSpec& grid = {});

}  // namespace spinor::fourier
