#include "spinor/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <fftw3.h>

#include "spinor/parallel.hpp"

namespace spinor::fourier {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double gk_integral(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-14);
}

void combos(int N, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < N; ++i) {
    cur.push_back(i);
    combos(N, k, i + 1, cur, out);
    cur.pop_back();
  }
}

CVec basis_vec(int N, int i) {
  CVec e = CVec::Zero(N);
  e(i) = 1.0;
  return e;
}

// v_k = e_{2k-1} + i e_{2k} (1-based k), as a vector in C^N.
CVec v_vec(int N, int k) {
  CVec v = CVec::Zero(N);
  v(2 * k - 2) = 1.0;
  v(2 * k - 1) = kI;
  return v;
}

// Projection Lambda^n C^{2n} -> Lambda^n C^{2n-1} dropping e_{2n}.
CVec project_last(const CVec& w, int n) {
  const int N = 2 * n;
  const auto big = wedge_basis(N, n);
  const auto small = wedge_basis(N - 1, n);
  CVec out = CVec::Zero(static_cast<Eigen::Index>(small.size()));
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (big[i].back() == N - 1) continue;
    out(wedge_index(big[i], N - 1)) = w(static_cast<Eigen::Index>(i));
  }
  return out;
}

}  // namespace

cplx gamma_fn(cplx z) {
  if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
    throw std::domain_error("gamma_fn: pole at " + std::to_string(z.real()));
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma_fn(1.0 - z));
  static const double p[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  cplx x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

double kbessel_tilde(double alpha, double x, bool* underflow) {
  if (!(x > 0.0)) throw std::domain_error("kbessel_tilde: x must be positive");
  const double k = boost::math::cyl_bessel_k(alpha, x);
  if (underflow) *underflow = (k == 0.0);
  if (k == 0.0) return 0.0;
  return std::exp(alpha * std::log(x / 2.0) + std::log(k));
}

double riesz_d(double alpha, int m) {
  const double a = (m - alpha) / 2.0;
  const double b = alpha / 2.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
    throw std::domain_error("riesz_d: Gamma pole at alpha = " + std::to_string(alpha) + ", m = " + std::to_string(m));
  return std::pow(2.0, m / 2.0 - alpha) * std::tgamma(a) / std::tgamma(b);
}

std::vector<std::vector<int>> wedge_basis(int N, int k) {
  if (k < 0 || k > N) throw std::invalid_argument("wedge_basis: need 0 <= k <= N");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  combos(N, k, 0, cur, out);
  return out;
}

int wedge_index(const std::vector<int>& subset, int N) {
  const auto basis = wedge_basis(N, static_cast<int>(subset.size()));
  const auto it = std::lower_bound(basis.begin(), basis.end(), subset);
  if (it == basis.end() || *it != subset) throw std::invalid_argument("wedge_index: not a sorted subset");
  return static_cast<int>(it - basis.begin());
}

RMat wedge_power(const RMat& A, int k) {
  const int N = static_cast<int>(A.rows());
  const auto basis = wedge_basis(N, k);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  RMat W(dim, dim);
  if (k == 0) return RMat::Ones(1, 1);
  RMat sub(k, k);
  for (Eigen::Index I = 0; I < dim; ++I)
    for (Eigen::Index J = 0; J < dim; ++J) {
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub(a, b) = A(basis[I][a], basis[J][b]);
      W(I, J) = sub.determinant();
    }
  return W;
}

CVec wedge(const std::vector<CVec>& ws) {
  if (ws.empty()) return CVec::Ones(1);
  const int N = static_cast<int>(ws[0].size());
  const int k = static_cast<int>(ws.size());
  const auto basis = wedge_basis(N, k);
  CVec out(static_cast<Eigen::Index>(basis.size()));
  Eigen::MatrixXcd sub(k, k);
  for (std::size_t I = 0; I < basis.size(); ++I) {
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) sub(a, b) = ws[b](basis[I][a]);
    out(static_cast<Eigen::Index>(I)) = sub.determinant();
  }
  return out;
}

RMat reflection(const RVec& x) {
  const double nn = x.squaredNorm();
  if (!(nn > 0.0)) throw std::invalid_argument("reflection: x must be nonzero");
  return RMat::Identity(x.size(), x.size()) - 2.0 * x * x.transpose() / nn;
}

RMat reflection_matrix(const RVec& x, int j) {
  if (j < 0 || j > x.size()) throw std::invalid_argument("reflection_matrix: need 0 <= j <= m");
  return wedge_power(reflection(x), j);
}

void validate(const KernelParams& p) {
  if (p.m < 2) throw std::invalid_argument("kernel params: m must exceed 1");
  if (p.j < 0 || p.j > p.m / 2) throw std::invalid_argument("kernel params: j must lie in 0..floor(m/2)");
}

RMat ft_knapp_stein_kernel(const KernelParams& p, const RVec& xi) {
  validate(p);
  if (xi.size() != p.m) throw std::invalid_argument("ft_knapp_stein_kernel: xi must lie in R^m");
  const double r = xi.norm();
  if (!(r > 0.0)) throw std::invalid_argument("ft_knapp_stein_kernel: xi must be nonzero");
  const double half_m = p.m / 2.0;
  const double c = std::pow(2.0, 2.0 * p.nu - half_m) * std::pow(r, -2.0 * p.nu) * rgamma(1.0 + half_m - p.nu);
  const RMat sigma = reflection_matrix(xi, p.j);
  return c * ((half_m - p.j) * RMat::Identity(sigma.rows(), sigma.cols()) - p.nu * sigma);
}

double ft_poisson(double lambda, int m, double xi_norm) {
  if (!(xi_norm > 0.0)) throw std::invalid_argument("ft_poisson: |xi| must be positive");
  const double rg = rgamma(-lambda);
  if (rg == 0.0) return 0.0;
  return std::pow(2.0, 1.0 - m / 2.0) * rg * kbessel_tilde(-lambda - m / 2.0, xi_norm);
}

double anti_trivialization_weight(double nu, int m, const RVec& xi) {
  const double r = xi.norm();
  if (!(r > 0.0)) throw std::invalid_argument("anti_trivialization_weight: xi must be nonzero");
  return std::pow(r, (2.0 * nu + m) / 2.0);
}

CVec f_lowest_ktype(const RVec& x, int n) {
  if (n < 2) throw std::invalid_argument("f_lowest_ktype: n must be at least 2");
  if (x.size() != 2 * n - 1) throw std::invalid_argument("f_lowest_ktype: x must lie in R^{2n-1}");
  const int N = 2 * n;
  std::vector<double> xx(N + 1, 0.0);  // 1-based, x_{2n} = 1
  for (int i = 1; i < N; ++i) xx[i] = x(i - 1);
  xx[N] = 1.0;
  const double yy = 1.0 + x.squaredNorm();
  auto z = [&](int k) { return cplx(xx[2 * k - 1], xx[2 * k]); };
  auto vs_without = [&](std::initializer_list<int> skip) {
    std::vector<CVec> out;
    for (int k = 1; k <= n; ++k)
      if (std::find(skip.begin(), skip.end(), k) == skip.end()) out.push_back(v_vec(N, k));
    return out;
  };
  std::vector<CVec> all = vs_without({});
  CVec w = wedge(all);
  for (int k = 1; k <= n; ++k) {
    CVec Yk = CVec::Zero(N);
    Yk(2 * k - 2) = xx[2 * k - 1];
    Yk(2 * k - 1) = xx[2 * k];
    std::vector<CVec> ws{Yk};
    for (const CVec& v : vs_without({k})) ws.push_back(v);
    const double sgn = k % 2 == 0 ? 1.0 : -1.0;
    w += sgn * 2.0 * z(k) / yy * wedge(ws);
  }
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= n; ++j) {
      if (j == k) continue;
      const int e = j > k ? j - k : j - k - 1;
      const double sgn = (e % 2 == 0) ? 1.0 : -1.0;
      std::vector<CVec> ws{basis_vec(N, 2 * j - 2), basis_vec(N, 2 * j - 1)};
      for (const CVec& v : vs_without({std::min(j, k), std::max(j, k)})) ws.push_back(v);
      w += sgn * 2.0 * kI * z(k) * z(j) / yy * wedge(ws);
    }
  return project_last(w, n) * std::pow(yy, -n);
}

CVec f_lowest_ktype_matrix(const RVec& x, int n) {
  if (n < 2) throw std::invalid_argument("f_lowest_ktype_matrix: n must be at least 2");
  if (x.size() != 2 * n - 1) throw std::invalid_argument("f_lowest_ktype_matrix: x must lie in R^{2n-1}");
  const int N = 2 * n;
  RVec y(N);
  y << x, 1.0;
  const RMat r = reflection(y);
  std::vector<CVec> ws;
  for (int k = 1; k <= n; ++k) ws.push_back(r.cast<cplx>() * v_vec(N, k));
  return project_last(wedge(ws), n) * std::pow(y.squaredNorm(), -n);
}

CVec lowest_ktype_u(int n) {
  const int N = 2 * n - 1;
  std::vector<CVec> ws;
  for (int k = 1; k < n; ++k) ws.push_back(v_vec(N, k));
  ws.push_back(basis_vec(N, N - 1));
  return wedge(ws);
}

CVec ft_lowest_ktype(const RVec& xi, int n) {
  if (n < 2) throw std::invalid_argument("ft_lowest_ktype: n must be at least 2");
  const int N = 2 * n - 1;
  if (xi.size() != N) throw std::invalid_argument("ft_lowest_ktype: xi must lie in R^{2n-1}");
  const double r = xi.norm();
  if (!(r > 0.0)) throw std::invalid_argument("ft_lowest_ktype: xi must be nonzero");
  const CVec u = lowest_ktype_u(n);
  const CVec ru = wedge_power(reflection(xi), n).cast<cplx>() * u;
  std::vector<CVec> ws;
  for (int k = 1; k < n; ++k) ws.push_back(v_vec(N, k));
  ws.push_back(xi.cast<cplx>());
  const CVec upx = wedge(ws);
  const double C = std::pow(2.0, -0.5 - n) * std::sqrt(kPi) / std::tgamma(n + 1.0);
  return C * std::exp(-r) * (r * (u - ru) + 2.0 * upx);
}

double oscillatory_integral(const std::function<double(double)>& f, double omega, double phase) {
  if (!(omega > 0.0)) throw std::invalid_argument("oscillatory_integral: omega must be positive");
  const double half = kPi / omega;
  auto node = [&](long k) { return (k * kPi + phase) / omega; };
  long k0 = static_cast<long>(std::ceil((std::max(12.0, 6.0 * half) * omega - phase) / kPi));
  double start = node(k0);
  double sum = 0.0;
  const int head_panels = std::max(1, static_cast<int>(std::ceil(start / std::min(half, 1.0))));
  const double step = start / head_panels;
  for (int i = 0; i < head_panels; ++i) sum += gk_integral(f, i * step, (i + 1) * step);
  const int tail = 48;
  std::vector<double> partial{sum};
  for (int i = 0; i < tail; ++i) {
    sum += gk_integral(f, node(k0 + i), node(k0 + i + 1));
    partial.push_back(sum);
  }
  while (partial.size() > 1) {
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    partial.pop_back();
  }
  return partial[0];
}

double radial_ft_quadrature(const std::function<double(double)>& g, int m, double rho) {
  if (m < 1) throw std::invalid_argument("radial_ft_quadrature: m must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("radial_ft_quadrature: rho must be positive");
  if (m == 1) {
    const double I = oscillatory_integral([&](double r) { return g(r) * std::cos(rho * r); }, rho, -kPi / 2.0);
    return std::sqrt(2.0 / kPi) * I;
  }
  const double nu = m / 2.0 - 1.0;
  const double I = oscillatory_integral(
      [&](double r) { return r == 0.0 ? 0.0 : g(r) * boost::math::cyl_bessel_j(nu, rho * r) * std::pow(r, m / 2.0); }, rho,
      nu * kPi / 2.0 - kPi / 4.0);
  return std::pow(rho, 1.0 - m / 2.0) * I;
}

cplx f_formula_closed(int which, int n, const RVec& xi, int j, int k) {
  const double r = xi.norm();
  if (!(r > 0.0)) throw std::invalid_argument("f_formula_closed: xi must be nonzero");
  const double C1 = std::pow(2.0, 0.5 - n) * std::sqrt(kPi) / std::tgamma(static_cast<double>(n));
  const double C2 = std::pow(2.0, -0.5 - n) * std::sqrt(kPi) / std::tgamma(n + 1.0);
  const double e = std::exp(-r);
  switch (which) {
    case 1: return C1 * e;
    case 2: return C2 * (1.0 + r) * e;
    case 3: return kI * C2 * xi(j) * e;
    case 4: return C2 * (1.0 - xi(j) * xi(j) / r) * e;
    case 5:
      if (j == k) throw std::invalid_argument("f_formula_closed: formula 5 needs j != k");
      return -C2 * xi(j) * xi(k) / r * e;
  }
  throw std::invalid_argument("f_formula_closed: formula index must be 1..5");
}

cplx f_formula_quadrature(int which, int n, const RVec& xi, int j, int k) {
  if (2 * n - 1 != 3 || xi.size() != 3) throw std::invalid_argument("f_formula_quadrature: implemented for n = 2 (m = 3)");
  const double rho = xi.norm();
  if (!(rho > 0.0)) throw std::invalid_argument("f_formula_quadrature: xi must be nonzero");
  const RVec hat = xi / rho;
  using boost::math::sph_bessel;
  auto g1 = [n](double r) { return std::pow(1.0 + r * r, -n); };
  auto g2 = [n](double r) { return std::pow(1.0 + r * r, -(n + 1)); };
  const double norm = 4.0 * kPi * std::pow(2.0 * kPi, -1.5);
  auto radial0 = [&](auto g) {
    return oscillatory_integral([&](double r) { return g(r) * r * r * sph_bessel(0, rho * r); }, rho, 0.0);
  };
  switch (which) {
    case 1: return norm * radial0(g1);
    case 2: return norm * radial0(g2);
    case 3: {
      const double I = oscillatory_integral([&](double r) { return g2(r) * r * r * r * sph_bessel(1, rho * r); }, rho, kPi / 2.0);
      return kI * hat(j) * norm * I;
    }
    case 4:
    case 5: {
      if (which == 5 && j == k) throw std::invalid_argument("f_formula_quadrature: formula 5 needs j != k");
      const int kk = which == 4 ? j : k;
      const double Ia = oscillatory_integral(
          [&](double r) { return r == 0.0 ? 0.0 : g2(r) * r * r * r * sph_bessel(1, rho * r) / rho; }, rho, kPi / 2.0);
      const double Ib = oscillatory_integral([&](double r) { return g2(r) * std::pow(r, 4) * sph_bessel(2, rho * r); }, rho, 0.0);
      const double delta = j == kk ? 1.0 : 0.0;
      return norm * (delta * Ia - hat(j) * hat(kk) * Ib);
    }
  }
  throw std::invalid_argument("f_formula_quadrature: formula index must be 1..5");
}

double riesz_pairing_residual(double alpha, int m, double s) {
  const double d = riesz_d(alpha, m);
  boost::math::quadrature::exp_sinh<double> integrator;
  const double lhs = integrator.integrate(
      [&](double r) { return std::pow(r, m - 1 - alpha) * std::pow(2.0 * s, -m / 2.0) * std::exp(-r * r / (4.0 * s)); });
  const double rhs = d * integrator.integrate([&](double r) { return std::pow(r, alpha - 1) * std::exp(-s * r * r); });
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double grid_coord(int idx, int side, double spacing) { return (idx < side / 2 ? idx : idx - side) * spacing; }

GridFn dft3(const GridFn& f) {
  const int N = f.side;
  if (N < 2 || (N & (N - 1)) != 0) throw std::invalid_argument("dft3: side must be a power of two");
  const std::size_t vol = static_cast<std::size_t>(N) * N * N;
  if (f.values.size() != vol * f.fiber) throw std::invalid_argument("dft3: value array has the wrong size");
  GridFn out{N, 2.0 * kPi / (N * f.spacing), f.fiber, std::vector<cplx>(f.values.size())};
  const double scale = std::pow(2.0 * kPi, -1.5) * std::pow(f.spacing, 3);
  static std::mutex planner;
  for (int c = 0; c < f.fiber; ++c) {
    auto* in = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * vol));
    auto* res = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * vol));
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(planner);
      plan = fftw_plan_dft_3d(N, N, N, in, res, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < vol; ++i) {
      in[i][0] = f.values[c * vol + i].real();
      in[i][1] = f.values[c * vol + i].imag();
    }
    fftw_execute(plan);
    for (std::size_t i = 0; i < vol; ++i) out.values[c * vol + i] = scale * cplx(res[i][0], res[i][1]);
    {
      std::lock_guard<std::mutex> lock(planner);
      fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(res);
  }
  return out;
}

double verify_convolution_identity(const KernelParams& p, const GridSpec& grid) {
  validate(p);
  if (p.m != 3) throw std::invalid_argument("verify_convolution_identity: implemented for m = 3");
  if (!(p.nu > 0.0 && p.nu < p.m / 2.0)) throw std::invalid_argument("verify_convolution_identity: need 0 < nu < m/2");
  const int N = grid.side;
  const double h = 2.0 * grid.half_width / N;

  // Test function phi = sum c_k exp(-|x|^2 / (2 s_k^2)) with F phi = O(|xi|^6) at 0.
  const std::vector<double> sig{0.9, 1.2, 1.6, 2.1};
  Eigen::Matrix3d Am;
  Eigen::Vector3d bm;
  for (int p2 = 0; p2 < 3; ++p2) {
    for (int k = 1; k < 4; ++k) Am(p2, k - 1) = std::pow(sig[k], 3 + 2 * p2);
    bm(p2) = -std::pow(sig[0], 3 + 2 * p2);
  }
  const Eigen::Vector3d sol = Am.colPivHouseholderQr().solve(bm);
  const std::vector<double> c{1.0, sol(0), sol(1), sol(2)};
  auto ft_phi = [&](double r) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += c[k] * std::pow(sig[k], 3) * std::exp(-0.5 * sig[k] * sig[k] * r * r);
    return s;
  };
  double peak = 0.0;
  for (int i = 1; i <= 200; ++i) peak = std::max(peak, std::abs(ft_phi(0.05 * i)));
  if (std::abs(ft_phi(kPi / h)) > 1e-10 * peak)
    throw std::invalid_argument("verify_convolution_identity: grid too coarse for the test function");

  const int fiber = p.j == 0 ? 1 : 3;
  RVec w(3);
  w << 1.0, 0.5, -0.25;

  // Radial profiles of T*(phi w) = P(r) w + Qt(r) y (y.w), tabulated on r^2 = h^2 q.
  const double s = p.m / 2.0 - p.nu;
  const double gnu = std::tgamma(p.nu);
  const int half = N / 2;
  const int qmax = 3 * half * half;
  std::vector<double> P(qmax + 1, 0.0), Qt(qmax + 1, 0.0);
  const double du = 0.1;
  const int nu_pts = static_cast<int>(180.0 / du);
  parallel_for(static_cast<std::size_t>(qmax + 1), [&](std::size_t q) {
    const double r2 = h * h * static_cast<double>(q);
    double i1 = 0.0, i2 = 0.0, i3 = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double inv2s2 = 1.0 / (2.0 * sig[k] * sig[k]);
      double a1 = 0.0, a2 = 0.0, a3 = 0.0;
      for (int u = 0; u <= nu_pts; ++u) {
        const double uu = -90.0 + u * du;
        const double t = std::exp(uu);
        const double a = t + inv2s2;
        const double D = 1.0 + 2.0 * t * sig[k] * sig[k];
        const double A = std::pow(kPi / a, 1.5) * std::exp(-t * r2 / D);
        const double ts = std::exp(s * uu);
        a1 += ts * A;
        a2 += ts * t * A / (2.0 * a);
        a3 += ts * t * A / (D * D);
      }
      i1 += c[k] * a1 * du;
      i2 += c[k] * a2 * du;
      i3 += c[k] * a3 * du;
    }
    if (p.j == 0) {
      P[q] = i1 / (gnu * std::tgamma(s));
    } else {
      P[q] = (i1 / std::tgamma(s) - 2.0 * i2 / std::tgamma(s + 1.0)) / gnu;
      Qt[q] = -2.0 * i3 / (gnu * std::tgamma(s + 1.0));
    }
  });

  const std::size_t vol = static_cast<std::size_t>(N) * N * N;
  GridFn f{N, h, fiber, std::vector<cplx>(vol * fiber)};
  GridFn tf{N, h, fiber, std::vector<cplx>(vol * fiber)};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        const std::size_t idx = (static_cast<std::size_t>(i) * N + j) * N + k;
        const int ii = i < half ? i : i - N, jj = j < half ? j : j - N, kk = k < half ? k : k - N;
        const int q = ii * ii + jj * jj + kk * kk;
        const double r2 = h * h * q;
        double phi = 0.0;
        for (int m = 0; m < 4; ++m) phi += c[m] * std::exp(-r2 / (2.0 * sig[m] * sig[m]));
        if (fiber == 1) {
          f.values[idx] = phi;
          tf.values[idx] = P[q];
        } else {
          const RVec y = RVec::Map(std::vector<double>{ii * h, jj * h, kk * h}.data(), 3);
          const double yw = y.dot(w);
          for (int cc = 0; cc < 3; ++cc) {
            f.values[cc * vol + idx] = phi * w(cc);
            tf.values[cc * vol + idx] = P[q] * w(cc) + Qt[q] * y(cc) * yw;
          }
        }
      }
  const GridFn Ff = dft3(f);
  const GridFn Ftf = dft3(tf);
  const double scale = std::pow(2.0 * kPi, p.m / 2.0);
  double num = 0.0, den = 0.0;
  for (std::size_t idx = 1; idx < vol; ++idx) {
    const int i = static_cast<int>(idx / (static_cast<std::size_t>(N) * N));
    const int j = static_cast<int>((idx / N) % N);
    const int k = static_cast<int>(idx % N);
    RVec xi(3);
    xi << grid_coord(i, N, Ff.spacing), grid_coord(j, N, Ff.spacing), grid_coord(k, N, Ff.spacing);
    const RMat K = ft_knapp_stein_kernel(p, xi);
    CVec fv(fiber), tv(fiber);
    for (int cc = 0; cc < fiber; ++cc) {
      fv(cc) = Ff.values[cc * vol + idx];
      tv(cc) = Ftf.values[cc * vol + idx];
    }
    const CVec pred = scale * K.cast<cplx>() * fv;
    num += (tv - pred).squaredNorm();
    den += tv.squaredNorm();
  }
  return std::sqrt(num / den);
}

double verify_lowest_ktype_dft(int n, const GridSpec& grid) {
  if (n != 2) throw std::invalid_argument("verify_lowest_ktype_dft: implemented for n = 2 (3-D grid)");
  const int N = grid.side;
  const double h = 2.0 * grid.half_width / N;
  const int fiber = static_cast<int>(wedge_basis(2 * n - 1, n).size());
  const std::size_t vol = static_cast<std::size_t>(N) * N * N;
  GridFn f{N, h, fiber, std::vector<cplx>(vol * fiber)};
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) {
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        const std::size_t idx = (i * N + j) * N + k;
        RVec x(3);
        x << grid_coord(static_cast<int>(i), N, h), grid_coord(j, N, h), grid_coord(k, N, h);
        const CVec v = f_lowest_ktype_matrix(x, n);
        for (int c = 0; c < fiber; ++c) f.values[c * vol + idx] = v(c);
      }
  });
  const GridFn F = dft3(f);
  double num = 0.0, den = 0.0;
  for (std::size_t idx = 1; idx < vol; ++idx) {
    const int i = static_cast<int>(idx / (static_cast<std::size_t>(N) * N));
    const int j = static_cast<int>((idx / N) % N);
    const int k = static_cast<int>(idx % N);
    RVec xi(3);
    xi << grid_coord(i, N, F.spacing), grid_coord(j, N, F.spacing), grid_coord(k, N, F.spacing);
    const CVec ref = ft_lowest_ktype(xi, n);
    for (int c = 0; c < fiber; ++c) {
      num += std::norm(F.values[c * vol + idx] - ref(c));
      den += std::norm(ref(c));
    }
  }
  return std::sqrt(num / den);
}

}  // namespace spinor::fourier
