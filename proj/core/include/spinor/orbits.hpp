#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "spinor/matrix_kit.hpp"
#include "spinor/porbit.hpp"

namespace spinor {

// Construction family of the orbit representative f.
//   Elliptic:      t_a, a = (a_1, ..., a_n), m odd
//   NonElliptic:   t'_a, a = (a_1, ..., a_{n-1}; a_n); for even m this is the only semisimple family
//   NonSemisimple: s_a with sign * U, a = (a_1, ..., a_{n-1}), m odd
//   Zero:          f = 0
enum class OrbitFamily { Elliptic, NonElliptic, NonSemisimple, Zero };

enum class OrbitKind { EllipticRegular, EllipticSingular, NonElliptic, NonEllipticSingular, NonSemisimple, Zero };

std::string to_string(OrbitFamily f);
std::string to_string(OrbitKind k);

struct OrbitParam {
  Group g{3};
  OrbitFamily family = OrbitFamily::Zero;
  Vec a;
  int ns_sign = 1;
  OrbitKind kind = OrbitKind::Zero;
  // Sizes of the runs of equal node values (see hb_nodes).
  std::vector<int> blocks;
};

// Validates ordering and derives kind and blocks. A non-elliptic request
// with a_n = 0 for odd m is the elliptic orbit of (a_1, ..., a_{n-1}, 0).
OrbitParam make_orbit(const Group& g, OrbitFamily family, const Vec& a, int ns_sign = 1);

// b: Elliptic and NonSemisimple use (b_1, ..., b_n), odd NonElliptic uses
// (b_1, ..., b_n) with sum b_i^2 = 1, even NonElliptic uses (b_1, ..., b_{n-1}).
struct BPoint {
  Vec b;
};

void validate_b(const OrbitParam& o, const BPoint& b, double tol = 1e-9);
// Random point of the canonical parameter set (B_l / B'_l for singular orbits).
BPoint sample_b(const OrbitParam& o, std::mt19937_64& rng);

// alpha_b with nbar_b = exp(Xbar_{alpha_b}).
Vec alpha_of(const OrbitParam& o, const BPoint& b);
// The matrix t_a, t'_a or s_a.
Mat f_matrix(const OrbitParam& o);

PStdForm representative_point(const OrbitParam& o, const BPoint& b);

// Nodal description: h_b(x) = sum_k d_k prod_{j != k} (x - A_k), sum d_k = 1.
std::vector<double> hb_nodes(const OrbitParam& o);
std::vector<double> hb_weights(const OrbitParam& o, const BPoint& b);

// Monic polynomial, coefficients in increasing degree.
struct Polynomial {
  std::vector<double> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double x) const;
};
Polynomial hb_poly(const OrbitParam& o, const BPoint& b);
// Roots of h_b, descending. Forced roots at repeated or weightless nodes are exact.
std::vector<double> hb_roots(const OrbitParam& o, const BPoint& b);

// Closed-form Pf(Z_b); zero for even m where Z_b has odd size.
double pfaffian_closed_form(const OrbitParam& o, const BPoint& b);

POrbitDescriptor moment_image_point(const OrbitParam& o, const BPoint& b, double zero_tol = 1e-9);
// Full numeric route: Ad(nbar_b) f -> project_p -> canonicalize -> invariants.
POrbitDescriptor pipeline_image_point(const OrbitParam& o, const BPoint& b, double zero_tol = 1e-9);

using MomentImage = BasicMomentImage<double>;
MomentImage moment_image(const OrbitParam& o);

// x nonnegative except possibly the last entry for odd NonElliptic orbits,
// whose sign is sgn b_n.
BPoint b_from_x(const OrbitParam& o, const std::vector<double>& x, double tol = 1e-10);

struct StabilizerType {
  std::string point;
  std::string image;
  int r = 0;
  int s = 0;
};
StabilizerType stabilizer_type(const OrbitParam& o, const BPoint& b, double double_zero_tol = 1e-7);

bool reduced_space_singleton(const OrbitParam& o, int samples, std::uint64_t seed = 1);

namespace detail {
template <class T>
T absv(T v) {
  return v < T(0) ? -v : v;
}
template <class T>
int signv(T v) {
  return (T(0) < v) - (v < T(0));
}
}  // namespace detail

// Moment-map image for a parameter vector over an ordered scalar type
// (double or HalfInt), following the family conventions of OrbitParam.
template <class T>
BasicMomentImage<T> moment_image_of(OrbitFamily family, const std::vector<T>& a, const Group& g, int ns_sign = 1) {
  using detail::absv;
  BasicMomentImage<T> im;
  const int n = g.n();
  auto zero_image = [&] {
    im.depth1 = false;
    im.pf_rule = PfRule::Zero;
    im.depth0_labels = {"0"};
    return im;
  };
  auto all_zero = [&] {
    for (const T& v : a)
      if (!(v == T(0))) return false;
    return true;
  };
  // Chain slots [a_{i+1}, a_i] for i = 1..p-1 (0-based pairs), then zeros up to `count`.
  auto chain = [&](int p, int count) {
    for (int i = 0; i + 1 < p && i < count; ++i) im.slots.push_back({absv(a[i + 1]), a[i]});
    while (static_cast<int>(im.slots.size()) < count) im.slots.push_back({T(0), T(0)});
  };
  switch (family) {
    case OrbitFamily::Zero:
      return zero_image();
    case OrbitFamily::Elliptic: {
      if (all_zero()) return zero_image();
      if (!(a[n - 1] == T(0))) {
        chain(n, n - 1);
        im.pf_rule = a[n - 1] > T(0) ? PfRule::Plus : PfRule::Minus;
      } else {
        int p = n;
        while (p > 0 && a[p - 1] == T(0)) --p;
        chain(p, n - 1);
        im.pf_rule = PfRule::Zero;
      }
      return im;
    }
    case OrbitFamily::NonElliptic: {
      if (all_zero()) return zero_image();
      if (g.odd()) {
        chain(n - 1, n - 2);
        im.slots.push_back({T(0), a[n - 2]});
        im.pf_rule = a[n - 2] > T(0) ? PfRule::Both : PfRule::Zero;
        im.depth0_labels = {"P.f", "P.g'inf.f"};
      } else {
        const int count = n - 2;
        if (a[n - 1] == T(0)) {
          int p = n - 1;
          while (p > 0 && a[p - 1] == T(0)) --p;
          chain(p, count);
        } else {
          chain(n - 1, count);
        }
        im.pf_rule = PfRule::Zero;
        if (a[n - 2] == T(0) && a[n - 1] == T(0)) im.depth0_labels = {"P.q(f)"};
        else im.depth0_labels = {"P.q(f)", "P.q(g'inf.f)"};
      }
      return im;
    }
    case OrbitFamily::NonSemisimple: {
      int j = n - 1;
      while (j > 0 && a[j - 1] == T(0)) --j;
      chain(j, j > 0 ? j - 1 : 0);
      if (j > 0) im.slots.push_back({T(0), a[j - 1], true, false});
      while (static_cast<int>(im.slots.size()) < n - 1) im.slots.push_back({T(0), T(0)});
      if (j == n - 1) im.pf_rule = ns_sign > 0 ? PfRule::Plus : PfRule::Minus;
      else im.pf_rule = PfRule::Zero;
      im.depth0_labels = {"P.g'inf.f"};
      return im;
    }
  }
  return im;
}

}  // namespace spinor
