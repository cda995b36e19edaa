#include "spinor/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spinor {

std::string to_string(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::Elliptic: return "elliptic";
    case OrbitFamily::NonElliptic: return "non-elliptic";
    case OrbitFamily::NonSemisimple: return "non-semisimple";
    case OrbitFamily::Zero: return "zero";
  }
  return "?";
}

std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::EllipticRegular: return "EllipticRegular";
    case OrbitKind::EllipticSingular: return "EllipticSingular";
    case OrbitKind::NonElliptic: return "NonElliptic";
    case OrbitKind::NonEllipticSingular: return "NonEllipticSingular";
    case OrbitKind::NonSemisimple: return "NonSemisimple";
    case OrbitKind::Zero: return "Zero";
  }
  return "?";
}

namespace {

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  os << ")";
  return os.str();
}

void require_desc(const Vec& a, int count, const std::string& what) {
  for (int i = 0; i + 1 < count; ++i)
    if (a(i) < a(i + 1)) throw std::invalid_argument(what + ": entries must be non-increasing, got " + vec_str(a));
}

std::vector<int> runs(const std::vector<double>& nodes) {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && nodes[i] == nodes[i - 1]) ++out.back();
    else out.push_back(1);
  }
  return out;
}

// Node indices whose weight can be nonzero on the canonical parameter set:
// the last index of each run of equal nodes, provided the node weight is not
// identically zero.
std::vector<bool> free_nodes(const OrbitParam& o) {
  const std::vector<double> nodes = hb_nodes(o);
  const int N = static_cast<int>(nodes.size());
  const int n = o.g.n();
  std::vector<bool> free(N, false);
  int start = 0;
  for (int len : o.blocks) {
    const int end = start + len - 1;
    bool live = true;
    switch (o.family) {
      case OrbitFamily::Elliptic:
        live = o.a(end) != 0.0;
        break;
      case OrbitFamily::NonSemisimple:
        live = end == n - 1 || o.a(end) != 0.0;
        break;
      case OrbitFamily::NonElliptic:
        if (o.g.odd()) live = true;
        else live = o.a(end) != 0.0 || o.a(n - 1) != 0.0;
        break;
      case OrbitFamily::Zero:
        live = false;
        break;
    }
    free[end] = live;
    start += len;
  }
  return free;
}

// Index ranges: E, N and S have n entries of b, even N has n-1.
int b_size(const OrbitParam& o) {
  if (o.family == OrbitFamily::Zero) return 0;
  if (o.family == OrbitFamily::NonElliptic && !o.g.odd()) return o.g.n() - 1;
  return o.g.n();
}

double sq(double v) { return v * v; }

double beta_norm2(const OrbitParam& o, const Vec& b) {
  const int n = o.g.n();
  const Vec& a = o.a;
  double s = 0.0;
  switch (o.family) {
    case OrbitFamily::Elliptic:
      for (int i = 0; i < n; ++i) s += sq(a(i) * b(i));
      break;
    case OrbitFamily::NonElliptic:
      if (o.g.odd()) {
        for (int i = 0; i + 1 < n; ++i) s += sq(b(i)) * (sq(a(n - 1)) + sq(a(i)));
        s += sq(a(n - 1) * b(n - 1));
      } else {
        for (int i = 0; i + 1 < n; ++i) s += sq(b(i)) * (sq(a(n - 1)) + sq(a(i)));
      }
      break;
    case OrbitFamily::NonSemisimple:
      for (int i = 0; i + 1 < n; ++i) s += sq(a(i) * b(i));
      s += 1.0;
      break;
    case OrbitFamily::Zero:
      break;
  }
  return s;
}

// Real root of the secular equation sum_j w_j / (x - v_j) = 0 in the gap
// (lo_node, hi_node), computed as lo_node + t for accuracy near lo_node.
double secular_root(const std::vector<double>& v, const std::vector<double>& w, int upper, int lower, double guess) {
  const double base = v[lower];
  const double gap = v[upper] - base;
  std::vector<double> delta(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) delta[j] = base - v[j];
  auto eval = [&](double t, double& f, double& df) {
    f = 0.0;
    df = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double d = t + delta[j];
      f += w[j] / d;
      df -= w[j] / (d * d);
    }
  };
  double lo = 0.0, hi = gap;
  double t = guess - base;
  if (!(t > lo && t < hi)) t = 0.5 * gap;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 400; ++it) {
    double f, df;
    eval(t, f, df);
    if (f == 0.0) return base + t;
    if (f > 0.0) lo = t;
    else hi = t;
    if (hi - lo <= 2.0 * eps * std::max(t, std::numeric_limits<double>::min())) break;
    double next = t - f / df;
    if (!(next > lo && next < hi)) next = (lo > 0.0 && hi > 4.0 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (std::abs(next - t) <= eps * next) {
      t = next;
      break;
    }
    t = next;
  }
  return base + t;
}

std::vector<double> poly_from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

// Nodal-basis expansion sum_k d_k prod_{j != k} (x - A_j).
std::vector<double> nodal_expand(const std::vector<double>& nodes, const std::vector<double>& d) {
  const std::size_t N = nodes.size();
  std::vector<double> out(N, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    if (d[k] == 0.0) continue;
    std::vector<double> others;
    for (std::size_t j = 0; j < N; ++j)
      if (j != k) others.push_back(nodes[j]);
    const std::vector<double> p = poly_from_roots(others);
    for (std::size_t i = 0; i < p.size(); ++i) out[i] += d[k] * p[i];
  }
  return out;
}

std::vector<double> companion_roots(const std::vector<double>& monic) {
  const int deg = static_cast<int>(monic.size()) - 1;
  std::vector<double> out;
  if (deg <= 0) return out;
  Mat C = Mat::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -monic[i] / monic[deg];
  Eigen::EigenSolver<Mat> es(C, false);
  for (int i = 0; i < deg; ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

struct NodeGroup {
  double value = 0.0;
  int first = 0;
  int count = 0;
  bool free = false;
};

std::vector<NodeGroup> node_groups(const OrbitParam& o) {
  const std::vector<double> nodes = hb_nodes(o);
  const std::vector<bool> free = free_nodes(o);
  std::vector<NodeGroup> out;
  int start = 0;
  for (int len : o.blocks) {
    out.push_back({nodes[start], start, len, free[start + len - 1]});
    start += len;
  }
  return out;
}

std::string power(const std::string& base, int k) {
  if (k == 0) return base + "^0";
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

}  // namespace

OrbitParam make_orbit(const Group& g, OrbitFamily family, const Vec& a_in, int ns_sign) {
  const int n = g.n();
  OrbitParam o;
  o.g = g;
  o.family = family;
  o.a = a_in;
  o.ns_sign = ns_sign;
  const std::string fam = to_string(family);
  switch (family) {
    case OrbitFamily::Zero:
      o.a = Vec();
      o.kind = OrbitKind::Zero;
      return o;
    case OrbitFamily::Elliptic:
      if (!g.odd()) throw std::invalid_argument("elliptic orbits t_a need odd m; use the non-elliptic family for even m");
      if (o.a.size() != n) throw std::invalid_argument("elliptic orbit needs n = " + std::to_string(n) + " entries");
      require_desc(o.a, n - 1, fam);
      if (n >= 2 && o.a(n - 2) < std::abs(o.a(n - 1)))
        throw std::invalid_argument("elliptic orbit needs a_{n-1} >= |a_n|, got " + vec_str(o.a));
      break;
    case OrbitFamily::NonElliptic:
      if (o.a.size() != n) throw std::invalid_argument("non-elliptic orbit needs n = " + std::to_string(n) + " entries");
      if (o.a(n - 1) < 0) throw std::invalid_argument("non-elliptic orbit needs a_n >= 0");
      if (g.odd()) {
        require_desc(o.a, n - 1, fam);
        if (o.a(n - 2) < 0) throw std::invalid_argument("non-elliptic orbit needs a_{n-1} >= 0 for odd m");
        if (o.a(n - 1) == 0.0) return make_orbit(g, OrbitFamily::Elliptic, o.a);
      } else {
        require_desc(o.a, n - 2, fam);
        if (n >= 3 && o.a(n - 3) < std::abs(o.a(n - 2)))
          throw std::invalid_argument("non-elliptic orbit needs a_{n-2} >= |a_{n-1}| for even m, got " + vec_str(o.a));
      }
      break;
    case OrbitFamily::NonSemisimple:
      if (!g.odd()) throw std::invalid_argument("non-semisimple orbits s_a are implemented for odd m only");
      if (o.a.size() != n - 1) throw std::invalid_argument("non-semisimple orbit needs n-1 = " + std::to_string(n - 1) + " entries");
      require_desc(o.a, n - 1, fam);
      if (n >= 2 && o.a(n - 2) < 0) throw std::invalid_argument("non-semisimple orbit needs a_{n-1} >= 0");
      if (ns_sign != 1 && ns_sign != -1) throw std::invalid_argument("non-semisimple sign must be +1 or -1");
      break;
  }
  if (o.a.cwiseAbs().maxCoeff() == 0.0 && family != OrbitFamily::NonSemisimple) {
    o.family = OrbitFamily::Zero;
    o.a = Vec();
    o.kind = OrbitKind::Zero;
    return o;
  }
  o.blocks = runs(hb_nodes(o));
  const bool regular = std::all_of(o.blocks.begin(), o.blocks.end(), [](int k) { return k == 1; });
  switch (o.family) {
    case OrbitFamily::Elliptic:
      o.kind = regular && o.a(n - 1) != 0.0 ? OrbitKind::EllipticRegular : OrbitKind::EllipticSingular;
      break;
    case OrbitFamily::NonElliptic:
      if (!g.odd() && o.a(n - 1) == 0.0) o.kind = OrbitKind::EllipticSingular;
      else o.kind = regular ? OrbitKind::NonElliptic : OrbitKind::NonEllipticSingular;
      break;
    default:
      o.kind = OrbitKind::NonSemisimple;
  }
  return o;
}

std::vector<double> hb_nodes(const OrbitParam& o) {
  const int n = o.g.n();
  std::vector<double> nodes;
  switch (o.family) {
    case OrbitFamily::Elliptic:
      for (int i = 0; i < n; ++i) nodes.push_back(sq(o.a(i)));
      break;
    case OrbitFamily::NonElliptic:
      for (int i = 0; i + 1 < n; ++i) nodes.push_back(sq(o.a(i)));
      if (o.g.odd()) nodes.push_back(0.0);
      break;
    case OrbitFamily::NonSemisimple:
      for (int i = 0; i + 1 < n; ++i) nodes.push_back(sq(o.a(i)));
      nodes.push_back(0.0);
      break;
    case OrbitFamily::Zero:
      break;
  }
  return nodes;
}

void validate_b(const OrbitParam& o, const BPoint& bp, double tol) {
  const int n = o.g.n();
  const Vec& b = bp.b;
  if (o.family == OrbitFamily::Zero) throw std::invalid_argument("the zero orbit has no B-points");
  if (b.size() != b_size(o))
    throw std::invalid_argument("b has " + std::to_string(b.size()) + " entries, expected " + std::to_string(b_size(o)));
  const int pairs = n - 1;
  for (int i = 0; i < pairs; ++i)
    if (b(i) < 0) throw std::invalid_argument("b_i must be nonnegative for i < n, got " + vec_str(b));
  double head = 0.0;
  for (int i = 0; i < pairs; ++i) head += sq(b(i));
  switch (o.family) {
    case OrbitFamily::Elliptic:
      if (b(n - 1) < 0 || b(n - 1) > 0.5 + tol) throw std::invalid_argument("elliptic b_n must lie in [0, 1/2]");
      if (std::abs(head - (1.0 - 2.0 * b(n - 1))) > tol) throw std::invalid_argument("elliptic b must satisfy sum_{i<n} b_i^2 = 1 - 2 b_n");
      break;
    case OrbitFamily::NonElliptic: {
      const double total = o.g.odd() ? head + sq(b(n - 1)) : head;
      if (std::abs(total - 1.0) > tol) throw std::invalid_argument("non-elliptic b must satisfy sum b_i^2 = 1");
      if (o.g.odd() && o.a(n - 2) == 0.0 && b(n - 1) < 0)
        throw std::invalid_argument("non-elliptic b_n must be nonnegative when a_{n-1} = 0");
      break;
    }
    case OrbitFamily::NonSemisimple:
      if (std::abs(head - (1.0 - 2.0 * b(n - 1))) > tol)
        throw std::invalid_argument("non-semisimple b must satisfy sum_{i<n} b_i^2 = 1 - 2 b_n");
      break;
    case OrbitFamily::Zero:
      break;
  }
  if (!(beta_norm2(o, b) > 0.0)) throw std::invalid_argument("b gives beta = 0");
}

BPoint sample_b(const OrbitParam& o, std::mt19937_64& rng) {
  if (o.family == OrbitFamily::Zero) throw std::invalid_argument("the zero orbit has no B-points");
  const int n = o.g.n();
  const std::vector<bool> free = free_nodes(o);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> N01(0.0, 1.0);
  const int pairs = n - 1;
  std::vector<int> live;
  for (int i = 0; i < pairs; ++i)
    if (free[i]) live.push_back(i);
  Vec b = Vec::Zero(b_size(o));
  auto fill_direction = [&] {
    for (int i : live) b(i) = std::abs(N01(rng)) + 1e-3;
    if (live.size() >= 2 && U(rng) < 0.15) b(live[std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng)]) = 0.0;
  };
  auto scale_head = [&](double target) {
    double s = 0.0;
    for (int i = 0; i < pairs; ++i) s += sq(b(i));
    if (s > 0.0) b.head(pairs) *= std::sqrt(target / s);
  };
  switch (o.family) {
    case OrbitFamily::Elliptic: {
      const bool bn_free = free[n - 1];
      double bn = 0.0;
      if (bn_free) {
        const double u = U(rng);
        if (live.empty() || u < 0.02) bn = 0.5;
        else if (u < 0.07) bn = 0.0;
        else bn = 0.5 * U(rng);
      }
      fill_direction();
      b(n - 1) = bn;
      if (bn < 0.5) scale_head(1.0 - 2.0 * bn);
      else b.head(pairs).setZero();
      break;
    }
    case OrbitFamily::NonElliptic:
      if (o.g.odd()) {
        fill_direction();
        b(n - 1) = U(rng) < 0.1 ? 0.0 : N01(rng);
        // With a_{n-1} = 0 the parameter set keeps b_n >= 0.
        if (o.a(n - 2) == 0.0) b(n - 1) = std::abs(b(n - 1));
        if (live.empty() && b(n - 1) == 0.0) b(n - 1) = 1.0;
        b /= b.norm();
      } else {
        fill_direction();
        b /= b.norm();
      }
      break;
    case OrbitFamily::NonSemisimple: {
      fill_direction();
      const double scale = 0.2 + 1.8 * U(rng);
      double s = 0.0;
      for (int i = 0; i < pairs; ++i) {
        b(i) *= scale;
        s += sq(b(i));
      }
      b(n - 1) = 0.5 * (1.0 - s);
      break;
    }
    case OrbitFamily::Zero:
      break;
  }
  return {b};
}

Vec alpha_of(const OrbitParam& o, const BPoint& bp) {
  const int m = o.g.m();
  const int n = o.g.n();
  const Vec& a = o.a;
  const Vec& b = bp.b;
  Vec alpha = Vec::Zero(m);
  switch (o.family) {
    case OrbitFamily::Elliptic:
      for (int i = 0; i + 1 < n; ++i) alpha(2 * i + 1) = b(i);
      break;
    case OrbitFamily::NonSemisimple:
      for (int i = 0; i + 1 < n; ++i) alpha(2 * i + 1) = b(i);
      alpha(m - 1) = b(n - 1);
      break;
    case OrbitFamily::NonElliptic: {
      const double an = a(n - 1);
      for (int i = 0; i + 1 < n; ++i) {
        const double s = std::hypot(an, a(i));
        if (s == 0.0) continue;
        alpha(2 * i) = an * b(i) / s;
        alpha(2 * i + 1) = -a(i) * b(i) / s;
      }
      if (o.g.odd()) alpha(m - 1) = b(n - 1);
      break;
    }
    case OrbitFamily::Zero:
      break;
  }
  return alpha;
}

Mat f_matrix(const OrbitParam& o) {
  const int m = o.g.m();
  switch (o.family) {
    case OrbitFamily::Elliptic: return mk::t_vec(o.a);
    case OrbitFamily::NonElliptic: return mk::tprime_vec(o.a, m);
    case OrbitFamily::NonSemisimple: return mk::s_vec(o.a, o.ns_sign);
    case OrbitFamily::Zero: return Mat::Zero(m + 2, m + 2);
  }
  return Mat();
}

PStdForm representative_point(const OrbitParam& o, const BPoint& bp) {
  validate_b(o, bp);
  const int m = o.g.m();
  const int n = o.g.n();
  const Vec& a = o.a;
  const Vec& b = bp.b;
  const Vec alpha = alpha_of(o, bp);
  PStdForm p;
  p.Y = Mat::Zero(m, m);
  p.beta = Vec::Zero(m);
  for (int i = 0; i + 1 < n; ++i) {
    p.Y(2 * i, 2 * i + 1) = a(i);
    p.Y(2 * i + 1, 2 * i) = -a(i);
  }
  switch (o.family) {
    case OrbitFamily::Elliptic: {
      for (int i = 0; i + 1 < n; ++i) p.beta(2 * i) = -a(i) * b(i);
      p.beta(m - 1) = a(n - 1) * b(n - 1);
      // Y = diag(a_i H', 0) + beta'^t alpha - alpha^t beta' with beta' = a_n e_m.
      for (int k = 0; k < m; ++k) {
        p.Y(m - 1, k) += a(n - 1) * alpha(k);
        p.Y(k, m - 1) -= a(n - 1) * alpha(k);
      }
      p.a = 0.0;
      break;
    }
    case OrbitFamily::NonElliptic: {
      const double an = a(n - 1);
      for (int i = 0; i + 1 < n; ++i) p.beta(2 * i) = b(i) * std::hypot(an, a(i));
      if (o.g.odd()) p.beta(m - 1) = an * b(n - 1);
      p.a = an;
      break;
    }
    case OrbitFamily::NonSemisimple:
      for (int i = 0; i + 1 < n; ++i) p.beta(2 * i) = -a(i) * b(i);
      p.beta(m - 1) = o.ns_sign;
      p.a = 0.0;
      break;
    case OrbitFamily::Zero:
      break;
  }
  return p;
}

std::vector<double> hb_weights(const OrbitParam& o, const BPoint& bp) {
  validate_b(o, bp);
  const int n = o.g.n();
  const Vec& a = o.a;
  const Vec& b = bp.b;
  const double bb = beta_norm2(o, b);
  std::vector<double> d;
  switch (o.family) {
    case OrbitFamily::Elliptic:
      for (int i = 0; i < n; ++i) d.push_back(sq(a(i) * b(i)) / bb);
      break;
    case OrbitFamily::NonElliptic:
      for (int i = 0; i + 1 < n; ++i) d.push_back(sq(b(i)) * (sq(a(n - 1)) + sq(a(i))) / bb);
      if (o.g.odd()) d.push_back(sq(a(n - 1) * b(n - 1)) / bb);
      break;
    case OrbitFamily::NonSemisimple:
      for (int i = 0; i + 1 < n; ++i) d.push_back(sq(a(i) * b(i)) / bb);
      d.push_back(1.0 / bb);
      break;
    case OrbitFamily::Zero:
      break;
  }
  return d;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial hb_poly(const OrbitParam& o, const BPoint& b) {
  return {nodal_expand(hb_nodes(o), hb_weights(o, b))};
}

std::vector<double> hb_roots(const OrbitParam& o, const BPoint& bp) {
  const std::vector<double> d = hb_weights(o, bp);
  std::vector<double> roots;
  std::vector<double> v, w;
  for (const NodeGroup& gr : node_groups(o)) {
    double weight = 0.0;
    for (int k = gr.first; k < gr.first + gr.count; ++k) weight += d[k];
    for (int k = 1; k < gr.count; ++k) roots.push_back(gr.value);
    if (weight == 0.0) {
      roots.push_back(gr.value);
    } else {
      v.push_back(gr.value);
      w.push_back(weight);
    }
  }
  if (v.size() >= 2) {
    const std::vector<double> guesses = companion_roots(nodal_expand(v, w));
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      roots.push_back(secular_root(v, w, static_cast<int>(i), static_cast<int>(i + 1), guesses[i]));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  for (double r : roots)
    if (r < -1e-9) throw std::runtime_error("hb_roots: negative root " + std::to_string(r));
  return roots;
}

double pfaffian_closed_form(const OrbitParam& o, const BPoint& bp) {
  validate_b(o, bp);
  if (!o.g.odd()) return 0.0;
  const int n = o.g.n();
  const Vec& a = o.a;
  const Vec& b = bp.b;
  const double nb = std::sqrt(beta_norm2(o, b));
  double prod = 1.0;
  switch (o.family) {
    case OrbitFamily::Elliptic:
      for (int i = 0; i < n; ++i) prod *= a(i);
      return (1.0 - b(n - 1)) / nb * prod;
    case OrbitFamily::NonElliptic:
      for (int i = 0; i < n; ++i) prod *= a(i);
      return b(n - 1) / nb * prod;
    case OrbitFamily::NonSemisimple:
      for (int i = 0; i + 1 < n; ++i) prod *= a(i);
      return o.ns_sign * prod / nb;
    case OrbitFamily::Zero:
      break;
  }
  return 0.0;
}

POrbitDescriptor moment_image_point(const OrbitParam& o, const BPoint& b, double zero_tol) {
  if (o.family == OrbitFamily::Zero) throw std::invalid_argument("the zero orbit has no B-points");
  POrbitDescriptor d;
  d.depth = 1;
  for (double r : hb_roots(o, b)) d.x.push_back(std::sqrt(std::max(r, 0.0)));
  if (o.g.odd() && !d.x.empty() && d.x.back() > zero_tol) {
    const double pf = pfaffian_closed_form(o, b);
    d.pf_sign = pf > 0 ? 1 : (pf < 0 ? -1 : 0);
  }
  return d;
}

POrbitDescriptor pipeline_image_point(const OrbitParam& o, const BPoint& b, double zero_tol) {
  if (o.family == OrbitFamily::Zero) throw std::invalid_argument("the zero orbit has no B-points");
  validate_b(o, b);
  const Mat X = mk::Ad(mk::nbar_alpha(alpha_of(o, b)), f_matrix(o));
  const Canonicalized c = canonicalize(project_p(X, 1e-9));
  return p_orbit_invariants(c.form, o.g, zero_tol);
}

MomentImage moment_image(const OrbitParam& o) {
  std::vector<double> a(o.a.data(), o.a.data() + o.a.size());
  return moment_image_of<double>(o.family, a, o.g, o.ns_sign);
}

BPoint b_from_x(const OrbitParam& o, const std::vector<double>& x, double tol) {
  if (o.family == OrbitFamily::Zero) throw std::invalid_argument("the zero orbit has no B-points");
  const int n = o.g.n();
  const std::vector<double> nodes = hb_nodes(o);
  const int expected = static_cast<int>(nodes.size()) - 1;
  if (static_cast<int>(x.size()) != expected)
    throw std::invalid_argument("b_from_x: expected " + std::to_string(expected) + " singular values");
  std::vector<double> r;
  for (double v : x) r.push_back(v * v);
  const std::vector<NodeGroup> groups = node_groups(o);
  auto take_nearest = [&](double value) {
    if (r.empty()) throw std::invalid_argument("b_from_x: x is outside the moment image");
    auto it = std::min_element(r.begin(), r.end(), [&](double p, double q) { return std::abs(p - value) < std::abs(q - value); });
    if (std::abs(*it - value) > 1e-6 * std::max(1.0, value))
      throw std::invalid_argument("b_from_x: x is outside the moment image (missing forced root)");
    r.erase(it);
  };
  std::vector<double> live_v;
  std::vector<int> live_idx;
  for (const NodeGroup& gr : groups) {
    for (int k = 1; k < gr.count; ++k) take_nearest(gr.value);
    if (!gr.free) take_nearest(gr.value);
    else {
      live_v.push_back(gr.value);
      live_idx.push_back(gr.first + gr.count - 1);
    }
  }
  if (r.size() + 1 != live_v.size()) throw std::logic_error("b_from_x: root bookkeeping mismatch");
  std::vector<double> d(nodes.size(), 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < live_v.size(); ++k) {
    double num = 1.0, den = 1.0;
    for (double root : r) num *= live_v[k] - root;
    for (std::size_t j = 0; j < live_v.size(); ++j)
      if (j != k) den *= live_v[k] - live_v[j];
    double c = num / den;
    if (c < -tol * std::max(1.0, std::abs(num))) throw std::invalid_argument("b_from_x: x is outside the moment image");
    c = std::max(c, 0.0);
    d[live_idx[k]] = c;
    total += c;
  }
  for (double& c : d) c /= total;

  const Vec& a = o.a;
  Vec b = Vec::Zero(b_size(o));
  switch (o.family) {
    case OrbitFamily::Elliptic: {
      double S = 0.0;
      for (int i = 0; i + 1 < n; ++i)
        if (d[i] > 0.0) S += d[i] / sq(a(i));
      const double t = a(n - 1) != 0.0 ? std::sqrt(d[n - 1]) / std::abs(a(n - 1)) : 0.0;
      const double B = 1.0 / (t + std::sqrt(t * t + S));
      for (int i = 0; i + 1 < n; ++i)
        if (d[i] > 0.0) b(i) = std::sqrt(d[i]) * B / std::abs(a(i));
      b(n - 1) = t * B;
      break;
    }
    case OrbitFamily::NonElliptic: {
      const double an = a(n - 1);
      for (int i = 0; i + 1 < n; ++i)
        if (d[i] > 0.0) b(i) = std::sqrt(d[i]) / std::hypot(an, a(i));
      if (o.g.odd()) {
        const double sign = x.back() < 0 ? -1.0 : 1.0;
        b(n - 1) = sign * std::sqrt(d[n - 1]) / an;
      }
      b /= b.norm();
      break;
    }
    case OrbitFamily::NonSemisimple: {
      const double B = 1.0 / std::sqrt(d[n - 1]);
      double s = 0.0;
      for (int i = 0; i + 1 < n; ++i)
        if (d[i] > 0.0) {
          b(i) = std::sqrt(d[i]) * B / a(i);
          s += sq(b(i));
        }
      b(n - 1) = 0.5 * (1.0 - s);
      break;
    }
    case OrbitFamily::Zero:
      break;
  }
  return {b};
}

StabilizerType stabilizer_type(const OrbitParam& o, const BPoint& bp, double double_zero_tol) {
  if (o.family == OrbitFamily::Zero) throw std::invalid_argument("the zero orbit has no B-points");
  validate_b(o, bp);
  const int n = o.g.n();
  const std::vector<double> roots = hb_roots(o, bp);
  StabilizerType st;
  const int pairs = n - 1;
  for (int i = 0; i < pairs; ++i)
    if (bp.b(i) == 0.0) ++st.r;

  if (o.kind == OrbitKind::EllipticSingular && o.family == OrbitFamily::Elliptic) {
    std::vector<std::string> point, image;
    int s = 0;
    for (const NodeGroup& gr : node_groups(o)) {
      const int end = gr.first + gr.count - 1;
      const int rk = bp.b(end) != 0.0 && gr.free ? -1 : 0;
      if (gr.count + rk > 0) point.push_back("U(" + std::to_string(gr.count + rk) + ")");
      int mult = 0;
      for (double r : roots)
        if (std::abs(r - gr.value) <= double_zero_tol) ++mult;
      const int sk = mult - gr.count;
      s -= sk;
      if (gr.count + sk > 0) image.push_back("U(" + std::to_string(gr.count + sk) + ")");
    }
    if (s > 0) image.push_back(power("U(1)", s));
    auto join = [](const std::vector<std::string>& parts) {
      std::string out;
      for (const auto& p : parts) out += (out.empty() ? "" : " x ") + p;
      return out.empty() ? std::string("1") : out;
    };
    st.point = join(point);
    st.image = join(image);
    st.s = s;
    return st;
  }

  for (std::size_t i = 0; i + 1 < roots.size(); ++i)
    if (std::abs(roots[i] - roots[i + 1]) <= double_zero_tol) {
      ++st.s;
      ++i;
    }
  const int k = static_cast<int>(roots.size());
  st.point = power("SO(2)", st.r);
  st.image = power("U(2)", st.s) + " x " + power("SO(2)", k - 2 * st.s);
  return st;
}

bool reduced_space_singleton(const OrbitParam& o, int samples, std::uint64_t seed) {
  if (o.family == OrbitFamily::Zero) throw std::invalid_argument("reduced_space_singleton: the zero orbit is excluded");
  std::mt19937_64 rng(seed);
  std::vector<Vec> bs;
  std::vector<std::vector<double>> xs;
  for (int s = 0; s < samples; ++s) {
    const BPoint b = sample_b(o, rng);
    const POrbitDescriptor d = moment_image_point(o, b);
    std::vector<double> x = d.x;
    if (o.family == OrbitFamily::NonElliptic && o.g.odd() && b.b(o.g.n() - 1) < 0 && !x.empty()) x.back() = -x.back();
    const BPoint back = b_from_x(o, x);
    if ((back.b - b.b).cwiseAbs().maxCoeff() > 1e-6) return false;
    bs.push_back(b.b);
    xs.push_back(std::move(x));
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      double dx = 0.0;
      for (std::size_t k = 0; k < xs[i].size(); ++k) dx = std::max(dx, std::abs(xs[i][k] - xs[j][k]));
      if (dx <= 1e-8 && (bs[i] - bs[j]).cwiseAbs().maxCoeff() > 1e-6) return false;
    }
  return true;
}

}  // namespace spinor
