#include "spinor/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spinor {

namespace {

// c_j - mu_j for 1-based j < n.
HalfInt shift(const Group& g, int j) {
  return g.odd() ? HalfInt::from_twice(2 * (g.n() - j) - 1) : HalfInt(g.n() - j - 1);
}

bool is_half_integer(double v) { return std::abs(2.0 * v - std::round(2.0 * v)) < 1e-12; }

std::string fmt_real(double v) {
  if (is_half_integer(v)) return HalfInt::from_double(v).str();
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt_nu(std::complex<double> nu) {
  if (nu.imag() == 0.0) return fmt_real(nu.real());
  if (nu.real() == 0.0) return fmt_real(nu.imag()) + "i";
  return fmt_real(nu.real()) + (nu.imag() < 0 ? "-" : "+") + fmt_real(std::abs(nu.imag())) + "i";
}

void require_odd(const Group& g, const char* what) {
  if (!g.odd()) throw std::invalid_argument(std::string(what) + ": discrete series exist only for odd m");
}

}  // namespace

std::string to_string(InflClass c) {
  switch (c) {
    case InflClass::Lambda0: return "Lambda0";
    case InflClass::LambdaJ: return "LambdaJ";
    case InflClass::LambdaN: return "LambdaN";
    case InflClass::NonIntegral: return "NonIntegral";
  }
  return "?";
}

InflChar classify_infl_char(const Weight& gamma, const Group& g) {
  const int n = g.n();
  if (static_cast<int>(gamma.size()) != n)
    throw std::invalid_argument("classify_infl_char: gamma " + to_string(gamma) + " must have rank " + std::to_string(n));
  for (int j = 1; j < n - 1; ++j)
    if (!same_parity(gamma[j], gamma[0]))
      throw std::invalid_argument("classify_infl_char: mixed parity among the first n-1 entries of " + to_string(gamma));
  InflChar ic;
  ic.g = g;
  ic.gamma = gamma;
  for (int j = 1; j < n; ++j) ic.mu.push_back(gamma[j - 1] - shift(g, j));
  require_dominant(ic.mu, group_M(g), "classify_infl_char: M-weight");
  ic.nu = gamma[n - 1];

  if (!same_parity(ic.nu, gamma[0])) {
    ic.cls = InflClass::NonIntegral;
    return ic;
  }
  auto sorted_minus_rho = [&] {
    Weight d;
    for (HalfInt x : gamma) d.push_back(abs(x));
    std::sort(d.begin(), d.end(), std::greater<>());
    const Weight r = rho(g);
    for (int i = 0; i < n; ++i) d[i] -= r[i];
    return d;
  };
  if (g.odd() && ic.nu.is_zero()) {
    ic.cls = InflClass::LambdaN;
    ic.a = sorted_minus_rho();
    return ic;
  }
  for (int j = 1; j < n; ++j) {
    if (abs(ic.nu) == abs(gamma[j - 1])) {
      ic.cls = InflClass::LambdaJ;
      ic.j = j;
      return ic;
    }
  }
  ic.cls = InflClass::Lambda0;
  ic.a = sorted_minus_rho();
  return ic;
}

InflChar infl_char_from_a(const Weight& a, const Group& g) {
  if (static_cast<int>(a.size()) != g.n()) throw std::invalid_argument("infl_char_from_a: a must have rank n");
  const Weight r = rho(g);
  Weight gamma(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) gamma[i] = a[i] + r[i];
  InflChar ic = classify_infl_char(gamma, g);
  if (ic.cls != InflClass::Lambda0 && ic.cls != InflClass::LambdaN)
    throw std::invalid_argument("infl_char_from_a: a + rho = " + to_string(gamma) + " is not regular integral");
  if (ic.a != a) throw std::invalid_argument("infl_char_from_a: a = " + to_string(a) + " is not dominant");
  return ic;
}

Weight ps_gamma(const Weight& mu, HalfInt nu, const Group& g) {
  if (static_cast<int>(mu.size()) != g.n() - 1) throw std::invalid_argument("ps_gamma: mu must have rank n-1");
  Weight gamma;
  for (int j = 1; j < g.n(); ++j) gamma.push_back(mu[j - 1] + shift(g, j));
  gamma.push_back(nu);
  return gamma;
}

RepLabel make_pij(const InflChar& ic, int j) {
  if (ic.cls != InflClass::Lambda0) throw std::invalid_argument("make_pij: infinitesimal character must lie in Lambda0");
  if (j < 0 || j > ic.g.n() - 1) throw std::invalid_argument("make_pij: j out of range 0..n-1");
  if (j == 0) return FinDim{ic};
  return PiJ{ic, j};
}

RepLabel make_ds(const InflChar& ic, Sign s) {
  require_odd(ic.g, "make_ds");
  if (ic.cls != InflClass::Lambda0 && ic.cls != InflClass::LambdaN)
    throw std::invalid_argument("make_ds: infinitesimal character must lie in Lambda0 or LambdaN");
  return DS{ic, s};
}

RepLabel make_ps(const Weight& mu, std::complex<double> nu, const Group& g) {
  require_dominant(mu, group_M(g), "make_ps: M-weight");
  if (nu.real() < 0 || (nu.real() == 0 && nu.imag() < 0)) nu = -nu;
  nu = {nu.real() + 0.0, nu.imag() + 0.0};
  return PS{g, mu, nu};
}

RepLabel make_aq(int j, const Weight& lambda, const Group& g) {
  (void)aq_param_range(j, lambda, g);
  return Aq{g, j, lambda};
}

const Group& group_of(const RepLabel& rep) {
  return std::visit(
      [](const auto& r) -> const Group& {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PS> || std::is_same_v<T, Aq>) return r.g;
        else return r.ic.g;
      },
      rep);
}

std::string to_string(const RepLabel& rep) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PiJ>) return "pi_" + std::to_string(r.j) + to_string(r.ic.gamma);
        else if constexpr (std::is_same_v<T, DS>)
          return std::string(r.limit() ? "limDS" : "DS") + sign_char(r.sign) + to_string(r.ic.gamma);
        else if constexpr (std::is_same_v<T, PS>) return "I(" + to_string(r.mu) + ", " + fmt_nu(r.nu) + ")";
        else if constexpr (std::is_same_v<T, Aq>) return "A_q" + std::to_string(r.j) + to_string(r.lambda);
        else return "F" + to_string(r.ic.gamma);
      },
      rep);
}

std::vector<RepLabel> irreducibles_with_char(const InflChar& ic) {
  std::vector<RepLabel> out;
  switch (ic.cls) {
    case InflClass::Lambda0:
      for (int j = 0; j < ic.g.n(); ++j) out.push_back(make_pij(ic, j));
      if (ic.g.odd()) {
        out.push_back(DS{ic, Sign::Plus});
        out.push_back(DS{ic, Sign::Minus});
      }
      break;
    case InflClass::LambdaN:
      out.push_back(DS{ic, Sign::Plus});
      out.push_back(DS{ic, Sign::Minus});
      break;
    case InflClass::LambdaJ:
    case InflClass::NonIntegral:
      out.push_back(make_ps(ic.mu, ic.nu.to_double(), ic.g));
      break;
  }
  return out;
}

namespace {

bool ps_unitarizable(const PS& p) {
  const double re = p.nu.real();
  const double im = p.nu.imag();
  if (re == 0.0) return true;
  if (im != 0.0) return false;
  const int n = p.g.n();
  if (is_half_integer(re)) {
    const InflChar ic = classify_infl_char(ps_gamma(p.mu, HalfInt::from_double(re), p.g), p.g);
    if (ic.cls == InflClass::Lambda0) return false;
    if (ic.cls == InflClass::LambdaJ) {
      for (int i = ic.j; i <= n - 1; ++i)
        if (!p.mu[i - 1].is_zero()) return false;
      return true;
    }
  }
  const double bound = p.g.odd() ? n - 0.5 : n - 1.0;
  const double r = std::abs(re);
  if (r >= bound) return false;
  for (HalfInt x : p.mu)
    if (!x.is_integer()) return false;
  const double cut = p.g.odd() ? n - r - 0.5 : n - r - 1.0;
  for (int k = 1; k <= n - 1; ++k)
    if (k > cut && !p.mu[k - 1].is_zero()) return false;
  return true;
}

}  // namespace

bool is_unitarizable(const RepLabel& rep) {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PiJ>) {
          for (std::size_t i = r.j; i < r.ic.a.size(); ++i)
            if (!r.ic.a[i].is_zero()) return false;
          return true;
        } else if constexpr (std::is_same_v<T, DS>) {
          return true;
        } else if constexpr (std::is_same_v<T, PS>) {
          return ps_unitarizable(r);
        } else if constexpr (std::is_same_v<T, Aq>) {
          const AqRange range = aq_param_range(r.j, r.lambda, r.g);
          return range.weakly_fair && range.nonzero;
        } else {
          for (HalfInt x : r.ic.a)
            if (!x.is_zero()) return false;
          return true;
        }
      },
      rep);
}

AqRange aq_param_range(int j, const Weight& lambda, const Group& g) {
  const int n = g.n();
  if (j < 0 || j > n - 1) throw std::invalid_argument("aq_param_range: j must lie in 0..n-1");
  if (static_cast<int>(lambda.size()) != n) throw std::invalid_argument("aq_param_range: lambda must have rank n");
  for (int i = 0; i < n; ++i) {
    if (!lambda[i].is_integer()) throw std::invalid_argument("aq_param_range: lambda must be integral");
    if (i >= j && !lambda[i].is_zero())
      throw std::invalid_argument("aq_param_range: lambda " + to_string(lambda) + " must vanish beyond slot j");
  }
  AqRange r{true, true, true};
  if (j == 0) return r;
  for (int i = 0; i + 1 < j; ++i) {
    if (lambda[i] < lambda[i + 1]) r.good = r.nonzero = false;
    if (lambda[i] + 1 < lambda[i + 1]) r.weakly_fair = false;
  }
  if (lambda[j - 1] < 0) r.good = false;
  if (lambda[j - 1] < HalfInt(j - n)) r.weakly_fair = false;
  if (j >= 2 && lambda[j - 2] < -1) r.nonzero = false;
  return r;
}

RepLabel rep_from_aq(int j, const Weight& lambda, const Group& g) {
  const AqRange range = aq_param_range(j, lambda, g);
  if (!range.nonzero) throw std::invalid_argument("rep_from_aq: A_q(lambda) vanishes for lambda = " + to_string(lambda));
  if (!range.weakly_fair) throw std::invalid_argument("rep_from_aq: lambda = " + to_string(lambda) + " is outside the weakly fair range");
  if (range.good) return make_pij(infl_char_from_a(lambda, g), j);
  const int n = g.n();
  const int jp = static_cast<int>(j - 1 - lambda[j - 1].to_int());
  Weight mu(n - 1, HalfInt(0));
  for (int i = 0; i + 1 < j; ++i) mu[i] = lambda[i] + 1;
  const HalfInt nu = g.odd() ? HalfInt::from_twice(2 * (n - jp) - 1) : HalfInt(n - jp - 1);
  const InflChar ic = classify_infl_char(ps_gamma(mu, nu, g), g);
  if (ic.cls != InflClass::LambdaJ || ic.j != jp)
    throw std::logic_error("rep_from_aq: translated character " + to_string(ic.gamma) + " is not in Lambda_" + std::to_string(jp));
  return make_ps(mu, nu.to_double(), g);
}

}  // namespace spinor
