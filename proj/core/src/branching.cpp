#include "spinor/branching.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace spinor {

namespace {

using Ranges = std::vector<std::pair<HalfInt, HalfInt>>;

void enumerate(const Ranges& ranges, std::size_t i, Weight& cur, std::vector<Weight>& out) {
  if (i == ranges.size()) {
    out.push_back(cur);
    return;
  }
  for (HalfInt v = ranges[i].first; v <= ranges[i].second; v += 1) {
    cur[i] = v;
    enumerate(ranges, i + 1, cur, out);
  }
}

// Enumerates tau of rank `rank` whose first ranges.size() entries run over
// the given ranges and whose remaining entries are zero.
std::vector<Weight> enumerate_padded(const Ranges& ranges, int rank) {
  std::vector<Weight> out;
  Weight cur(rank, HalfInt(0));
  enumerate(ranges, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

int tau_rank(const Group& g) { return g.np() - 1; }

using Multiset = std::map<Weight, long>;

void add(Multiset& ms, const std::vector<Weight>& ws, long k) {
  for (const Weight& w : ws) {
    long& c = ms[w];
    c += k;
    if (c < 0) throw std::logic_error("psi: negative multiplicity at " + to_string(w));
    if (c == 0) ms.erase(w);
  }
}

std::vector<Weight> flatten(const Multiset& ms) {
  std::vector<Weight> out;
  for (const auto& [w, c] : ms)
    for (long i = 0; i < c; ++i) out.push_back(w);
  return out;
}

// Psi(pi_i(gamma)) for gamma in Lambda0 with parameters a.
Multiset psi_pi(const Weight& a, const Group& g, int i) {
  Multiset cur;
  for (int k = 0; k < i; ++k) {
    Multiset next;
    add(next, gt_branch(telescoping_mu(a, k), g, Level::MtoMp), 1);
    for (const auto& [w, c] : cur) {
      long& x = next[w];
      x -= c;
      if (x < 0) throw std::logic_error("psi: negative multiplicity at " + to_string(w));
      if (x == 0) next.erase(w);
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Weight> split_by_sign(const std::vector<Weight>& ws, Sign s) {
  std::vector<Weight> out;
  for (const Weight& w : ws) {
    if (w.back().is_zero()) throw std::logic_error("psi: discrete-series component with zero last entry " + to_string(w));
    if ((s == Sign::Plus) == (w.back() < 0)) out.push_back(w);
  }
  return out;
}

}  // namespace

Weight telescoping_mu(const Weight& a, int i) {
  const int n = static_cast<int>(a.size());
  if (i < 0 || i > n - 1) throw std::invalid_argument("telescoping_mu: index out of range");
  Weight mu;
  for (int k = 0; k < i; ++k) mu.push_back(a[k] + 1);
  for (int k = i + 1; k < n; ++k) mu.push_back(a[k]);
  return mu;
}

BranchTable branch_principal(const Weight& mu, const Group& g, std::complex<double> nu) {
  BranchTable t{make_ps(mu, nu, g), gt_branch(mu, g, Level::MtoMp)};
  return t;
}

BranchTable branch_pi_j(const InflChar& ic, int j) {
  if (ic.cls != InflClass::Lambda0) throw std::invalid_argument("branch_pi_j: gamma must lie in Lambda0");
  if (j < 1 || j > ic.g.n() - 1) throw std::invalid_argument("branch_pi_j: j must lie in 1..n-1");
  RepLabel rep = make_pij(ic, j);
  if (!is_unitarizable(rep)) throw std::invalid_argument("branch_pi_j: " + to_string(rep) + " is not unitarizable");
  const Weight& a = ic.a;
  Ranges ranges;
  for (int i = 0; i + 1 < j; ++i) ranges.emplace_back(a[i + 1] + 1, a[i] + 1);
  return {rep, enumerate_padded(ranges, tau_rank(ic.g))};
}

BranchTable branch_discrete(const InflChar& ic, Sign sign) {
  RepLabel rep = make_ds(ic, sign);
  const Weight& a = ic.a;
  const int n = ic.g.n();
  Ranges ranges;
  for (int i = 0; i + 2 < n; ++i) ranges.emplace_back(a[i + 1] + 1, a[i] + 1);
  if (sign == Sign::Minus) ranges.emplace_back(a[n - 1] + 1, a[n - 2] + 1);
  else ranges.emplace_back(-(a[n - 2] + 1), -(a[n - 1] + 1));
  return {rep, enumerate_padded(ranges, tau_rank(ic.g))};
}

BranchTable branch_aq(int j, const Weight& lambda, const Group& g) {
  const AqRange range = aq_param_range(j, lambda, g);
  if (!range.nonzero || !range.weakly_fair)
    throw std::invalid_argument("branch_aq: lambda = " + to_string(lambda) + " gives no unitary A_q");
  RepLabel rep = Aq{g, j, lambda};
  if (j == 0) return {rep, {}};
  Ranges ranges;
  for (int i = 0; i + 2 < j; ++i) ranges.emplace_back(lambda[i + 1] + 1, lambda[i] + 1);
  if (j >= 2) ranges.emplace_back(std::max(lambda[j - 1] + 1, HalfInt(0)), lambda[j - 2] + 1);
  return {rep, enumerate_padded(ranges, tau_rank(g))};
}

BranchTable branch(const RepLabel& rep) {
  return std::visit(
      [&](const auto& r) -> BranchTable {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PiJ>) {
          return branch_pi_j(r.ic, r.j);
        } else if constexpr (std::is_same_v<T, DS>) {
          return branch_discrete(r.ic, r.sign);
        } else if constexpr (std::is_same_v<T, PS>) {
          if (!is_unitarizable(rep)) throw std::invalid_argument("branch: " + to_string(rep) + " is not unitarizable");
          return branch_principal(r.mu, r.g, r.nu);
        } else if constexpr (std::is_same_v<T, Aq>) {
          return branch_aq(r.j, r.lambda, r.g);
        } else {
          if (!is_unitarizable(rep)) throw std::invalid_argument("branch: " + to_string(rep) + " is not unitarizable");
          return {rep, {}};
        }
      },
      rep);
}

std::vector<Weight> psi(const RepLabel& rep) {
  return std::visit(
      [&](const auto& r) -> std::vector<Weight> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FinDim>) {
          return {};
        } else if constexpr (std::is_same_v<T, PS>) {
          return gt_branch(r.mu, r.g, Level::MtoMp);
        } else if constexpr (std::is_same_v<T, PiJ>) {
          return flatten(psi_pi(r.ic.a, r.ic.g, r.j));
        } else if constexpr (std::is_same_v<T, DS>) {
          const Group& g = r.ic.g;
          if (r.limit()) return split_by_sign(gt_branch(r.ic.mu, g, Level::MtoMp), r.sign);
          const int n = g.n();
          Multiset prime;
          add(prime, gt_branch(telescoping_mu(r.ic.a, n - 1), g, Level::MtoMp), 1);
          add(prime, flatten(psi_pi(r.ic.a, g, n - 1)), -1);
          return split_by_sign(flatten(prime), r.sign);
        } else {
          return psi(rep_from_aq(r.j, r.lambda, r.g));
        }
      },
      rep);
}

bool phi_ktype_check(const Weight& mu, std::complex<double> /*nu*/, const Group& g, int cutoff) {
  require_dominant(mu, group_M(g), "phi_ktype_check: M-weight");
  const HalfInt lo = HalfInt::from_twice(cutoff);
  HalfInt top = 0;
  for (HalfInt x : mu) top = std::max(top, abs(x));
  if (lo < top)
    throw std::invalid_argument("phi_ktype_check: cutoff " + std::to_string(cutoff) + " too small for " + to_string(mu) +
                                "; need cutoff/2 >= max entry");
  const LieType kt = group_K(g);
  const InterlaceStyle style = level_style(g, Level::KtoM);
  const std::vector<Weight> taus = gt_branch(mu, g, Level::MtoMp);
  const HalfInt base = mu.empty() ? HalfInt(0) : mu[0];
  const HalfInt hi = HalfInt(cutoff);

  Ranges ranges(kt.rank);
  HalfInt first = lo;
  if (!same_parity(first, base)) first += HalfInt::from_twice(1);
  ranges[0] = {first, hi};
  HalfInt start = -hi;
  if (!same_parity(start, base)) start += HalfInt::from_twice(1);
  for (int i = 1; i < kt.rank; ++i) ranges[i] = {start, hi};
  std::vector<Weight> lambdas;
  Weight cur(kt.rank);
  enumerate(ranges, 0, cur, lambdas);

  for (const Weight& lambda : lambdas) {
    if (!is_dominant(lambda, kt)) continue;
    const long lhs = interlaces(lambda, mu, style) ? 1 : 0;
    long rhs = 0;
    for (const Weight& tau : taus) {
      if (tau.empty()) {
        if (lambda.size() == 1 && lambda[0] >= 0) ++rhs;
        continue;
      }
      if (lambda.size() != tau.size() + 1) continue;
      if (lambda[0] - tau[0] < 0) continue;
      bool ok = true;
      for (std::size_t i = 0; i < tau.size() && ok; ++i) {
        HalfInt want = tau[i];
        if (i + 1 == tau.size() && g.odd()) want = -want;
        ok = lambda[i + 1] == want;
      }
      if (ok) ++rhs;
    }
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace spinor
