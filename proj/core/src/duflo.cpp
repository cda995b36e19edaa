#include "spinor/duflo.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>

#include "spinor/parallel.hpp"

namespace spinor {

namespace {

Vec to_vec(const std::vector<HalfInt>& a) {
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].to_double();
  return v;
}

RepOrbitPair finish(const RepLabel& rep, ExactOrbit exact, const Group& g, double an = 0.0) {
  Vec a = to_vec(exact.a);
  if (exact.family == OrbitFamily::NonElliptic) a(a.size() - 1) = an;
  return {rep, exact, make_orbit(g, exact.family, a, exact.ns_sign)};
}

// Sorted |gamma| = a + rho for Lambda0 characters.
std::vector<HalfInt> shifted_a(const InflChar& ic) {
  const Weight r = rho(ic.g);
  std::vector<HalfInt> out;
  for (std::size_t i = 0; i < ic.a.size(); ++i) out.push_back(ic.a[i] + r[i]);
  return out;
}

// Reference entry for the central-character parity of candidate tau.
HalfInt parity_reference(const RepLabel& rep) {
  return std::visit(
      [](const auto& r) -> HalfInt {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PS>) return r.mu.empty() ? HalfInt(0) : r.mu[0];
        else if constexpr (std::is_same_v<T, Aq>) return r.lambda[0];
        else if constexpr (std::is_same_v<T, DS>) return r.limit() ? r.ic.mu[0] : r.ic.a[0];
        else return r.ic.a.empty() ? HalfInt(0) : r.ic.a[0];
      },
      rep);
}

void enumerate_tau(const LieType& t, HalfInt bound, HalfInt parity, std::size_t i, Weight& cur, std::vector<Weight>& out) {
  if (i == cur.size()) {
    if (is_dominant(cur, t)) out.push_back(cur);
    return;
  }
  HalfInt lo = -bound;
  if (!same_parity(lo, parity)) lo += HalfInt::from_twice(1);
  HalfInt hi = i == 0 ? bound : cur[i - 1];
  for (HalfInt v = lo; v <= hi; v += 1) {
    cur[i] = v;
    enumerate_tau(t, bound, parity, i + 1, cur, out);
  }
}

}  // namespace

std::string to_string(const ExactPOrbit& p) {
  if (p.depth == 0) return p.depth0_label;
  std::string s = "x=(";
  for (std::size_t i = 0; i < p.x.size(); ++i) s += (i ? "," : "") + p.x[i].str();
  s += ") pf=";
  s += p.pf_sign > 0 ? "+" : (p.pf_sign < 0 ? "-" : "0");
  return s;
}

RepOrbitPair orbit_of_tempered(const RepLabel& rep) {
  return std::visit(
      [&](const auto& r) -> RepOrbitPair {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DS>) {
          const Group& g = r.ic.g;
          const int n = g.n();
          const int parity = n % 2 == 0 ? 1 : -1;
          const int s = r.sign == Sign::Plus ? parity : -parity;
          if (r.limit()) {
            std::vector<HalfInt> a(r.ic.gamma.begin(), r.ic.gamma.begin() + (n - 1));
            return finish(rep, {OrbitFamily::NonSemisimple, a, s}, g);
          }
          std::vector<HalfInt> a = shifted_a(r.ic);
          a.back() = a.back() * s;
          return finish(rep, {OrbitFamily::Elliptic, a, 1}, g);
        } else if constexpr (std::is_same_v<T, PS>) {
          const Group& g = r.g;
          const int n = g.n();
          if (r.nu.real() != 0.0) throw std::invalid_argument("orbit_of_tempered: " + to_string(rep) + " is not tempered");
          const double t = std::abs(r.nu.imag());
          const Weight gamma = ps_gamma(r.mu, HalfInt(0), g);
          std::vector<HalfInt> a(gamma.begin(), gamma.begin() + (n - 1));
          if (g.odd()) {
            if (t == 0.0) throw std::invalid_argument("orbit_of_tempered: " + to_string(rep) + " has singular character (nu = 0, m odd)");
            a.back() = abs(a.back());
          } else if (t == 0.0 && a.back().is_zero()) {
            throw std::invalid_argument("orbit_of_tempered: " + to_string(rep) + " has singular character");
          }
          a.push_back(t > 0.0 ? HalfInt(1) : HalfInt(0));
          return finish(rep, {OrbitFamily::NonElliptic, a, 1}, g, t);
        } else if constexpr (std::is_same_v<T, PiJ>) {
          const Group& g = r.ic.g;
          const int n = g.n();
          if (g.odd() || r.j != n - 1 || !r.ic.a.back().is_zero())
            throw std::invalid_argument("orbit_of_tempered: " + to_string(rep) + " is not tempered");
          std::vector<HalfInt> a = shifted_a(r.ic);
          return finish(rep, {OrbitFamily::NonElliptic, a, 1}, g, 0.0);
        } else {
          throw std::invalid_argument("orbit_of_tempered: " + to_string(rep) + " is not tempered");
        }
      },
      rep);
}

RepOrbitPair orbit_of_aq(const Aq& aq) {
  const Group& g = aq.g;
  const int n = g.n();
  const AqRange range = aq_param_range(aq.j, aq.lambda, g);
  if (!range.nonzero || !range.weakly_fair) throw std::invalid_argument("orbit_of_aq: A_q(lambda) is zero or not unitary");
  std::vector<HalfInt> a(n, HalfInt(0));
  const HalfInt shift = HalfInt::from_twice(g.m());
  for (int i = 1; i <= aq.j; ++i) a[i - 1] = aq.lambda[i - 1] + shift - i + 1;
  const OrbitFamily fam = g.odd() ? OrbitFamily::Elliptic : OrbitFamily::NonElliptic;
  return finish(RepLabel{aq}, {fam, a, 1}, g, 0.0);
}

ExactMomentImage exact_moment_image(const ExactOrbit& o, const Group& g) {
  return moment_image_of<HalfInt>(o.family, o.a, g, o.ns_sign);
}

ExactPOrbit orbit_of_prep(const Weight& tau, const Group& g, DufloMode mode) {
  const int rank = g.np() - 1;
  if (static_cast<int>(tau.size()) != rank)
    throw std::invalid_argument("orbit_of_prep: tau must have rank " + std::to_string(rank));
  require_dominant(tau, group_Mp(g), "orbit_of_prep: M'-type");
  const HalfInt shift = HalfInt::from_twice(g.m() - 1);
  ExactPOrbit p;
  p.depth = 1;
  if (mode.kind == DufloMode::AqMode) {
    for (int i = 1; i <= rank; ++i) {
      if (i >= mode.j) {
        if (!tau[i - 1].is_zero()) throw std::invalid_argument("orbit_of_prep: A_q mode needs tau to vanish from slot j");
        p.x.push_back(HalfInt(0));
      } else {
        p.x.push_back(tau[i - 1] + shift - i);
      }
    }
    return p;
  }
  for (int i = 1; i <= rank; ++i) p.x.push_back(tau[i - 1] + shift - i);
  if (g.odd() && rank > 0) {
    const HalfInt last = tau.back();
    p.x.back() = abs(last);
    const int s = last.sign() * (rank % 2 == 0 ? 1 : -1);
    p.pf_sign = s;
  }
  return p;
}

DufloReport verify_duflo(const RepLabel& rep, HalfInt candidate_bound) {
  const Group g = group_of(rep);
  DufloMode mode;
  RepOrbitPair pair;
  if (const Aq* aq = std::get_if<Aq>(&rep)) {
    mode = {DufloMode::AqMode, aq->j};
    pair = orbit_of_aq(*aq);
  } else {
    pair = orbit_of_tempered(rep);
  }
  const ExactMomentImage image = exact_moment_image(pair.exact, g);

  DufloReport rep_out{rep, {}, {}, {}, false, true, {}};
  rep_out.branch_set = branch(rep).components;
  std::sort(rep_out.branch_set.begin(), rep_out.branch_set.end());
  if (std::adjacent_find(rep_out.branch_set.begin(), rep_out.branch_set.end()) != rep_out.branch_set.end())
    rep_out.multiplicity_free = false;
  HalfInt top = 0;
  for (const Weight& w : rep_out.branch_set)
    for (HalfInt v : w) top = std::max(top, abs(v));
  if (candidate_bound < top)
    throw std::invalid_argument("verify_duflo: candidate bound " + candidate_bound.str() + " truncates the branching set (max entry " +
                                top.str() + ")");

  const LieType mp = group_Mp(g);
  const int rank = g.np() - 1;
  const HalfInt parity = parity_reference(rep);
  std::vector<HalfInt> firsts;
  if (rank > 0) {
    HalfInt lo = -candidate_bound;
    if (!same_parity(lo, parity)) lo += HalfInt::from_twice(1);
    for (HalfInt v = lo; v <= candidate_bound; v += 1) firsts.push_back(v);
  }
  std::mutex mu;
  std::vector<std::pair<Weight, ExactPOrbit>> hits;
  auto check = [&](const Weight& tau) {
    if (mode.kind == DufloMode::AqMode)
      for (int i = std::max(mode.j, 1); i <= rank; ++i)
        if (!tau[i - 1].is_zero()) return;
    const ExactPOrbit p = orbit_of_prep(tau, g, mode);
    if (image_contains(image, p)) {
      std::lock_guard<std::mutex> lock(mu);
      hits.emplace_back(tau, p);
    }
  };
  if (rank == 0) {
    check(Weight{});
  } else {
    parallel_for(firsts.size(), [&](std::size_t k) {
      Weight cur(rank);
      cur[0] = firsts[k];
      std::vector<Weight> taus;
      enumerate_tau(mp, candidate_bound, parity, 1, cur, taus);
      for (const Weight& t : taus) check(t);
    });
  }
  std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [tau, p] : hits) {
    rep_out.orbit_set.push_back(tau);
    rep_out.orbit_points.push_back(p);
  }

  std::set<Weight> bset(rep_out.branch_set.begin(), rep_out.branch_set.end());
  std::set<Weight> oset(rep_out.orbit_set.begin(), rep_out.orbit_set.end());
  for (const Weight& w : bset)
    if (!oset.count(w)) rep_out.mismatches.push_back("in branching only: " + to_string(w));
  for (const Weight& w : oset)
    if (!bset.count(w)) rep_out.mismatches.push_back("in moment image only: " + to_string(w));
  if (!rep_out.multiplicity_free) rep_out.mismatches.push_back("branching set has repeated M'-types");
  rep_out.matched = rep_out.mismatches.empty();
  return rep_out;
}

}  // namespace spinor
