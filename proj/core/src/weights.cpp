#include "spinor/weights.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "spinor/parallel.hpp"

namespace spinor {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed half-integer '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("malformed half-integer '" + std::string(whole) + "'");
  std::int64_t v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("malformed half-integer '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > (std::int64_t{1} << 40)) throw std::out_of_range("half-integer out of range '" + std::string(whole) + "'");
  }
  return neg ? -v : v;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view raw) {
  const std::string_view s = trim(raw);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(trim(s.substr(0, slash)), raw);
    const std::int64_t den = parse_int(trim(s.substr(slash + 1)), raw);
    if (den == 1) return HalfInt(static_cast<long long>(num));
    if (den != 2) throw std::invalid_argument("not a half-integer '" + std::string(raw) + "'");
    return from_twice(num);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = s.substr(dot + 1);
    const std::string_view ipart = s.substr(0, dot);
    const bool neg = !ipart.empty() && ipart[0] == '-';
    std::int64_t whole = 0;
    if (!ipart.empty() && ipart != "-" && ipart != "+") whole = parse_int(ipart, raw);
    bool five = false;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(frac[i])))
        throw std::invalid_argument("malformed half-integer '" + std::string(raw) + "'");
      if (i == 0 && frac[i] == '5') {
        five = true;
      } else if (frac[i] != '0') {
        throw std::invalid_argument("not a half-integer '" + std::string(raw) + "'");
      }
    }
    std::int64_t t = 2 * std::llabs(whole) + (five ? 1 : 0);
    return from_twice(neg ? -t : t);
  }
  return HalfInt(static_cast<long long>(parse_int(s, raw)));
}

HalfInt HalfInt::from_double(double v, double tol) {
  const double t = std::round(2.0 * v);
  if (!std::isfinite(v) || std::abs(2.0 * v - t) > 2.0 * tol)
    throw std::invalid_argument("value " + std::to_string(v) + " is not a half-integer");
  return from_twice(static_cast<std::int64_t>(t));
}

std::int64_t HalfInt::to_int() const {
  if (!is_integer()) throw std::domain_error("half-integer " + str() + " is not an integer");
  return twice_ / 2;
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

Weight parse_weight(std::string_view csv) {
  Weight w;
  std::string_view s = trim(csv);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) return w;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    w.push_back(HalfInt::parse(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return w;
}

Weight weight_from_ints(const std::vector<long long>& v) { return Weight(v.begin(), v.end()); }

std::string to_string(const Weight& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ", " : "") << w[i].str();
  os << ')';
  return os.str();
}

std::vector<double> to_doubles(const Weight& w) {
  std::vector<double> out;
  out.reserve(w.size());
  for (HalfInt h : w) out.push_back(h.to_double());
  return out;
}

Group::Group(int m) : m_(m) {
  if (m <= 1) throw std::invalid_argument("Spin(m+1,1) requires m > 1, got m = " + std::to_string(m));
}

std::string to_string(LieType t) {
  return (t.series == Series::B ? "B" : "D") + std::to_string(t.rank);
}

LieType group_K(const Group& g) { return g.odd() ? LieType{Series::D, g.n()} : LieType{Series::B, g.n() - 1}; }
LieType group_M(const Group& g) { return g.odd() ? LieType{Series::B, g.n() - 1} : LieType{Series::D, g.n() - 1}; }
LieType group_Mp(const Group& g) { return g.odd() ? LieType{Series::D, g.n() - 1} : LieType{Series::B, g.n() - 2}; }

Weight rho(const Group& g) {
  Weight r;
  const int n = g.n();
  for (int i = 1; i <= n; ++i) r.push_back(g.odd() ? HalfInt::from_twice(2 * (n - i) + 1) : HalfInt(n - i));
  return r;
}

Weight rho(LieType t) {
  Weight r;
  for (int i = 1; i <= t.rank; ++i)
    r.push_back(t.series == Series::B ? HalfInt::from_twice(2 * (t.rank - i) + 1) : HalfInt(t.rank - i));
  return r;
}

bool is_dominant(const Weight& w, LieType t) {
  if (static_cast<int>(w.size()) != t.rank) return false;
  if (w.empty()) return true;
  for (HalfInt x : w)
    if (!same_parity(x, w[0])) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const HalfInt next = (t.series == Series::D && i + 2 == w.size()) ? abs(w[i + 1]) : w[i + 1];
    if (w[i] < next) return false;
  }
  if (t.series == Series::B && w.back() < 0) return false;
  return true;
}

void require_dominant(const Weight& w, LieType t, const char* what) {
  if (!is_dominant(w, t))
    throw std::invalid_argument(std::string(what) + " " + to_string(w) + " is not dominant for " + to_string(t));
}

bool interlaces(const Weight& a, const Weight& b, InterlaceStyle style) {
  const std::size_t r = a.size();
  switch (style) {
    case InterlaceStyle::BtoD:
      if (b.size() != r) throw std::invalid_argument("interlaces: B-to-D style needs equal ranks");
      break;
    case InterlaceStyle::DtoB:
    case InterlaceStyle::Shifted:
      if (r == 0 || b.size() + 1 != r) throw std::invalid_argument("interlaces: style needs rank(lower) = rank(upper) - 1");
      break;
  }
  if (!a.empty())
    for (HalfInt x : b)
      if (!same_parity(x, a[0])) return false;
  switch (style) {
    case InterlaceStyle::BtoD:
      for (std::size_t i = 0; i < r; ++i) {
        if (a[i] < (i + 1 == r ? abs(b[i]) : b[i])) return false;
        if (i + 1 < r && b[i] < a[i + 1]) return false;
      }
      return true;
    case InterlaceStyle::DtoB:
      for (std::size_t i = 0; i + 1 < r; ++i) {
        if (a[i] < b[i]) return false;
        if (b[i] < (i + 2 == r ? abs(a[i + 1]) : a[i + 1])) return false;
      }
      return true;
    case InterlaceStyle::Shifted:
      for (std::size_t i = 0; i + 1 < r; ++i)
        if (b[i] > a[i] + 1 || b[i] < a[i + 1] + 1) return false;
      return true;
  }
  return false;
}

InterlaceStyle level_style(const Group& g, Level level) {
  if (level == Level::MtoMp) return g.odd() ? InterlaceStyle::BtoD : InterlaceStyle::DtoB;
  return g.odd() ? InterlaceStyle::DtoB : InterlaceStyle::BtoD;
}

LieType level_upper(const Group& g, Level level) { return level == Level::MtoMp ? group_M(g) : group_K(g); }
LieType level_lower(const Group& g, Level level) { return level == Level::MtoMp ? group_Mp(g) : group_M(g); }

namespace {

void enumerate(const std::vector<std::pair<HalfInt, HalfInt>>& ranges, std::size_t i, Weight& cur,
               std::vector<Weight>& out) {
  if (i == ranges.size()) {
    out.push_back(cur);
    return;
  }
  for (HalfInt v = ranges[i].first; v <= ranges[i].second; v += 1) {
    cur[i] = v;
    enumerate(ranges, i + 1, cur, out);
  }
}

}  // namespace

std::vector<Weight> gt_branch(const Weight& mu, LieType upper, LieType lower) {
  require_dominant(mu, upper, "gt_branch: weight");
  std::vector<std::pair<HalfInt, HalfInt>> ranges;
  const int r = upper.rank;
  if (upper.series == Series::B && lower.series == Series::D && lower.rank == r) {
    for (int i = 0; i < r; ++i) {
      if (i + 1 < r) ranges.emplace_back(mu[i + 1], mu[i]);
      else ranges.emplace_back(-mu[i], mu[i]);
    }
  } else if (upper.series == Series::D && lower.series == Series::B && lower.rank == r - 1) {
    for (int i = 0; i + 1 < r; ++i) ranges.emplace_back(i + 2 == r ? abs(mu[i + 1]) : mu[i + 1], mu[i]);
  } else {
    throw std::invalid_argument("gt_branch: unsupported pair " + to_string(upper) + " > " + to_string(lower));
  }
  std::vector<Weight> out;
  Weight cur(ranges.size());
  enumerate(ranges, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Weight> gt_branch(const Weight& mu, const Group& g, Level level) {
  return gt_branch(mu, level_upper(g, level), level_lower(g, level));
}

BigInt weyl_dim(const Weight& mu, LieType t) {
  using boost::multiprecision::cpp_rational;
  require_dominant(mu, t, "weyl_dim: weight");
  const Weight r = rho(t);
  std::vector<cpp_rational> l, p;
  for (int i = 0; i < t.rank; ++i) {
    l.emplace_back(cpp_rational((mu[i] + r[i]).twice(), 2));
    p.emplace_back(cpp_rational(r[i].twice(), 2));
  }
  cpp_rational d = 1;
  for (int i = 0; i < t.rank; ++i)
    for (int j = i + 1; j < t.rank; ++j) d *= (l[i] * l[i] - l[j] * l[j]) / (p[i] * p[i] - p[j] * p[j]);
  if (t.series == Series::B)
    for (int i = 0; i < t.rank; ++i) d *= l[i] / p[i];
  if (denominator(d) != 1 || d <= 0) throw std::logic_error("weyl_dim: non-integral dimension");
  return numerator(d);
}

unsigned worker_count() {
  if (const char* env = std::getenv("SPINOR_BRANCH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace spinor
