#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "spinor/branching.hpp"
#include "spinor/classify.hpp"
#include "spinor/duflo.hpp"
#include "spinor/fourier.hpp"
#include "spinor/orbits.hpp"

namespace spinor::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct Report {
  json request = json::object();
  json result = json::object();
  std::vector<Check> checks;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::string> text;
  bool mismatch = false;
};

struct Options {
  std::string command;
  int m = 0;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::string rep, gamma, mu, lambda, sign, kind, a, b;
  int j = -1;
  std::string nu_re = "0";
  std::string nu_im = "0";
  std::string nu;
  std::string bound = "5";
  int samples = 200;
  double oracle_tol = 1e-9;
  double roundtrip_tol = 1e-8;
  std::string check = "all";
  int side = 64;
  double half_width = 12.0;
  double tol = -1.0;
  double tol_kbessel = 1e-6;
  double tol_poisson = 1e-6;
  double tol_riesz = 1e-6;
  double tol_f = 1e-5;
  double tol_conv = 1e-3;
  double tol_ktype = 5e-2;
};

// Half-integers print exactly; other reals print with round-trip precision.
std::string num_str(double v) {
  if (std::isfinite(v)) {
    const double t = std::round(2.0 * v);
    if (std::abs(2.0 * v - t) <= 1e-12 * std::max(1.0, std::abs(v)) && std::abs(t) < 1e15)
      return HalfInt::from_twice(static_cast<std::int64_t>(t)).str();
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string real_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json weight_json(const Weight& w) {
  json out = json::array();
  for (HalfInt h : w) out.push_back(h.str());
  return out;
}

json halfints_json(const std::vector<HalfInt>& w) { return weight_json(Weight(w.begin(), w.end())); }

json reals_json(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(num_str(x));
  return out;
}

double parse_real(const std::string& s) {
  try {
    const auto slash = s.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    }
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    std::size_t u1 = 0, u2 = 0;
    const double p = std::stod(num, &u1), q = std::stod(den, &u2);
    if (u1 != num.size() || u2 != den.size() || q == 0.0) throw std::invalid_argument(s);
    return p / q;
  } catch (const std::logic_error&) {
    throw UsageError("malformed number '" + s + "'");
  }
}

Vec parse_vec(const std::string& csv) {
  std::vector<double> xs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) xs.push_back(parse_real(item));
  if (xs.empty()) throw UsageError("empty vector");
  return Vec::Map(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return Sign::Plus;
  if (s == "-" || s == "minus") return Sign::Minus;
  throw UsageError("sign must be + or -, got '" + s + "'");
}

void require(bool cond, const std::string& what) {
  if (!cond) throw UsageError(what);
}

RepLabel build_rep(const Options& o, json& req) {
  const Group g(o.m);
  req["rep"] = o.rep;
  if (o.rep == "ps") {
    require(!o.mu.empty(), "--mu is required for --rep ps");
    req["mu"] = o.mu;
    const double re = parse_real(o.nu_re), im = parse_real(o.nu_im);
    req["nu"] = {num_str(re), num_str(im)};
    return make_ps(parse_weight(o.mu), {re, im}, g);
  }
  if (o.rep == "pij" || o.rep == "ds" || o.rep == "findim") {
    require(!o.gamma.empty(), "--gamma is required for --rep " + o.rep);
    req["gamma"] = o.gamma;
    const InflChar ic = classify_infl_char(parse_weight(o.gamma), g);
    if (o.rep == "ds") {
      require(!o.sign.empty(), "--sign is required for --rep ds");
      req["sign"] = o.sign;
      return make_ds(ic, parse_sign(o.sign));
    }
    if (o.rep == "findim") return make_pij(ic, 0);
    require(o.j >= 0, "--j is required for --rep pij");
    req["j"] = o.j;
    return make_pij(ic, o.j);
  }
  if (o.rep == "aq") {
    require(o.j >= 0 && !o.lambda.empty(), "--j and --lambda are required for --rep aq");
    req["j"] = o.j;
    req["lambda"] = o.lambda;
    return make_aq(o.j, parse_weight(o.lambda), g);
  }
  throw UsageError("--rep must be one of ps, pij, ds, aq, findim");
}

void add_check(Report& r, std::string name, bool pass, double residual) {
  r.checks.push_back({std::move(name), pass, residual});
  if (!pass) r.mismatch = true;
}

// ---------------------------------------------------------------- classify

Report do_classify(const Options& o) {
  Report r;
  require(!o.gamma.empty(), "--gamma is required");
  r.request["gamma"] = o.gamma;
  const Group g(o.m);
  const InflChar ic = classify_infl_char(parse_weight(o.gamma), g);
  r.result["class"] = to_string(ic.cls);
  if (ic.cls == InflClass::LambdaJ) r.result["j"] = ic.j;
  r.result["mu"] = weight_json(ic.mu);
  r.result["nu"] = ic.nu.str();
  if (!ic.a.empty()) r.result["a"] = weight_json(ic.a);
  json irr = json::array();
  r.csv_header = {"label", "unitarizable"};
  r.text.push_back("class " + to_string(ic.cls) + " mu=" + to_string(ic.mu) + " nu=" + ic.nu.str());
  for (const RepLabel& rep : irreducibles_with_char(ic)) {
    const bool u = is_unitarizable(rep);
    irr.push_back({{"label", to_string(rep)}, {"unitarizable", u}});
    r.csv_rows.push_back({to_string(rep), u ? "true" : "false"});
    r.text.push_back("  " + to_string(rep) + (u ? "  unitarizable" : ""));
  }
  r.result["irreducibles"] = irr;
  return r;
}

// ---------------------------------------------------------------- branch

Report do_branch(const Options& o) {
  Report r;
  const RepLabel rep = build_rep(o, r.request);
  const Group g = group_of(rep);
  const BranchTable t = branch(rep);
  const LieType mp = group_Mp(g);
  r.result["rep"] = to_string(rep);
  json comps = json::array();
  for (const Weight& tau : t.components) {
    const std::string dim = tau.empty() ? "1" : weyl_dim(tau, mp).str();
    comps.push_back({{"tau", weight_json(tau)}, {"dim", dim}});
    std::vector<std::string> row;
    for (HalfInt h : tau) row.push_back(h.str());
    row.push_back(dim);
    r.csv_rows.push_back(std::move(row));
    r.text.push_back(to_string(tau) + "  dim " + dim);
  }
  r.result["components"] = comps;
  r.result["count"] = t.components.size();
  for (int i = 1; i <= mp.rank; ++i) r.csv_header.push_back("tau_" + std::to_string(i));
  r.csv_header.push_back("dim");

  std::set<Weight> uniq(t.components.begin(), t.components.end());
  add_check(r, "multiplicity-free", uniq.size() == t.components.size(),
            static_cast<double>(t.components.size() - uniq.size()));
  if (!std::holds_alternative<FinDim>(rep)) {
    std::vector<Weight> ps = psi(rep), bs = t.components;
    std::sort(ps.begin(), ps.end());
    std::sort(bs.begin(), bs.end());
    add_check(r, "psi-agreement", ps == bs, ps == bs ? 0.0 : 1.0);
  }
  if (const PS* p = std::get_if<PS>(&rep)) {
    BigInt sum = 0;
    for (const Weight& tau : t.components) sum += tau.empty() ? BigInt(1) : weyl_dim(tau, mp);
    const BigInt whole = p->mu.empty() ? BigInt(1) : weyl_dim(p->mu, group_M(g));
    add_check(r, "dimension-sum", sum == whole, static_cast<double>(whole - sum));
  }
  return r;
}

// ---------------------------------------------------------------- orbit-image

OrbitFamily parse_family(const std::string& s) {
  if (s == "elliptic") return OrbitFamily::Elliptic;
  if (s == "non-elliptic") return OrbitFamily::NonElliptic;
  if (s == "non-semisimple") return OrbitFamily::NonSemisimple;
  if (s == "zero") return OrbitFamily::Zero;
  throw UsageError("--kind must be elliptic, non-elliptic, non-semisimple or zero");
}

std::vector<double> signed_x(const OrbitParam& op, const BPoint& b, const POrbitDescriptor& d) {
  std::vector<double> x = d.x;
  if (op.family == OrbitFamily::NonElliptic && op.g.odd() && !x.empty() && b.b(op.g.n() - 1) < 0) x.back() = -x.back();
  return x;
}

double max_dx(const POrbitDescriptor& a, const POrbitDescriptor& b) {
  if (a.x.size() != b.x.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) d = std::max(d, std::abs(a.x[i] - b.x[i]));
  return d;
}

const char* pf_char(int s) { return s > 0 ? "+" : (s < 0 ? "-" : "0"); }

Report do_orbit_image(const Options& o) {
  Report r;
  const Group g(o.m);
  r.request["kind"] = o.kind;
  const OrbitFamily fam = parse_family(o.kind);
  Vec a;
  if (fam != OrbitFamily::Zero) {
    require(!o.a.empty(), "--a is required");
    r.request["a"] = o.a;
    a = parse_vec(o.a);
  }
  int ns_sign = 1;
  if (fam == OrbitFamily::NonSemisimple) {
    r.request["sign"] = o.sign.empty() ? "+" : o.sign;
    ns_sign = sign_value(parse_sign(o.sign.empty() ? "+" : o.sign));
  }
  const OrbitParam op = make_orbit(g, fam, a, ns_sign);
  const MomentImage im = moment_image(op);
  r.result["family"] = to_string(op.family);
  r.result["kind"] = to_string(op.kind);
  r.csv_header = {"slot", "lo", "hi", "lo_open", "hi_open"};
  for (std::size_t i = 0; i < im.slots.size(); ++i) {
    const auto& s = im.slots[i];
    const std::string key = "x" + std::to_string(i + 1);
    r.result[key] = {num_str(s.lo), num_str(s.hi)};
    if (s.lo_open || s.hi_open) r.result[key + "_open"] = {s.lo_open, s.hi_open};
    r.csv_rows.push_back({key, num_str(s.lo), num_str(s.hi), s.lo_open ? "true" : "false", s.hi_open ? "true" : "false"});
    r.text.push_back(key + " in " + (s.lo_open ? "(" : "[") + num_str(s.lo) + ", " + num_str(s.hi) + (s.hi_open ? ")" : "]"));
  }
  r.result["pf"] = to_string(im.pf_rule);
  r.result["depth1"] = im.depth1;
  r.result["depth0"] = im.depth0_labels;
  r.text.push_back(std::string("pf ") + to_string(im.pf_rule));
  for (const auto& l : im.depth0_labels) r.text.push_back("depth-zero " + l);
  if (op.family == OrbitFamily::Zero) return r;

  r.request["oracle_tol"] = o.oracle_tol;
  r.request["roundtrip_tol"] = o.roundtrip_tol;
  if (!o.b.empty()) {
    r.request["b"] = o.b;
    const BPoint bp{parse_vec(o.b)};
    const POrbitDescriptor d = moment_image_point(op, bp);
    const POrbitDescriptor p = pipeline_image_point(op, bp);
    const StabilizerType st = stabilizer_type(op, bp);
    r.result["point"] = {{"x", reals_json(d.x)}, {"pf", pf_char(d.pf_sign)}, {"signed_last", num_str(d.signed_last())}};
    r.result["stabilizer"] = {{"point", st.point}, {"image", st.image}, {"r", st.r}, {"s", st.s}};
    const double dx = max_dx(d, p);
    add_check(r, "pipeline-oracle", dx <= o.oracle_tol && d.pf_sign == p.pf_sign, dx);
    add_check(r, "image-contains", image_contains(im, d, 1e-9), 0.0);
    const double rt = (b_from_x(op, signed_x(op, bp, d)).b - bp.b).cwiseAbs().maxCoeff();
    add_check(r, "b-roundtrip", rt <= o.roundtrip_tol, rt);
    r.text.push_back("point x=" + reals_json(d.x).dump() + " pf " + pf_char(d.pf_sign));
    return r;
  }

  r.request["samples"] = o.samples;
  r.request["seed"] = o.seed;
  std::mt19937_64 rng(o.seed);
  double worst_dx = 0.0, worst_rt = 0.0;
  int sign_bad = 0, outside = 0;
  for (int s = 0; s < o.samples; ++s) {
    const BPoint bp = sample_b(op, rng);
    const POrbitDescriptor d = moment_image_point(op, bp);
    const POrbitDescriptor p = pipeline_image_point(op, bp);
    worst_dx = std::max(worst_dx, max_dx(d, p));
    sign_bad += d.pf_sign != p.pf_sign;
    outside += !image_contains(im, d, 1e-9);
    worst_rt = std::max(worst_rt, (b_from_x(op, signed_x(op, bp, d)).b - bp.b).cwiseAbs().maxCoeff());
  }
  add_check(r, "pipeline-oracle", worst_dx <= o.oracle_tol && sign_bad == 0, worst_dx);
  add_check(r, "image-contains", outside == 0, outside);
  add_check(r, "b-roundtrip", worst_rt <= o.roundtrip_tol, worst_rt);
  add_check(r, "reduced-space-singleton", reduced_space_singleton(op, o.samples, o.seed), 0.0);
  return r;
}

// ---------------------------------------------------------------- duflo-verify

Report do_duflo(const Options& o) {
  Report r;
  const RepLabel rep = build_rep(o, r.request);
  r.request["bound"] = o.bound;
  const DufloReport d = verify_duflo(rep, HalfInt::parse(o.bound));
  const RepOrbitPair pair = std::holds_alternative<Aq>(rep) ? orbit_of_aq(std::get<Aq>(rep)) : orbit_of_tempered(rep);
  r.result["rep"] = to_string(rep);
  r.result["orbit"] = {{"family", to_string(pair.exact.family)}, {"a", halfints_json(pair.exact.a)}, {"sign", pair.exact.ns_sign}};
  r.result["matched"] = d.matched;
  r.result["multiplicity_free"] = d.multiplicity_free;
  json bs = json::array(), os = json::array(), pts = json::array();
  for (const Weight& w : d.branch_set) bs.push_back(weight_json(w));
  for (const Weight& w : d.orbit_set) os.push_back(weight_json(w));
  for (const ExactPOrbit& p : d.orbit_points) pts.push_back(to_string(p));
  r.result["branch_set"] = bs;
  r.result["orbit_set"] = os;
  r.result["orbit_points"] = pts;
  r.result["mismatches"] = d.mismatches;

  std::set<Weight> all(d.branch_set.begin(), d.branch_set.end());
  all.insert(d.orbit_set.begin(), d.orbit_set.end());
  const int rank = group_Mp(group_of(rep)).rank;
  for (int i = 1; i <= rank; ++i) r.csv_header.push_back("tau_" + std::to_string(i));
  r.csv_header.push_back("in_branching");
  r.csv_header.push_back("in_image");
  for (const Weight& w : all) {
    std::vector<std::string> row;
    for (HalfInt h : w) row.push_back(h.str());
    const bool in_b = std::binary_search(d.branch_set.begin(), d.branch_set.end(), w);
    const bool in_o = std::find(d.orbit_set.begin(), d.orbit_set.end(), w) != d.orbit_set.end();
    row.push_back(in_b ? "true" : "false");
    row.push_back(in_o ? "true" : "false");
    r.csv_rows.push_back(std::move(row));
    r.text.push_back(to_string(w) + (in_b ? "  branching" : "") + (in_o ? "  image" : ""));
  }
  r.text.insert(r.text.begin(), to_string(rep) + (d.matched ? ": matched" : ": MISMATCH"));
  add_check(r, "duflo-match", d.matched, static_cast<double>(d.mismatches.size()));
  add_check(r, "multiplicity-free", d.multiplicity_free, 0.0);
  return r;
}

// ---------------------------------------------------------------- analysis-verify

double kbessel_recursion_residual() {
  double worst = 0.0;
  for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5})
    for (double x = 0.1; x <= 20.0 + 1e-12; x += 0.1) {
      const double h = 1e-5;
      const double d = (fourier::kbessel_tilde(a + 1.0, x + h) - fourier::kbessel_tilde(a + 1.0, x - h)) / (2.0 * h);
      const double want = -(x / 2.0) * fourier::kbessel_tilde(a, x);
      worst = std::max(worst, std::abs(d - want) / std::abs(want));
    }
  return worst;
}

double poisson_residual(int m_max) {
  double worst = 0.0;
  for (int m = 1; m <= m_max; ++m)
    for (double l : {-2.0, -3.0})
      for (double rho : {0.3, 1.0, 2.5}) {
        const double c = fourier::ft_poisson(l, m, rho);
        const double q = fourier::radial_ft_quadrature([&](double x) { return std::pow(1.0 + x * x, l); }, m, rho);
        worst = std::max(worst, std::abs(c - q) / std::abs(c));
      }
  return worst;
}

double f_formula_residual() {
  double worst = 0.0;
  fourier::RVec xi(3);
  for (const auto& v : {std::array<double, 3>{0.3, -0.7, 1.1}, std::array<double, 3>{1.5, 0.2, -0.4}, std::array<double, 3>{-0.1, 0.05, 0.2}}) {
    xi << v[0], v[1], v[2];
    for (int w = 1; w <= 5; ++w) {
      const auto c = fourier::f_formula_closed(w, 2, xi, 0, 1);
      const auto q = fourier::f_formula_quadrature(w, 2, xi, 0, 1);
      worst = std::max(worst, std::abs(c - q) / std::abs(c));
    }
  }
  return worst;
}

Report do_analysis(const Options& o) {
  Report r;
  r.request["check"] = o.check;
  const std::set<std::string> known = {"all", "kbessel", "poisson", "riesz", "f-formulas", "convolution", "lowest-ktype"};
  require(known.count(o.check) > 0, "--check must be one of all, kbessel, poisson, riesz, f-formulas, convolution, lowest-ktype");
  r.request["tolerances"] = {{"kbessel", o.tol_kbessel}, {"poisson", o.tol_poisson}, {"riesz", o.tol_riesz},
                             {"f-formulas", o.tol_f}, {"convolution", o.tol_conv}, {"lowest-ktype", o.tol_ktype}};
  auto want = [&](const std::string& c) { return o.check == "all" || o.check == c; };
  const fourier::GridSpec grid{o.side, o.half_width};
  if (want("kbessel")) {
    const double e = kbessel_recursion_residual();
    add_check(r, "kbessel-recursion", e <= o.tol_kbessel, e);
  }
  if (want("poisson")) {
    const double e = poisson_residual(3);
    add_check(r, "poisson-vs-quadrature", e <= o.tol_poisson, e);
  }
  if (want("riesz")) {
    const double e = std::max(fourier::riesz_pairing_residual(1.0, 3), fourier::riesz_pairing_residual(2.0, 3));
    add_check(r, "riesz-pairing", e <= o.tol_riesz, e);
  }
  if (want("f-formulas")) {
    const double e = f_formula_residual();
    add_check(r, "f-formulas", e <= o.tol_f, e);
  }
  if (want("convolution")) {
    r.request["side"] = o.side;
    r.request["half_width"] = o.half_width;
    std::vector<int> js = {0, 1};
    std::vector<double> nus = {0.5, 1.0};
    if (o.j >= 0) {
      js = {o.j};
      r.request["j"] = o.j;
    }
    if (!o.nu.empty()) {
      nus = {parse_real(o.nu)};
      r.request["nu"] = num_str(nus[0]);
    }
    for (int j : js)
      for (double nu : nus) {
        const double e = fourier::verify_convolution_identity({3, j, nu}, grid);
        add_check(r, "convolution j=" + std::to_string(j) + " nu=" + num_str(nu), e <= o.tol_conv, e);
      }
  }
  if (want("lowest-ktype")) {
    const double e = fourier::verify_lowest_ktype_dft(2, grid);
    add_check(r, "lowest-ktype-dft", e <= o.tol_ktype, e);
  }
  return r;
}

// ---------------------------------------------------------------- self-test

Report do_self_test(const Options&) {
  Report r;
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      const auto [pass, residual] = body();
      add_check(r, name, pass, residual);
    } catch (const std::exception& e) {
      add_check(r, name + " (" + e.what() + ")", false, INFINITY);
    }
  };
  guarded("classify rho(3) is Lambda0", [] {
    return std::pair{classify_infl_char(parse_weight("3/2,1/2"), Group(3)).cls == InflClass::Lambda0, 0.0};
  });
  guarded("branch DS(rho,-) = {(1)}", [] {
    const InflChar ic = classify_infl_char(parse_weight("3/2,1/2"), Group(3));
    return std::pair{branch_discrete(ic, Sign::Minus).components == std::vector<Weight>{parse_weight("1")}, 0.0};
  });
  guarded("orbit image elliptic (2,1)", [] {
    Vec a(2);
    a << 2, 1;
    const MomentImage im = moment_image(make_orbit(Group(3), OrbitFamily::Elliptic, a));
    const bool ok = im.slots.size() == 1 && im.slots[0].lo == 1.0 && im.slots[0].hi == 2.0 && im.pf_rule == PfRule::Plus;
    return std::pair{ok, 0.0};
  });
  guarded("elliptic point b=(1,0) has x=(1)", [] {
    Vec a(2), b(2);
    a << 2, 1;
    b << 1, 0;
    const POrbitDescriptor d = moment_image_point(make_orbit(Group(3), OrbitFamily::Elliptic, a), BPoint{b});
    const double e = std::abs(d.x.at(0) - 1.0);
    return std::pair{e <= 1e-12 && d.pf_sign == 1, e};
  });
  guarded("duflo DS(rho,-)", [] {
    const InflChar ic = classify_infl_char(parse_weight("3/2,1/2"), Group(3));
    return std::pair{verify_duflo(make_ds(ic, Sign::Minus), HalfInt(5)).matched, 0.0};
  });
  guarded("kbessel recursion", [] {
    const double e = kbessel_recursion_residual();
    return std::pair{e <= 1e-6, e};
  });
  guarded("poisson vs quadrature", [] {
    const double e = poisson_residual(3);
    return std::pair{e <= 1e-6, e};
  });
  guarded("riesz pairing", [] {
    const double e = fourier::riesz_pairing_residual(1.0, 3);
    return std::pair{e <= 1e-6, e};
  });
  return r;
}

// ---------------------------------------------------------------- output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit(const Report& r, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    json doc;
    json req = {{"subcommand", o.command}};
    if (o.m > 0) req["m"] = o.m;
    for (const auto& [k, v] : r.request.items()) req[k] = v;
    doc["request"] = req;
    doc["result"] = r.result;
    json checks = json::array();
    for (const Check& c : r.checks) {
      json residual = std::isfinite(c.residual) ? json(c.residual) : json(nullptr);
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", residual}});
    }
    doc["checks"] = checks;
    out << doc.dump(2) << "\n";
    return;
  }
  if (o.format == "csv") {
    auto row_out = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << "\n";
    };
    if (!r.csv_header.empty()) {
      row_out(r.csv_header);
      for (const auto& row : r.csv_rows) row_out(row);
    } else {
      row_out({"name", "pass", "residual"});
      for (const Check& c : r.checks) row_out({c.name, c.pass ? "true" : "false", real_str(c.residual)});
    }
    return;
  }
  for (const auto& line : r.text) out << line << "\n";
  for (const Check& c : r.checks) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", c.residual);
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual " << buf << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Branching laws, moment-map images and Duflo checks for Spin(m+1,1)", "spinor-cli"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub, bool need_m) {
    auto* m = sub->add_option("--m", o.m, "group Spin(m+1,1), m >= 2");
    if (need_m) m->required();
    sub->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  };
  auto rep_opts = [&](CLI::App* sub) {
    sub->add_option("--rep", o.rep, "ps, pij, ds, aq or findim")->required();
    sub->add_option("--gamma", o.gamma, "infinitesimal character, e.g. 3/2,1/2");
    sub->add_option("--mu", o.mu, "M-weight for principal series");
    sub->add_option("--nu-re", o.nu_re, "real part of nu for principal series");
    sub->add_option("--nu-im", o.nu_im, "imaginary part of nu for principal series");
    sub->add_option("--sign", o.sign, "+ or - for discrete series");
    sub->add_option("--j", o.j, "index j for pi_j and A_q");
    sub->add_option("--lambda", o.lambda, "A_q parameter");
  };

  auto* classify = app.add_subcommand("classify", "classify an infinitesimal character");
  common(classify, true);
  classify->add_option("--gamma", o.gamma, "infinitesimal character")->required();

  auto* branch_cmd = app.add_subcommand("branch", "restriction to P of an irreducible unitary representation");
  common(branch_cmd, true);
  rep_opts(branch_cmd);

  auto* orbit = app.add_subcommand("orbit-image", "moment-map image of a coadjoint orbit");
  common(orbit, true);
  orbit->add_option("--kind", o.kind, "elliptic, non-elliptic, non-semisimple or zero")->required();
  orbit->add_option("--a", o.a, "orbit parameters, comma separated");
  orbit->add_option("--sign", o.sign, "+ or - for the non-semisimple family");
  orbit->add_option("--b", o.b, "B-point; reports its image point and stabilizers");
  orbit->add_option("--samples", o.samples, "random B-points for the sampled checks")->check(CLI::PositiveNumber);
  orbit->add_option("--seed", o.seed, "seed for the sampled checks");
  orbit->add_option("--oracle-tol", o.oracle_tol, "tolerance on |x_closed - x_pipeline|");
  orbit->add_option("--roundtrip-tol", o.roundtrip_tol, "tolerance on the b -> x -> b round trip");

  auto* duflo = app.add_subcommand("duflo-verify", "compare the branching set with the moment-map image");
  common(duflo, true);
  rep_opts(duflo);
  duflo->add_option("--bound", o.bound, "bound on candidate M'-type entries");

  auto* analysis = app.add_subcommand("analysis-verify", "numerical checks of the Fourier identities");
  common(analysis, false);
  analysis->add_option("--check", o.check, "all, kbessel, poisson, riesz, f-formulas, convolution, lowest-ktype");
  analysis->add_option("--j", o.j, "convolution: wedge degree");
  analysis->add_option("--nu", o.nu, "convolution: nu");
  analysis->add_option("--side", o.side, "DFT grid points per axis")->check(CLI::PositiveNumber);
  analysis->add_option("--half-width", o.half_width, "DFT box half width")->check(CLI::PositiveNumber);
  analysis->add_option("--tol", o.tol, "override the tolerance of every selected check");
  analysis->add_option("--kbessel-tol", o.tol_kbessel, "relative error bound for the K-Bessel recursion");
  analysis->add_option("--poisson-tol", o.tol_poisson, "relative error bound for the Poisson transform");
  analysis->add_option("--riesz-tol", o.tol_riesz, "relative error bound for the Riesz pairing");
  analysis->add_option("--f-tol", o.tol_f, "relative error bound for the F-formulas");
  analysis->add_option("--conv-tol", o.tol_conv, "grid residual bound for the convolution identity");
  analysis->add_option("--ktype-tol", o.tol_ktype, "relative L2 bound for the lowest K-type transform");

  auto* self = app.add_subcommand("self-test", "run a short battery of known values");
  common(self, false);

  std::vector<const char*> argv{"spinor-cli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (o.m != 0 && o.m < 2) throw UsageError("--m must be at least 2");
    if (o.tol > 0.0) o.tol_kbessel = o.tol_poisson = o.tol_riesz = o.tol_f = o.tol_conv = o.tol_ktype = o.tol;
    Report r;
    if (classify->parsed()) {
      o.command = "classify";
      r = do_classify(o);
    } else if (branch_cmd->parsed()) {
      o.command = "branch";
      r = do_branch(o);
    } else if (orbit->parsed()) {
      o.command = "orbit-image";
      r = do_orbit_image(o);
    } else if (duflo->parsed()) {
      o.command = "duflo-verify";
      r = do_duflo(o);
    } else if (analysis->parsed()) {
      o.command = "analysis-verify";
      r = do_analysis(o);
    } else {
      o.command = "self-test";
      r = do_self_test(o);
    }
    emit(r, o, out);
    return r.mismatch ? kMismatch : kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace spinor::cli
