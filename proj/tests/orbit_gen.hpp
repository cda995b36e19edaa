#pragma once

#include <algorithm>
#include <random>

#include "gen.hpp"
#include "spinor/orbits.hpp"

namespace spinor::gen {

// Non-increasing nonnegative values. Half the time they come from a coarse
// lattice so that repeated entries and zeros (singular orbits) show up.
inline std::vector<double> desc_values(std::mt19937_64& rng, int count) {
  std::vector<double> v(count);
  const bool lattice = uniform_int(rng, 0, 1) == 0;
  for (double& x : v) x = lattice ? 0.5 * uniform_int(rng, 0, 8) : uniform_real(rng, 0.05, 5.0);
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// A random non-Zero orbit with 2 <= m <= max_m.
inline OrbitParam random_orbit(std::mt19937_64& rng, int max_m = 11) {
  for (;;) {
    const Group g(uniform_int(rng, 2, max_m));
    const int n = g.n();
    OrbitFamily fam = OrbitFamily::NonElliptic;
    if (g.odd()) fam = pick(rng, std::vector<OrbitFamily>{OrbitFamily::Elliptic, OrbitFamily::NonElliptic, OrbitFamily::NonSemisimple});
    Vec a;
    int sign = 1;
    if (fam == OrbitFamily::NonSemisimple) {
      const auto v = desc_values(rng, n - 1);
      a = Vec::Map(v.data(), n - 1);
      sign = uniform_int(rng, 0, 1) == 0 ? 1 : -1;
    } else if (fam == OrbitFamily::Elliptic) {
      const auto v = desc_values(rng, n);
      a = Vec::Map(v.data(), n);
      if (uniform_int(rng, 0, 1) == 0) a(n - 1) = -a(n - 1);
    } else if (g.odd()) {
      const auto v = desc_values(rng, n);
      a = Vec::Map(v.data(), n);
      a(n - 1) = uniform_real(rng, 0.05, 5.0);
    } else {
      const auto v = desc_values(rng, n - 1);
      a = Vec(n);
      for (int i = 0; i < n - 1; ++i) a(i) = v[i];
      if (uniform_int(rng, 0, 1) == 0) a(n - 2) = -a(n - 2);
      a(n - 1) = uniform_int(rng, 0, 4) == 0 ? 0.0 : uniform_real(rng, 0.05, 5.0);
    }
    const OrbitParam o = make_orbit(g, fam, a, sign);
    if (o.family != OrbitFamily::Zero) return o;
  }
}

}  // namespace spinor::gen
