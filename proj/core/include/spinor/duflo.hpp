#pragma once

#include <string>
#include <vector>

#include "spinor/branching.hpp"
#include "spinor/orbits.hpp"

namespace spinor {

using ExactPOrbit = BasicPOrbit<HalfInt>;
using ExactMomentImage = BasicMomentImage<HalfInt>;

// Orbit parameters in exact arithmetic. For the non-elliptic family a_n
// enters the image only through a_n > 0, so it is stored as 1 or 0 there.
struct ExactOrbit {
  OrbitFamily family = OrbitFamily::Zero;
  std::vector<HalfInt> a;
  int ns_sign = 1;
};

struct RepOrbitPair {
  RepLabel rep;
  ExactOrbit exact;
  OrbitParam orbit;
};

// DS -> elliptic, limit of DS -> non-semisimple, unitary tempered PS ->
// non-elliptic. For even m, pi_{n-1}(gamma) with a_n = 0 maps to t'_gamma.
RepOrbitPair orbit_of_tempered(const RepLabel& rep);
// A_q(lambda): elliptic (odd m) or t' (even m) with a'_i = lambda_i + m/2 - i + 1, i <= j.
RepOrbitPair orbit_of_aq(const Aq& aq);

ExactMomentImage exact_moment_image(const ExactOrbit& o, const Group& g);

struct DufloMode {
  enum Kind { Tempered, AqMode } kind = Tempered;
  int j = 0;
};

// P-orbit attached to the P-representation of M'-type tau.
ExactPOrbit orbit_of_prep(const Weight& tau, const Group& g, DufloMode mode);

struct DufloReport {
  RepLabel rep;
  std::vector<Weight> branch_set;
  std::vector<Weight> orbit_set;
  std::vector<ExactPOrbit> orbit_points;
  bool matched = false;
  bool multiplicity_free = true;
  std::vector<std::string> mismatches;
};

// Tempered reps use the tempered dictionary, A_q labels the A_q one.
DufloReport verify_duflo(const RepLabel& rep, HalfInt candidate_bound);

std::string to_string(const ExactPOrbit& p);

}  // namespace spinor
