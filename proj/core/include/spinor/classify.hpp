#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "spinor/weights.hpp"

namespace spinor {

enum class InflClass { Lambda0, LambdaJ, LambdaN, NonIntegral };

std::string to_string(InflClass c);

// Infinitesimal character gamma = (c_1, ..., c_{n-1}, a) read positionally:
// c_j = mu_j + n - j - 1/2 (m odd) or mu_j + n - j - 1 (m even), a = nu.
struct InflChar {
  Group g{2};
  Weight gamma;
  InflClass cls = InflClass::NonIntegral;
  int j = 0;       // index for LambdaJ
  Weight mu;       // M-weight (mu_1, ..., mu_{n-1})
  HalfInt nu;      // coefficient of lambda_0
  Weight a;        // gamma_sorted - rho for Lambda0 and LambdaN, empty otherwise
  friend bool operator==(const InflChar&, const InflChar&) = default;
};

InflChar classify_infl_char(const Weight& gamma, const Group& g);
// Lambda0 (or LambdaN) character whose sorted form is a + rho.
InflChar infl_char_from_a(const Weight& a, const Group& g);
// Positional gamma of the principal series I(mu, nu).
Weight ps_gamma(const Weight& mu, HalfInt nu, const Group& g);

enum class Sign { Plus, Minus };
inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

struct PiJ {
  InflChar ic;
  int j;
  friend bool operator==(const PiJ&, const PiJ&) = default;
};
// Discrete series for Lambda0, limits of discrete series for LambdaN.
struct DS {
  InflChar ic;
  Sign sign;
  bool limit() const { return ic.cls == InflClass::LambdaN; }
  friend bool operator==(const DS&, const DS&) = default;
};
// I(mu, nu lambda_0), nu canonicalized to Re > 0, or Re = 0 and Im >= 0.
struct PS {
  Group g{2};
  Weight mu;
  std::complex<double> nu;
  friend bool operator==(const PS&, const PS&) = default;
};
struct Aq {
  Group g{2};
  int j;
  Weight lambda;
  friend bool operator==(const Aq&, const Aq&) = default;
};
struct FinDim {
  InflChar ic;
  friend bool operator==(const FinDim&, const FinDim&) = default;
};

using RepLabel = std::variant<PiJ, DS, PS, Aq, FinDim>;

RepLabel make_pij(const InflChar& ic, int j);
RepLabel make_ds(const InflChar& ic, Sign s);
RepLabel make_ps(const Weight& mu, std::complex<double> nu, const Group& g);
RepLabel make_aq(int j, const Weight& lambda, const Group& g);

const Group& group_of(const RepLabel& rep);
std::string to_string(const RepLabel& rep);

std::vector<RepLabel> irreducibles_with_char(const InflChar& ic);
bool is_unitarizable(const RepLabel& rep);

struct AqRange {
  bool good = false;
  bool weakly_fair = false;
  bool nonzero = false;
};

AqRange aq_param_range(int j, const Weight& lambda, const Group& g);
RepLabel rep_from_aq(int j, const Weight& lambda, const Group& g);

}  // namespace spinor
