#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "spinor/halfint.hpp"

namespace spinor {

using Weight = std::vector<HalfInt>;

Weight parse_weight(std::string_view csv);
Weight weight_from_ints(const std::vector<long long>& v);
std::string to_string(const Weight& w);
std::vector<double> to_doubles(const Weight& w);

// G = Spin(m+1,1) with m > 1.
class Group {
 public:
  explicit Group(int m);
  int m() const { return m_; }
  int n() const { return (m_ + 2) / 2; }
  int np() const { return (m_ + 1) / 2; }
  bool odd() const { return m_ % 2 == 1; }
  friend bool operator==(const Group&, const Group&) = default;

 private:
  int m_;
};

enum class Series { B, D };

// B_r = Spin(2r+1), D_r = Spin(2r).
struct LieType {
  Series series;
  int rank;
  friend bool operator==(const LieType&, const LieType&) = default;
};

std::string to_string(LieType t);

LieType group_K(const Group& g);   // Spin(m+1)
LieType group_M(const Group& g);   // Spin(m)
LieType group_Mp(const Group& g);  // Spin(m-1)

// Infinitesimal character of the trivial representation, rank n.
Weight rho(const Group& g);
Weight rho(LieType t);

bool is_dominant(const Weight& w, LieType t);
void require_dominant(const Weight& w, LieType t, const char* what);

enum class InterlaceStyle {
  BtoD,     // a1 >= b1 >= ... >= a_r >= |b_r|, equal ranks
  DtoB,     // a1 >= b1 >= ... >= b_{r-1} >= |a_r|, rank drops by one
  Shifted,  // a_i + 1 >= b_i >= a_{i+1} + 1, rank drops by one
};

// Every style also requires b_i - a_1 to be an integer.
bool interlaces(const Weight& upper, const Weight& lower, InterlaceStyle style);

enum class Level { MtoMp, KtoM };

InterlaceStyle level_style(const Group& g, Level level);
LieType level_upper(const Group& g, Level level);
LieType level_lower(const Group& g, Level level);

// All dominant lower weights interlacing mu, sorted lexicographically.
std::vector<Weight> gt_branch(const Weight& mu, const Group& g, Level level);
std::vector<Weight> gt_branch(const Weight& mu, LieType upper, LieType lower);

using BigInt = boost::multiprecision::cpp_int;
BigInt weyl_dim(const Weight& mu, LieType t);

}  // namespace spinor
