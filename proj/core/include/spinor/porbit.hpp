#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace spinor {

// Coadjoint P-orbit in p*: depth, nonnegative singular values x and the
// sign of Pf(Z_{Y,beta}). Depth-zero orbits carry a label instead of x.
template <class T>
struct BasicPOrbit {
  int depth = 1;
  std::vector<T> x;
  int pf_sign = 0;
  std::string depth0_label;

  // Last singular value carrying the Pfaffian sign.
  T signed_last() const { return x.empty() ? T(0) : (pf_sign < 0 ? -x.back() : x.back()); }
  friend bool operator==(const BasicPOrbit&, const BasicPOrbit&) = default;
};

template <class T>
struct Interval {
  T lo{};
  T hi{};
  bool lo_open = false;
  bool hi_open = false;
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class PfRule { Plus, Minus, Both, Zero };

inline const char* to_string(PfRule r) {
  switch (r) {
    case PfRule::Plus: return "+";
    case PfRule::Minus: return "-";
    case PfRule::Both: return "both";
    case PfRule::Zero: return "0";
  }
  return "?";
}

// Image of the moment map: depth-one part as a product of intervals in x
// with a Pfaffian-sign rule, plus labels of depth-zero orbits.
template <class T>
struct BasicMomentImage {
  std::vector<Interval<T>> slots;
  PfRule pf_rule = PfRule::Zero;
  std::vector<std::string> depth0_labels;
  bool depth1 = true;
  friend bool operator==(const BasicMomentImage&, const BasicMomentImage&) = default;
};

template <class T>
bool in_interval(const Interval<T>& iv, T v, T tol) {
  const bool above = iv.lo_open ? v > iv.lo + tol : v >= iv.lo - tol;
  const bool below = iv.hi_open ? v < iv.hi - tol : v <= iv.hi + tol;
  return above && below;
}

template <class T>
bool image_contains(const BasicMomentImage<T>& im, const BasicPOrbit<T>& p, T tol = T(0)) {
  if (p.depth == 0)
    return std::find(im.depth0_labels.begin(), im.depth0_labels.end(), p.depth0_label) != im.depth0_labels.end();
  if (!im.depth1 || p.x.size() != im.slots.size()) return false;
  for (std::size_t i = 0; i < p.x.size(); ++i)
    if (!in_interval(im.slots[i], p.x[i], tol)) return false;
  switch (im.pf_rule) {
    case PfRule::Plus: return p.pf_sign == 1;
    case PfRule::Minus: return p.pf_sign == -1;
    case PfRule::Zero: return p.pf_sign == 0;
    case PfRule::Both: return true;
  }
  return false;
}

}  // namespace spinor
