#pragma once

#include <random>
#include <vector>

#include "spinor/weights.hpp"

// Hand-rolled generators for property tests. Each property loop seeds its
// own engine so a failure reproduces from the seed in the test.
namespace spinor::gen {

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Every dominant weight of t whose entries lie in [-bound, bound]; integral
// or strictly half-integral according to `half`.
inline std::vector<Weight> all_dominant(LieType t, int bound, bool half) {
  std::vector<Weight> out;
  if (t.rank == 0) return {Weight{}};
  std::vector<HalfInt> values;
  for (std::int64_t tw = -2 * bound; tw <= 2 * bound; ++tw)
    if ((tw % 2 != 0) == half) values.push_back(HalfInt::from_twice(tw));
  Weight cur(t.rank);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == t.rank) {
      if (is_dominant(cur, t)) out.push_back(cur);
      return;
    }
    for (HalfInt v : values) {
      if (i > 0 && v > cur[i - 1]) break;
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(xs.size()) - 1))];
}

}  // namespace spinor::gen
