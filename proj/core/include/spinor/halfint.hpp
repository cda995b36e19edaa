#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace spinor {

// An element of (1/2)Z stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int v) : twice_(2 * static_cast<std::int64_t>(v)) {}
  constexpr HalfInt(long v) : twice_(2 * static_cast<std::int64_t>(v)) {}
  constexpr HalfInt(long long v) : twice_(2 * static_cast<std::int64_t>(v)) {}

  static constexpr HalfInt from_twice(std::int64_t t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }
  // Accepts "3/2", "-1/2", "2", "+1", "2.5", "-0.5".
  static HalfInt parse(std::string_view s);
  // Nearest half-integer to v; throws if |v - result| > tol.
  static HalfInt from_double(double v, double tol = 1e-12);

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool is_half() const { return !is_integer(); }
  constexpr bool is_zero() const { return twice_ == 0; }
  constexpr int sign() const { return (twice_ > 0) - (twice_ < 0); }
  double to_double() const { return static_cast<double>(twice_) / 2.0; }
  // Integer value; throws if not an integer.
  std::int64_t to_int() const;
  std::string str() const;

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr HalfInt operator*(HalfInt a, std::int64_t k) { return from_twice(a.twice_ * k); }
  friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return from_twice(a.twice_ * k); }
  friend constexpr bool operator==(HalfInt a, HalfInt b) = default;
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) { return a.twice_ <=> b.twice_; }

 private:
  std::int64_t twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }
constexpr HalfInt half(std::int64_t numerator_over_two) { return HalfInt::from_twice(numerator_over_two); }
// True iff a - b is an integer.
constexpr bool same_parity(HalfInt a, HalfInt b) { return (a - b).is_integer(); }

std::ostream& operator<<(std::ostream& os, HalfInt h);

}  // namespace spinor

template <>
struct std::hash<spinor::HalfInt> {
  std::size_t operator()(spinor::HalfInt h) const noexcept { return std::hash<std::int64_t>{}(h.twice()); }
};
