#pragma once

#include <cstdint>
#include <ostream>

namespace bms {

/// Exact Gaussian integer re + im*i. Used for all inner products, including
/// the real case where im stays zero.
struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  /// i^e for e in {0,1,2,3}.
  static constexpr GaussInt unit(unsigned e) {
    switch (e & 3U) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }

  constexpr GaussInt conj() const { return {re, -im}; }
  constexpr std::int64_t norm() const { return re * re + im * im; }
  constexpr bool is_real() const { return im == 0; }

  constexpr GaussInt& operator+=(const GaussInt& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  constexpr GaussInt& operator-=(const GaussInt& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  constexpr GaussInt& operator*=(const GaussInt& o) {
    const std::int64_t r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }

  friend constexpr GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
  friend constexpr GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
  friend constexpr GaussInt operator*(GaussInt a, const GaussInt& b) { return a *= b; }
  friend constexpr GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
  friend constexpr bool operator==(const GaussInt&, const GaussInt&) = default;

  /// Total order (re first, then im) so values can live in std::set / std::map.
  friend constexpr bool operator<(const GaussInt& a, const GaussInt& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussInt& z) {
    if (z.im == 0) return os << z.re;
    if (z.re == 0) return os << z.im << "i";
    return os << z.re << (z.im < 0 ? "-" : "+") << (z.im < 0 ? -z.im : z.im) << "i";
  }
};

/// If z = m * i^e with m > 0 returns e, otherwise -1. Zero has no phase.
constexpr int unit_phase(const GaussInt& z) {
  if (z.im == 0 && z.re > 0) return 0;
  if (z.re == 0 && z.im > 0) return 1;
  if (z.im == 0 && z.re < 0) return 2;
  if (z.re == 0 && z.im < 0) return 3;
  return -1;
}

}  // namespace bms
