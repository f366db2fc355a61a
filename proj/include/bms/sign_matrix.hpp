#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "bms/gauss_int.hpp"

namespace bms {

namespace detail {

inline constexpr std::size_t kWordBits = 64;
// Hard cap on entries per matrix; keeps row/column products well inside size_t.
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 32;

inline std::size_t checked_area(std::size_t rows, std::size_t cols) {
  if (cols != 0 && rows > std::numeric_limits<std::size_t>::max() / cols)
    throw std::length_error("matrix dimensions overflow");
  const std::size_t area = rows * cols;
  if (area > kMaxEntries) throw std::length_error("matrix too large");
  return area;
}

inline std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (b != 0 && a > std::numeric_limits<std::size_t>::max() / b)
    throw std::length_error("matrix dimensions overflow");
  return a * b;
}

}  // namespace detail

/// Dense matrix over {+1, -1}, one bit per entry (1 means -1). Rows are padded
/// to whole 64-bit words and the padding is always zero, so the inner product
/// of two rows is cols - 2 * popcount(x ^ y).
class SignMatrix {
 public:
  SignMatrix() = default;

  /// rows x cols, every entry +1.
  SignMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + detail::kWordBits - 1) / detail::kWordBits) {
    detail::checked_area(rows, cols);
    bits_.assign(rows_ * wpr_, 0);
  }

  /// The all-ones matrix J.
  static SignMatrix all_ones(std::size_t rows, std::size_t cols) { return SignMatrix(rows, cols); }
  /// The all-ones column vector.
  static SignMatrix ones_column(std::size_t n) { return SignMatrix(n, 1); }

  static SignMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    SignMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("SignMatrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }
  static SignMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<int>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool negative(std::size_t i, std::size_t j) const {
    return (bits_[i * wpr_ + j / detail::kWordBits] >> (j % detail::kWordBits)) & 1U;
  }
  int operator()(std::size_t i, std::size_t j) const { return negative(i, j) ? -1 : 1; }
  int at(std::size_t i, std::size_t j) const {
    check(i, j);
    return (*this)(i, j);
  }
  GaussInt value(std::size_t i, std::size_t j) const { return GaussInt((*this)(i, j)); }

  void set(std::size_t i, std::size_t j, int v) {
    check(i, j);
    if (v != 1 && v != -1) throw std::invalid_argument("SignMatrix: entry must be +1 or -1");
    set_negative(i, j, v == -1);
  }
  void set_negative(std::size_t i, std::size_t j, bool neg) {
    std::uint64_t& w = bits_[i * wpr_ + j / detail::kWordBits];
    const std::uint64_t mask = std::uint64_t{1} << (j % detail::kWordBits);
    w = neg ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t i, std::size_t j) {
    check(i, j);
    bits_[i * wpr_ + j / detail::kWordBits] ^= std::uint64_t{1} << (j % detail::kWordBits);
  }
  /// Multiplies row i by -1.
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) set_negative(i, j, !negative(i, j));
  }

  std::span<const std::uint64_t> row_words(std::size_t i) const {
    return {bits_.data() + i * wpr_, wpr_};
  }

  std::int64_t row_dot(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= rows_) throw std::out_of_range("SignMatrix::row_dot: row index out of range");
    const std::uint64_t* a = bits_.data() + i * wpr_;
    const std::uint64_t* b = bits_.data() + j * wpr_;
    std::int64_t diff = 0;
    for (std::size_t w = 0; w < wpr_; ++w) diff += std::popcount(a[w] ^ b[w]);
    return static_cast<std::int64_t>(cols_) - 2 * diff;
  }
  GaussInt row_inner(std::size_t i, std::size_t j) const { return GaussInt(row_dot(i, j)); }

  bool rows_equal(std::size_t i, std::size_t j) const {
    const auto a = row_words(i);
    const auto b = row_words(j);
    return std::equal(a.begin(), a.end(), b.begin());
  }

  SignMatrix transpose() const {
    SignMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (negative(i, j)) t.set_negative(j, i, true);
    return t;
  }

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("SignMatrix: index out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace bms
