#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bms/gauss_int.hpp"
#include "bms/sign_matrix.hpp"

namespace bms {

/// Dense matrix over the fourth roots of unity. Entry (i, j) is i^e with the
/// exponent e stored in 2 bits; 32 entries per 64-bit word, padding zero.
class QuatMatrix {
 public:
  static constexpr std::size_t kPerWord = 32;

  QuatMatrix() = default;

  /// rows x cols, every entry 1.
  QuatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + kPerWord - 1) / kPerWord) {
    detail::checked_area(rows, cols);
    bits_.assign(rows_ * wpr_, 0);
  }

  /// Embeds a real sign matrix (exponents 0 and 2).
  explicit QuatMatrix(const SignMatrix& s) : QuatMatrix(s.rows(), s.cols()) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (s.negative(i, j)) set_exp_unchecked(i, j, 2);
  }

  /// Rows of exponents in {0,1,2,3}.
  static QuatMatrix from_exponents(const std::vector<std::vector<int>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    QuatMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("QuatMatrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m.set_exp(i, j, rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  unsigned exp(std::size_t i, std::size_t j) const {
    return static_cast<unsigned>((bits_[i * wpr_ + j / kPerWord] >> (2 * (j % kPerWord))) & 3U);
  }
  unsigned exp_at(std::size_t i, std::size_t j) const {
    check(i, j);
    return exp(i, j);
  }
  GaussInt value(std::size_t i, std::size_t j) const { return GaussInt::unit(exp(i, j)); }

  void set_exp(std::size_t i, std::size_t j, int e) {
    check(i, j);
    if (e < 0 || e > 3) throw std::invalid_argument("QuatMatrix: exponent must be in 0..3");
    set_exp_unchecked(i, j, static_cast<unsigned>(e));
  }
  void set_exp_unchecked(std::size_t i, std::size_t j, unsigned e) {
    std::uint64_t& w = bits_[i * wpr_ + j / kPerWord];
    const unsigned shift = 2 * (j % kPerWord);
    w = (w & ~(std::uint64_t{3} << shift)) | (std::uint64_t{e & 3U} << shift);
  }
  /// Multiplies entry (i, j) by i^e.
  void rotate(std::size_t i, std::size_t j, unsigned e) {
    check(i, j);
    set_exp_unchecked(i, j, (exp(i, j) + e) & 3U);
  }
  /// Multiplies row i by i^e.
  void rotate_row(std::size_t i, unsigned e) {
    for (std::size_t j = 0; j < cols_; ++j) set_exp_unchecked(i, j, (exp(i, j) + e) & 3U);
  }

  std::span<const std::uint64_t> row_words(std::size_t i) const {
    return {bits_.data() + i * wpr_, wpr_};
  }

  /// sum_c M[i,c] * conj(M[j,c]).
  GaussInt row_inner(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= rows_) throw std::out_of_range("QuatMatrix::row_inner: row index out of range");
    constexpr std::uint64_t kLow = 0x5555555555555555ULL;
    const std::uint64_t* a = bits_.data() + i * wpr_;
    const std::uint64_t* b = bits_.data() + j * wpr_;
    std::int64_t n1 = 0, n2 = 0, n3 = 0;
    for (std::size_t w = 0; w < wpr_; ++w) {
      const std::uint64_t al = a[w] & kLow, ah = (a[w] >> 1) & kLow;
      const std::uint64_t bl = b[w] & kLow, bh = (b[w] >> 1) & kLow;
      // lane-wise (a - b) mod 4
      const std::uint64_t dl = al ^ bl;
      const std::uint64_t dh = ah ^ bh ^ (~al & bl & kLow);
      n1 += std::popcount(dl & ~dh & kLow);
      n2 += std::popcount(~dl & dh & kLow);
      n3 += std::popcount(dl & dh);
    }
    const std::int64_t n0 = static_cast<std::int64_t>(cols_) - n1 - n2 - n3;
    return {n0 - n2, n1 - n3};
  }

  bool rows_equal(std::size_t i, std::size_t j) const {
    const auto a = row_words(i);
    const auto b = row_words(j);
    return std::equal(a.begin(), a.end(), b.begin());
  }

  bool is_real() const {
    constexpr std::uint64_t kLow = 0x5555555555555555ULL;
    for (std::uint64_t w : bits_)
      if (w & kLow) return false;
    return true;
  }

  /// Lossless conversion back to a sign matrix; throws if any entry is +-i.
  SignMatrix to_sign() const {
    SignMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const unsigned e = exp(i, j);
        if (e & 1U) throw std::domain_error("QuatMatrix::to_sign: entry is not real");
        if (e == 2) s.set_negative(i, j, true);
      }
    return s;
  }

  QuatMatrix transpose() const {
    QuatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.set_exp_unchecked(j, i, exp(i, j));
    return t;
  }

  friend bool operator==(const QuatMatrix&, const QuatMatrix&) = default;

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("QuatMatrix: index out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace bms
