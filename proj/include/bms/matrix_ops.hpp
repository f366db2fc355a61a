#pragma once

#include <concepts>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "bms/dense_matrix.hpp"
#include "bms/gauss_int.hpp"
#include "bms/quat_matrix.hpp"
#include "bms/sign_matrix.hpp"

namespace bms {

/// Matrices whose entries all have unit modulus: +-1 or powers of i.
template <typename M>
concept UnitMatrix = std::same_as<M, SignMatrix> || std::same_as<M, QuatMatrix>;

/// Exponent e with entry = i^e (sign matrices use 0 and 2).
inline unsigned entry_exp(const SignMatrix& m, std::size_t i, std::size_t j) { return m.negative(i, j) ? 2U : 0U; }
inline unsigned entry_exp(const QuatMatrix& m, std::size_t i, std::size_t j) { return m.exp(i, j); }

inline void set_entry_exp(SignMatrix& m, std::size_t i, std::size_t j, unsigned e) {
  if (e & 1U) throw std::domain_error("sign matrix entry must be +1 or -1");
  m.set_negative(i, j, (e & 3U) == 2U);
}
inline void set_entry_exp(QuatMatrix& m, std::size_t i, std::size_t j, unsigned e) { m.set_exp_unchecked(i, j, e & 3U); }

template <UnitMatrix M>
GaussInt row_inner(const M& m, std::size_t i, std::size_t j) {
  return m.row_inner(i, j);
}

/// Row Gram matrix M * M^*.
template <UnitMatrix M>
GramMatrix gram_rows(const M& m) {
  GramMatrix g(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    g(i, i) = m.row_inner(i, i);
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
      const GaussInt v = m.row_inner(i, j);
      g(i, j) = v;
      g(j, i) = v.conj();
    }
  }
  return g;
}

/// Square with pairwise orthogonal rows (HH^* = nI).
template <UnitMatrix M>
bool is_hadamard(const M& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.rows(); ++j)
      if (m.row_inner(i, j) != GaussInt{}) return false;
  return true;
}

/// Multiplies each row by the inverse of its first entry, making column 0 all ones.
template <UnitMatrix M>
M normalize_first_column(M m) {
  if (m.cols() == 0) throw std::invalid_argument("normalize_first_column: matrix has no columns");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const unsigned e = entry_exp(m, i, 0);
    if (e == 0) continue;
    if constexpr (std::same_as<M, SignMatrix>) {
      m.negate_row(i);
    } else {
      m.rotate_row(i, (4U - e) & 3U);
    }
  }
  return m;
}

template <UnitMatrix M>
bool first_column_is_ones(const M& m) {
  if (m.cols() == 0) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (entry_exp(m, i, 0) != 0) return false;
  return true;
}

/// Non-owning view of a contiguous column range.
template <UnitMatrix M>
struct ColumnBlock {
  const M* source = nullptr;
  std::size_t first_col = 0;
  std::size_t width = 0;

  std::size_t rows() const { return source->rows(); }
  std::size_t cols() const { return width; }
  unsigned exp(std::size_t i, std::size_t j) const { return entry_exp(*source, i, first_col + j); }
  GaussInt value(std::size_t i, std::size_t j) const { return GaussInt::unit(exp(i, j)); }

  /// Inner product of rows i, j restricted to this block.
  GaussInt row_inner(std::size_t i, std::size_t j) const {
    GaussInt acc;
    for (std::size_t c = 0; c < width; ++c) acc += GaussInt::unit(exp(i, c) + 4U - exp(j, c));
    return acc;
  }

  M materialize() const {
    M out(rows(), width);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < width; ++j) set_entry_exp(out, i, j, exp(i, j));
    return out;
  }
};

template <UnitMatrix M>
std::vector<ColumnBlock<M>> column_blocks(const M& m, std::span<const std::size_t> widths) {
  const std::size_t total = std::accumulate(widths.begin(), widths.end(), std::size_t{0});
  if (total != m.cols()) throw std::invalid_argument("column_blocks: widths do not sum to the column count");
  std::vector<ColumnBlock<M>> out;
  out.reserve(widths.size());
  std::size_t at = 0;
  for (std::size_t w : widths) {
    out.push_back({&m, at, w});
    at += w;
  }
  return out;
}

/// Horizontal concatenation of views over matrices with equal row counts.
template <UnitMatrix M>
M hconcat(std::span<const ColumnBlock<M>> blocks) {
  std::size_t rows = blocks.empty() ? 0 : blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw std::invalid_argument("hconcat: row count mismatch");
    cols += b.width;
  }
  M out(rows, cols);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b.width; ++j) {
        const unsigned e = b.exp(i, j);
        if (e != 0) set_entry_exp(out, i, at + j, e);
      }
    at += b.width;
  }
  return out;
}

template <UnitMatrix M>
M select_rows(const M& m, std::span<const std::size_t> rows) {
  M out(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= m.rows()) throw std::out_of_range("select_rows: row index out of range");
    for (std::size_t j = 0; j < m.cols(); ++j) set_entry_exp(out, r, j, entry_exp(m, rows[r], j));
  }
  return out;
}

/// Kronecker product. The result is a SignMatrix only when both factors are.
template <UnitMatrix A, UnitMatrix B>
auto kron(const A& a, const B& b) {
  using Out = std::conditional_t<std::same_as<A, SignMatrix> && std::same_as<B, SignMatrix>, SignMatrix, QuatMatrix>;
  Out out(detail::checked_mul(a.rows(), b.rows()), detail::checked_mul(a.cols(), b.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const unsigned ea = entry_exp(a, i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const unsigned e = (ea + entry_exp(b, k, l)) & 3U;
          if (e != 0) set_entry_exp(out, i * b.rows() + k, j * b.cols() + l, e);
        }
    }
  return out;
}

/// Dense Gaussian-integer copy, for identities that need ordinary matrix arithmetic.
template <UnitMatrix M>
GramMatrix to_dense(const M& m) {
  GramMatrix d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = GaussInt::unit(entry_exp(m, i, j));
  return d;
}

}  // namespace bms
