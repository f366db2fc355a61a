#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bms/matrix_ops.hpp"
#include "bms/ortho_array.hpp"

namespace bms {

/// An order-q^2 matrix with the block layout [1 | H_1 | ... | H_{q+1}], each
/// H_i of width q-1. construct_bms guarantees the Hadamard property and an
/// all-ones first column; matrices read from elsewhere carry only the layout
/// until bms-verify says otherwise.
template <UnitMatrix M>
struct BmsMatrix {
  unsigned q = 0;
  M matrix;
  std::vector<std::size_t> block_widths;

  static std::vector<std::size_t> standard_widths(unsigned q) {
    std::vector<std::size_t> w{1};
    w.insert(w.end(), q + 1, q - 1);
    return w;
  }

  /// Wraps an order-q^2 matrix with the standard block widths.
  static BmsMatrix with_standard_blocks(unsigned q, M m) {
    if (q < 1) throw std::invalid_argument("BmsMatrix: q must be positive");
    const std::size_t order = std::size_t{q} * q;
    if (m.rows() != order || m.cols() != order)
      throw std::invalid_argument("BmsMatrix: matrix must be square of order q^2 = " + std::to_string(order));
    return BmsMatrix{q, std::move(m), standard_widths(q)};
  }

  std::size_t order() const { return matrix.rows(); }
  /// Number of splitting blocks H_1..H_{q+1}.
  std::size_t split_blocks() const { return block_widths.size() - 1; }
  /// Block 0 is the all-ones column; blocks 1..q+1 are H_1..H_{q+1}.
  ColumnBlock<M> block(std::size_t i) const { return blocks().at(i); }
  std::vector<ColumnBlock<M>> blocks() const { return column_blocks(matrix, std::span<const std::size_t>(block_widths)); }
  /// Half-subset splittability is only defined for even q.
  bool splittable() const { return q % 2 == 0; }
};

/// One row (1, r_i) of a normalized Hadamard matrix of order q.
template <UnitMatrix M>
struct HadamardRow {
  GaussInt lead;
  M r;  // 1 x (q - 1)
};

/// Splits a first-column-normalized Hadamard matrix into rows (1, r_i) and
/// checks r_i r_i^* = q - 1 and r_i r_j^* = -1 for i != j.
template <UnitMatrix M>
std::vector<HadamardRow<M>> split_hadamard_rows(const M& k) {
  if (k.rows() != k.cols() || k.cols() == 0) throw std::invalid_argument("split_hadamard_rows: matrix must be square and nonempty");
  if (!first_column_is_ones(k)) throw std::invalid_argument("split_hadamard_rows: first column is not normalized");
  const std::size_t q = k.rows();
  std::vector<HadamardRow<M>> out;
  out.reserve(q);
  for (std::size_t i = 0; i < q; ++i) {
    M r(1, q - 1);
    for (std::size_t w = 0; w + 1 < q; ++w) set_entry_exp(r, 0, w, entry_exp(k, i, w + 1));
    out.push_back({k.value(i, 0), std::move(r)});
  }
  // rows of K minus the leading column
  M tail(q, q - 1);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t w = 0; w + 1 < q; ++w) set_entry_exp(tail, i, w, entry_exp(k, i, w + 1));
  const auto qm1 = static_cast<std::int64_t>(q) - 1;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i; j < q; ++j)
      if (tail.row_inner(i, j) != GaussInt(i == j ? qm1 : -1))
        throw std::invalid_argument("split_hadamard_rows: rows " + std::to_string(i) + " and " + std::to_string(j) +
                                    " violate r_i r_j^* = -1");
  return out;
}

/// D~ = [1 | sum_s A_s (x) r_s]: row u, block c, sub-column w of D is r_{A[u,c]}[w].
template <UnitMatrix M>
BmsMatrix<M> construct_bms(const OrthogonalArray& a, const M& k) {
  const auto& p = a.params();
  const unsigned q = p.q;
  if (p.n_rows != std::size_t{q} * q || p.n_cols != q + 1 || p.strength != 2 || p.index != 1)
    throw std::invalid_argument("construct_bms: array must have parameters OA_1(q^2, q+1, q, 2)");
  if (k.rows() != q || k.cols() != q)
    throw std::invalid_argument("construct_bms: Hadamard order " + std::to_string(k.rows()) + " does not match q = " + std::to_string(q));
  if constexpr (std::same_as<M, SignMatrix>) {
    if (!(q == 1 || q == 2 || q % 4 == 0))
      throw std::invalid_argument("construct_bms: no real Hadamard matrix of order " + std::to_string(q));
  }
  if (!is_hadamard(k)) throw std::invalid_argument("construct_bms: second input is not a Hadamard matrix");
  if (!verify_oa(a)) throw std::invalid_argument("construct_bms: first input is not an orthogonal array");

  const M kn = normalize_first_column(k);
  const auto rows = split_hadamard_rows(kn);
  const std::size_t order = std::size_t{q} * q;
  M out(order, order);
  for (std::size_t u = 0; u < order; ++u)
    for (std::size_t c = 0; c <= q; ++c) {
      const M& r = rows[a(u, c) - 1U].r;
      const std::size_t base = 1 + c * (q - 1);
      for (std::size_t w = 0; w + 1 < q; ++w) {
        const unsigned e = entry_exp(r, 0, w);
        if (e != 0) set_entry_exp(out, u, base + w, e);
      }
    }
  return BmsMatrix<M>::with_standard_blocks(q, std::move(out));
}

/// The order-q^2 - 1 part D (everything but the leading column).
template <UnitMatrix M>
M strip_leading_column(const BmsMatrix<M>& b) {
  const auto blocks = b.blocks();
  return hconcat(std::span<const ColumnBlock<M>>(blocks).subspan(1));
}

}  // namespace bms
