#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bms/bms_construct.hpp"
#include "bms/matrix_ops.hpp"
#include "bms/ortho_array.hpp"

namespace bms {

/// Raised when a matrix is not BMS; names the block where extraction broke
/// (0 when the failure is global).
class ExtractionError : public std::runtime_error {
 public:
  ExtractionError(std::size_t block, const std::string& what) : std::runtime_error(what), block_(block) {}
  std::size_t block() const { return block_; }

 private:
  std::size_t block_;
};

template <UnitMatrix M>
struct BlockSymbols {
  M kernel;                          // [1 | distinct rows of H_i], order q
  std::vector<Symbol> symbol_of_row; // 1-based index of the distinct row each row equals
};

/// Distinct rows of [1 | H_i] in first-occurrence order; they must number q and
/// form a Hadamard matrix, and every symbol must occur exactly q times.
template <UnitMatrix M>
BlockSymbols<M> distinct_block_rows(const BmsMatrix<M>& b, std::size_t block) {
  if (block < 1 || block > b.split_blocks())
    throw std::out_of_range("distinct_block_rows: block " + std::to_string(block) + " out of range");
  const M h = b.block(block).materialize();
  const std::size_t q = b.q;
  const std::string name = "block " + std::to_string(block);

  std::vector<std::size_t> reps;  // row index of each distinct row
  BlockSymbols<M> out;
  out.symbol_of_row.resize(h.rows());
  for (std::size_t u = 0; u < h.rows(); ++u) {
    std::size_t s = 0;
    while (s < reps.size() && !h.rows_equal(u, reps[s])) ++s;
    if (s == reps.size()) reps.push_back(u);
    out.symbol_of_row[u] = static_cast<Symbol>(s + 1);
  }
  if (reps.size() != q)
    throw ExtractionError(block, name + " has " + std::to_string(reps.size()) + " distinct rows, expected " + std::to_string(q));

  out.kernel = M(q, q);
  for (std::size_t s = 0; s < q; ++s)
    for (std::size_t w = 0; w + 1 < q; ++w) set_entry_exp(out.kernel, s, w + 1, entry_exp(h, reps[s], w));
  if (!is_hadamard(out.kernel))
    throw ExtractionError(block, name + ": distinct rows do not form a Hadamard matrix of order " + std::to_string(q));

  std::vector<std::size_t> counts(q, 0);
  for (Symbol s : out.symbol_of_row) ++counts[s - 1U];
  for (std::size_t s = 0; s < q; ++s)
    if (counts[s] != q)
      throw ExtractionError(block, name + ": symbol " + std::to_string(s + 1) + " occurs " + std::to_string(counts[s]) +
                                       " times, expected " + std::to_string(q));
  return out;
}

/// Recovers OA_1(q^2, q+1, q, 2) from a BMS matrix; row order is preserved.
template <UnitMatrix M>
OrthogonalArray extract_oa(const BmsMatrix<M>& b) {
  const unsigned q = b.q;
  if (b.order() != std::size_t{q} * q || b.split_blocks() != std::size_t{q} + 1)
    throw ExtractionError(0, "matrix does not have the BMS block layout for q = " + std::to_string(q));
  SymbolArray a(b.order(), q + 1, q);
  for (std::size_t c = 1; c <= b.split_blocks(); ++c) {
    const auto bs = distinct_block_rows(b, c);
    for (std::size_t u = 0; u < b.order(); ++u) a.set(u, c - 1, bs.symbol_of_row[u]);
  }
  OrthogonalArray oa({b.order(), q + 1, q, 2, 1}, std::move(a));
  if (!verify_oa(oa)) throw ExtractionError(0, "extracted array is not an orthogonal array of strength 2");
  return oa;
}

struct EquidistanceSummary {
  std::size_t q = 0;
  std::size_t size = 0;
  std::map<std::size_t, std::size_t> histogram;  // distance -> unordered pairs
  bool all_distances_q = false;
  bool size_is_q_squared = false;

  bool passed() const { return all_distances_q && size_is_q_squared; }
};

/// Pairwise distances must all equal q and the code must have q^2 words.
inline EquidistanceSummary equidistance_report(const SymbolArray& a) {
  EquidistanceSummary s;
  s.q = a.q();
  s.size = a.rows();
  s.histogram = distance_histogram(a);
  s.all_distances_q = s.histogram.size() == 1 && s.histogram.begin()->first == s.q;
  s.size_is_q_squared = s.size == s.q * s.q;
  return s;
}

template <UnitMatrix M>
EquidistanceSummary equidistance_of_extracted(const BmsMatrix<M>& b) {
  return equidistance_report(extract_oa(b));
}

}  // namespace bms
