#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bms/combinatorics.hpp"
#include "bms/dense_matrix.hpp"
#include "bms/galois_field.hpp"

namespace bms {

using Symbol = std::uint16_t;

/// N x k array over the symbols {1, ..., q}, row-major.
class SymbolArray {
 public:
  SymbolArray() = default;
  SymbolArray(std::size_t rows, std::size_t cols, unsigned q) : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 1) {
    if (q < 1 || q > std::numeric_limits<Symbol>::max()) throw std::invalid_argument("SymbolArray: bad symbol count");
  }

  static SymbolArray from_rows(const std::vector<std::vector<int>>& rows, unsigned q) {
    const std::size_t k = rows.empty() ? 0 : rows.front().size();
    SymbolArray a(rows.size(), k, q);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != k) throw std::invalid_argument("SymbolArray: ragged rows");
      for (std::size_t j = 0; j < k; ++j) a.set(i, j, rows[i][j]);
    }
    return a;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned q() const { return q_; }

  Symbol operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Symbol at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("SymbolArray: index out of range");
    return (*this)(i, j);
  }
  void set(std::size_t i, std::size_t j, int s) {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("SymbolArray: index out of range");
    if (s < 1 || static_cast<unsigned>(s) > q_)
      throw std::invalid_argument("SymbolArray: symbol " + std::to_string(s) + " outside 1.." + std::to_string(q_));
    data_[i * cols_ + j] = static_cast<Symbol>(s);
  }
  std::span<const Symbol> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  SymbolArray without_row(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("SymbolArray::without_row");
    SymbolArray out(rows_ - 1, cols_, q_);
    for (std::size_t i = 0, o = 0; i < rows_; ++i) {
      if (i == r) continue;
      std::copy(row(i).begin(), row(i).end(), out.data_.begin() + static_cast<std::ptrdiff_t>(o * cols_));
      ++o;
    }
    return out;
  }

  SymbolArray select_columns(std::span<const std::size_t> cols) const {
    SymbolArray out(rows_, cols.size(), q_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out.data_[i * cols.size() + j] = at(i, cols[j]);
    return out;
  }

  friend bool operator==(const SymbolArray&, const SymbolArray&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  unsigned q_ = 1;
  std::vector<Symbol> data_;
};

struct OaParams {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  unsigned q = 0;
  unsigned strength = 0;
  unsigned index = 1;

  friend bool operator==(const OaParams&, const OaParams&) = default;
};

/// A symbol array together with declared OA_lambda(N, k, q, t) parameters.
/// Construction enforces N = lambda * q^t and matching dimensions; the
/// strength property itself is checked by verify_oa.
class OrthogonalArray : public SymbolArray {
 public:
  OrthogonalArray() = default;
  OrthogonalArray(OaParams params, SymbolArray array) : SymbolArray(std::move(array)), params_(params) {
    if (rows() != params_.n_rows || cols() != params_.n_cols || q() != params_.q)
      throw std::invalid_argument("OrthogonalArray: array shape does not match declared parameters");
    std::uint64_t qt = 1;
    for (unsigned i = 0; i < params_.strength; ++i) {
      if (qt > std::numeric_limits<std::uint64_t>::max() / params_.q) throw std::overflow_error("OrthogonalArray: q^t overflow");
      qt *= params_.q;
    }
    if (params_.index == 0 || params_.n_rows != params_.index * qt)
      throw std::invalid_argument("OrthogonalArray: N must equal lambda * q^t");
    if (params_.strength > params_.n_cols) throw std::invalid_argument("OrthogonalArray: strength exceeds column count");
  }

  const OaParams& params() const { return params_; }
  const SymbolArray& array() const { return *this; }

  friend bool operator==(const OrthogonalArray&, const OrthogonalArray&) = default;

 private:
  OaParams params_;
};

/// OA_1(q^2, q+1, q, 2) from GF(q): row (a, b) in lexicographic label order,
/// column x (slope label) holds x*a + b, last column holds a; symbols are labels + 1.
inline OrthogonalArray oa_from_field(const FieldTable& ft) {
  const unsigned q = ft.q();
  SymbolArray a(std::size_t{q} * q, q + 1, q);
  for (Label x = 0; x < q; ++x)
    for (Label y = 0; y < q; ++y) {
      const std::size_t row = std::size_t{x} * q + y;
      for (Label slope = 0; slope < q; ++slope) a.set(row, slope, ft.add(ft.mul(slope, x), y) + 1);
      a.set(row, q, x + 1);
    }
  return OrthogonalArray({std::size_t{q} * q, q + 1, q, 2, 1}, std::move(a));
}

/// Exhaustive strength check: every t-subset of columns contains each t-tuple exactly lambda times.
inline bool verify_oa(const OrthogonalArray& oa) {
  const auto& p = oa.params();
  std::size_t tuples = 1;
  for (unsigned i = 0; i < p.strength; ++i) tuples *= p.q;
  bool ok = true;
  std::vector<std::size_t> counts(tuples);
  for_each_combination(p.n_cols, p.strength, [&](const std::vector<std::size_t>& cols) {
    if (!ok) return;
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t r = 0; r < p.n_rows; ++r) {
      std::size_t code = 0;
      for (std::size_t c : cols) code = code * p.q + (oa(r, c) - 1U);
      ++counts[code];
    }
    for (std::size_t c : counts)
      if (c != p.index) ok = false;
  });
  return ok;
}

/// A = sum_s s * A_s with disjoint 0/1 layers, one per symbol.
struct IndicatorStack {
  std::vector<IntMatrix> layers;  // layers[s - 1] is A_s

  std::size_t symbols() const { return layers.size(); }

  SymbolArray reconstruct() const {
    if (layers.empty()) throw std::logic_error("IndicatorStack: empty");
    const std::size_t n = layers.front().rows(), k = layers.front().cols();
    IntMatrix sum(n, k);
    for (std::size_t s = 0; s < layers.size(); ++s) sum += layers[s] * static_cast<std::int64_t>(s + 1);
    SymbolArray a(n, k, static_cast<unsigned>(layers.size()));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) a.set(i, j, static_cast<int>(sum(i, j)));
    return a;
  }

  /// Layers are 0/1 with disjoint supports covering every cell.
  bool is_partition() const {
    if (layers.empty()) return false;
    const std::size_t n = layers.front().rows(), k = layers.front().cols();
    IntMatrix cover(n, k);
    for (const auto& l : layers) {
      if (l.rows() != n || l.cols() != k) return false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (l(i, j) != 0 && l(i, j) != 1) return false;
      cover += l;
    }
    return cover == IntMatrix::ones(n, k);
  }
};

inline IndicatorStack indicator_decompose(const SymbolArray& a) {
  IndicatorStack st;
  st.layers.assign(a.q(), IntMatrix(a.rows(), a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) st.layers[a(i, j) - 1U](i, j) = 1;
  return st;
}

using DistanceMatrix = IntMatrix;

inline std::size_t hamming_distance(std::span<const Symbol> x, std::span<const Symbol> y) {
  std::size_t d = 0;
  for (std::size_t c = 0; c < x.size(); ++c) d += x[c] != y[c];
  return d;
}

inline DistanceMatrix hamming_distance_matrix(const SymbolArray& a) {
  DistanceMatrix d(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.rows(); ++j) {
      const auto v = static_cast<std::int64_t>(hamming_distance(a.row(i), a.row(j)));
      d(i, j) = v;
      d(j, i) = v;
    }
  return d;
}

/// Off-diagonal distance value -> number of unordered row pairs.
inline std::map<std::size_t, std::size_t> distance_histogram(const SymbolArray& a) {
  std::map<std::size_t, std::size_t> h;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.rows(); ++j) ++h[hamming_distance(a.row(i), a.row(j))];
  return h;
}

struct LemmaReport {
  /// sum_s A_s A_s^T = kJ - D; holds for every array.
  bool distance_identity = false;
  /// Array has the shape (q^2, q+1) the next two identities are stated for.
  bool oa_shape = false;
  /// sum_s A_s A_s^T = J + qI.
  bool same_symbol_identity = false;
  /// sum_{s != t} A_s A_t^T = q(J - I).
  bool cross_symbol_identity = false;

  bool all() const { return distance_identity && same_symbol_identity && cross_symbol_identity; }
};

/// Evaluates the indicator-product identities with exact integer matrix arithmetic.
inline LemmaReport check_lemma_identities(const SymbolArray& a) {
  LemmaReport rep;
  const std::size_t n = a.rows(), k = a.cols();
  const auto q = static_cast<std::int64_t>(a.q());
  const auto stack = indicator_decompose(a);
  std::vector<IntMatrix> transposed;
  transposed.reserve(stack.layers.size());
  for (const auto& l : stack.layers) transposed.push_back(l.transpose());

  IntMatrix same(n, n);
  for (std::size_t s = 0; s < stack.layers.size(); ++s) same += stack.layers[s] * transposed[s];

  const IntMatrix jn = IntMatrix::ones(n, n);
  const IntMatrix in = IntMatrix::identity(n);
  rep.distance_identity = same == jn * static_cast<std::int64_t>(k) - hamming_distance_matrix(a);

  rep.oa_shape = static_cast<std::int64_t>(n) == q * q && static_cast<std::int64_t>(k) == q + 1;
  if (!rep.oa_shape) return rep;

  rep.same_symbol_identity = same == jn + in * q;
  IntMatrix cross(n, n);
  for (std::size_t s = 0; s < stack.layers.size(); ++s)
    for (std::size_t t = 0; t < stack.layers.size(); ++t)
      if (s != t) cross += stack.layers[s] * transposed[t];
  rep.cross_symbol_identity = cross == (jn - in) * q;
  return rep;
}

/// Distinct pairwise Hamming distances after restricting to the given columns.
inline std::set<std::size_t> restricted_distances(const SymbolArray& a, std::span<const std::size_t> cols) {
  for (std::size_t c : cols)
    if (c >= a.cols()) throw std::out_of_range("restricted_distances: column out of range");
  const SymbolArray r = a.select_columns(cols);
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = i + 1; j < r.rows(); ++j) out.insert(hamming_distance(r.row(i), r.row(j)));
  return out;
}

/// Rao's lower bound sum_{i=0}^{e} C(k, i) (q - 1)^i on the row count of a strength-2e array.
inline std::uint64_t rao_bound(std::uint64_t k, std::uint64_t q, unsigned e) {
  if (q == 0) throw std::invalid_argument("rao_bound: q must be positive");
  std::uint64_t total = 0, power = 1;
  for (unsigned i = 0; i <= e; ++i) {
    const std::uint64_t term = binomial(k, i);
    if (power != 0 && term > std::numeric_limits<std::uint64_t>::max() / power) throw std::overflow_error("rao_bound overflow");
    const std::uint64_t add = term * power;
    if (total > std::numeric_limits<std::uint64_t>::max() - add) throw std::overflow_error("rao_bound overflow");
    total += add;
    if (i < e) {
      if (q - 1 != 0 && power > std::numeric_limits<std::uint64_t>::max() / (q - 1)) throw std::overflow_error("rao_bound overflow");
      power *= q - 1;
    }
  }
  return total;
}

struct EquidistanceReport {
  bool equidistant = false;
  std::optional<std::size_t> distance;  // common distance; empty for codes with fewer than two words
  std::size_t size = 0;
  std::size_t bound = 0;       // q^2
  bool length_is_q_plus_1 = false;
  bool attained = false;       // equidistant, length q+1, size = q^2
  bool is_oa = false;          // verify_oa under parameters (q^2, q+1, q, 2), lambda 1
  bool consistent = false;     // attained <=> is_oa
};

/// Equidistant-code size bound for length q+1 over q symbols, cross-checked
/// against the strength-2 orthogonal array property.
inline EquidistanceReport equidistant_code_bound_check(const SymbolArray& a) {
  EquidistanceReport r;
  const std::size_t q = a.q();
  r.size = a.rows();
  r.bound = q * q;
  r.length_is_q_plus_1 = a.cols() == q + 1;
  const auto hist = distance_histogram(a);
  r.equidistant = hist.size() <= 1;
  if (hist.size() == 1) r.distance = hist.begin()->first;
  r.attained = r.equidistant && r.length_is_q_plus_1 && r.size == r.bound;
  if (r.length_is_q_plus_1 && r.size == r.bound)
    r.is_oa = verify_oa(OrthogonalArray({r.bound, q + 1, static_cast<unsigned>(q), 2, 1}, a));
  r.consistent = r.attained == r.is_oa;
  return r;
}

/// Renames symbols column by column in order of first appearance (row order fixed).
inline SymbolArray canonical_relabel(const SymbolArray& a) {
  SymbolArray out(a.rows(), a.cols(), a.q());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::vector<int> map(a.q() + 1, 0);
    int next = 1;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      int& m = map[a(i, j)];
      if (m == 0) m = next++;
      out.set(i, j, m);
    }
  }
  return out;
}

inline OrthogonalArray canonical_relabel(const OrthogonalArray& a) {
  return OrthogonalArray(a.params(), canonical_relabel(a.array()));
}

/// Equal up to a per-column symbol bijection, with row order fixed.
inline bool equivalent_by_relabel(const SymbolArray& a, const SymbolArray& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && canonical_relabel(a) == canonical_relabel(b);
}

}  // namespace bms
