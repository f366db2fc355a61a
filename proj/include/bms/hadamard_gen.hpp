#pragma once

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "bms/galois_field.hpp"
#include "bms/matrix_ops.hpp"

namespace bms {

/// Sylvester Hadamard matrix of order 2^k, entry (i, j) = (-1)^popcount(i & j).
/// First row and column are all ones.
inline SignMatrix sylvester(unsigned k) {
  if (k > 16) throw std::out_of_range("sylvester: exponent must be in 0..16");
  const std::size_t n = std::size_t{1} << k;
  SignMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::popcount(i & j) & 1) h.set_negative(i, j, true);
  return h;
}

/// Paley type I Hadamard matrix of order q + 1 for q = 3 (mod 4).
/// Index 0 is the point at infinity, index 1 + x is field element x.
inline SignMatrix paley_one(const FieldTable& ft) {
  const unsigned q = ft.q();
  if (q % 4 != 3) throw std::invalid_argument("paley_one: field order " + std::to_string(q) + " is not 3 mod 4");
  const auto chi = quadratic_character(ft);
  const std::size_t n = q + 1;
  SignMatrix h(n, n);
  for (std::size_t i = 1; i < n; ++i) h.set_negative(i, 0, true);
  for (Label x = 0; x < q; ++x)
    for (Label y = 0; y < q; ++y)
      if (x != y && chi[ft.sub(x, y)] < 0) h.set_negative(1 + x, 1 + y, true);
  return h;
}

inline QuatMatrix quaternary_embed(const SignMatrix& m) { return QuatMatrix(m); }

/// Kronecker product of two (quaternary) Hadamard matrices.
template <UnitMatrix A, UnitMatrix B>
QuatMatrix quat_tensor(const A& a, const B& b) {
  if (!is_hadamard(a) || !is_hadamard(b)) throw std::invalid_argument("quat_tensor: inputs must be Hadamard");
  return QuatMatrix(kron(a, b));
}

/// The order-2 quaternary Hadamard matrix [[1, 1], [i, -i]].
inline QuatMatrix quaternary_seed() { return QuatMatrix::from_exponents({{0, 0}, {1, 3}}); }

/// Quaternary Hadamard matrix of order 2^k (k >= 1) containing +-i:
/// sylvester(k - 1) tensored with [[1, 1], [i, -i]].
inline QuatMatrix quaternary_tensor_hadamard(unsigned k) {
  if (k < 1) throw std::out_of_range("quaternary_tensor_hadamard: order must be at least 2");
  return quat_tensor(quaternary_embed(sylvester(k - 1)), quaternary_seed());
}

}  // namespace bms
