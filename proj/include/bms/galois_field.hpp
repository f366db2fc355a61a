#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bms {

using Label = std::uint16_t;

struct PrimePower {
  unsigned p;
  unsigned m;
};

/// Returns (p, m) with q = p^m, or nullopt when q is not a prime power.
inline std::optional<PrimePower> as_prime_power(unsigned q) {
  if (q < 2) return std::nullopt;
  unsigned p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  unsigned m = 0;
  unsigned r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) return std::nullopt;
  return PrimePower{p, m};
}

namespace detail {

// Polynomials over GF(p) as coefficient vectors, lowest degree first.
using Poly = std::vector<unsigned>;

inline Poly poly_mod(Poly a, const Poly& monic, unsigned p) {
  const std::size_t d = monic.size() - 1;
  while (a.size() > d) {
    const unsigned lead = a.back() % p;
    const std::size_t shift = a.size() - 1 - d;
    if (lead != 0)
      for (std::size_t k = 0; k <= d; ++k) a[shift + k] = (a[shift + k] + (p - lead) * monic[k]) % p;
    a.pop_back();
  }
  return a;
}

inline bool poly_is_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](unsigned c) { return c == 0; });
}

// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `code`.
inline Poly monic_from_code(unsigned code, unsigned deg, unsigned p) {
  Poly f(deg + 1, 0);
  for (unsigned k = 0; k < deg; ++k) {
    f[k] = code % p;
    code /= p;
  }
  f[deg] = 1;
  return f;
}

inline unsigned ipow(unsigned b, unsigned e) {
  unsigned r = 1;
  while (e--) r *= b;
  return r;
}

inline bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d)
    for (unsigned code = 0; code < ipow(p, d); ++code)
      if (poly_is_zero(poly_mod(f, monic_from_code(code, d, p), p))) return false;
  return true;
}

}  // namespace detail

/// Irreducible polynomial used for GF(p^m): the monic one with the smallest
/// code sum_k c_k p^k over its lower coefficients. For q = 4, 8, 9, 16 this is
/// x^2+x+1, x^3+x+1, x^2+1 and x^4+x+1.
inline std::vector<unsigned> default_modulus(unsigned p, unsigned m) {
  for (unsigned code = 0; code < detail::ipow(p, m); ++code) {
    auto f = detail::monic_from_code(code, m, p);
    if (detail::is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

/// GF(p^m) as lookup tables. Element labels are 0..q-1; label sum_k c_k p^k
/// is the residue sum_k c_k x^k, so 0 is zero and 1 is one.
class FieldTable {
 public:
  static constexpr unsigned kMaxOrder = 256;

  explicit FieldTable(unsigned q) {
    if (q < 2 || q > kMaxOrder) throw std::out_of_range("field order " + std::to_string(q) + " out of supported range 2..256");
    const auto pp = as_prime_power(q);
    if (!pp) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    p_ = pp->p;
    m_ = pp->m;
    q_ = q;
    modulus_ = m_ == 1 ? std::vector<unsigned>{0, 1} : default_modulus(p_, m_);
    build();
  }

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned q() const { return q_; }
  unsigned order() const { return q_; }
  /// Monic modulus polynomial, lowest degree first (x for prime fields).
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Label add(Label a, Label b) const { return add_[a * q_ + b]; }
  Label mul(Label a, Label b) const { return mul_[a * q_ + b]; }
  Label neg(Label a) const { return neg_[a]; }
  Label sub(Label a, Label b) const { return add(a, neg(b)); }
  Label inv(Label a) const {
    if (a == 0 || a >= q_) throw std::domain_error("FieldTable::inv: zero has no inverse");
    return inv_[a];
  }

  /// Exhaustive check of the field axioms over all labels.
  bool check_axioms() const {
    for (Label a = 0; a < q_; ++a) {
      if (add(a, 0) != a || mul(a, 1) != a || add(a, neg(a)) != 0) return false;
      if (a != 0 && mul(a, inv_[a]) != 1) return false;
      for (Label b = 0; b < q_; ++b) {
        if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) return false;
        if (a != 0 && b != 0 && mul(a, b) == 0) return false;
        for (Label c = 0; c < q_; ++c) {
          if (add(add(a, b), c) != add(a, add(b, c))) return false;
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
          if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return false;
        }
      }
    }
    return true;
  }

  /// Multiplicative order of a nonzero element.
  unsigned element_order(Label a) const {
    if (a == 0) throw std::domain_error("FieldTable::element_order: zero");
    unsigned k = 1;
    for (Label x = a; x != 1; x = mul(x, a)) ++k;
    return k;
  }

 private:
  std::vector<unsigned> digits(unsigned label) const {
    std::vector<unsigned> d(m_, 0);
    for (unsigned k = 0; k < m_; ++k) {
      d[k] = label % p_;
      label /= p_;
    }
    return d;
  }
  unsigned label_of(const std::vector<unsigned>& d) const {
    unsigned v = 0;
    for (std::size_t k = d.size(); k-- > 0;) v = v * p_ + d[k];
    return v;
  }

  void build() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
      const auto da = digits(a);
      for (unsigned b = 0; b < q_; ++b) {
        const auto db = digits(b);
        std::vector<unsigned> s(m_);
        for (unsigned k = 0; k < m_; ++k) s[k] = (da[k] + db[k]) % p_;
        add_[a * q_ + b] = static_cast<Label>(label_of(s));

        detail::Poly prod(2 * m_ - 1, 0);
        for (unsigned i = 0; i < m_; ++i)
          for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        auto r = detail::poly_mod(prod, modulus_, p_);
        r.resize(m_, 0);
        mul_[a * q_ + b] = static_cast<Label>(label_of(r));
      }
    }
    for (unsigned a = 0; a < q_; ++a)
      for (unsigned b = 0; b < q_; ++b) {
        if (add_[a * q_ + b] == 0) neg_[a] = static_cast<Label>(b);
        if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Label>(b);
      }
  }

  unsigned p_ = 0;
  unsigned m_ = 0;
  unsigned q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Label> add_;
  std::vector<Label> mul_;
  std::vector<Label> neg_;
  std::vector<Label> inv_;
};

inline FieldTable field_new(unsigned q) { return FieldTable(q); }

/// Nonzero squares of an odd-order field, sorted by label.
inline std::vector<Label> quadratic_residues(const FieldTable& ft) {
  if (ft.p() == 2) throw std::invalid_argument("quadratic_residues: field order must be odd");
  std::set<Label> squares;
  for (Label x = 1; x < ft.q(); ++x) squares.insert(ft.mul(x, x));
  return {squares.begin(), squares.end()};
}

/// Quadratic character table: chi[x] is 0 at zero, +1 on nonzero squares, -1 otherwise.
inline std::vector<int> quadratic_character(const FieldTable& ft) {
  std::vector<int> chi(ft.q(), -1);
  chi[0] = 0;
  for (Label x : quadratic_residues(ft)) chi[x] = 1;
  return chi;
}

}  // namespace bms
