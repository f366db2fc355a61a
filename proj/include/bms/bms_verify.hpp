#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bms/bms_construct.hpp"
#include "bms/combinatorics.hpp"
#include "bms/matrix_ops.hpp"

namespace bms {

enum class VerifyMode { blockwise, exhaustive, sampled };

inline const char* to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::blockwise: return "blockwise";
    case VerifyMode::exhaustive: return "exhaustive";
    case VerifyMode::sampled: return "sampled";
  }
  return "?";
}

struct VerifyOptions {
  VerifyMode mode = VerifyMode::exhaustive;
  std::uint64_t samples = 0;           // sampled mode only
  std::optional<std::uint64_t> seed = std::nullopt;  // required in sampled mode
  bool with_agreement_matrix = true;   // attach B for the first subset checked
};

/// Recorded failures per list are capped; the counters are exact.
inline constexpr std::size_t kMaxRecordedFailures = 32;

struct PairFailure {
  std::vector<std::size_t> blocks;  // 1-based block numbers (one entry for block checks)
  std::size_t row_u = 0;
  std::size_t row_v = 0;
  GaussInt value;
};

using AgreementMatrix = DenseMatrix<std::uint8_t>;

struct SubsetResult {
  std::vector<std::size_t> subset;  // 1-based block numbers
  bool passed = true;
  std::map<GaussInt, std::size_t> value_counts;  // off-diagonal, unordered pairs
  std::uint64_t failure_count = 0;
  std::vector<PairFailure> failures;
  /// B with S = J - I - 2B, present when requested and every value is real +-q/2.
  std::optional<AgreementMatrix> agreement;
};

/// Evidence for (or against) balanced multi-splittability.
struct SplitCertificate {
  unsigned q = 0;
  VerifyMode mode = VerifyMode::blockwise;
  std::int64_t alpha = 0;  // q / 2
  bool first_column_ok = false;
  bool hadamard_ok = false;

  // blockwise evidence
  std::vector<bool> block_gram_ok;  // index b-1 for block b
  bool unique_agreement_ok = false;
  std::uint64_t block_failure_count = 0;
  std::vector<PairFailure> block_failures;

  // subset evidence
  std::uint64_t subsets_checked = 0;
  std::uint64_t subsets_failed = 0;
  std::vector<PairFailure> subset_failures;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::size_t>> agreement_subset;
  std::optional<AgreementMatrix> agreement_matrix_B;

  bool blocks_ok() const {
    return !block_gram_ok.empty() && std::all_of(block_gram_ok.begin(), block_gram_ok.end(), [](bool b) { return b; });
  }

  bool passed() const {
    if (!first_column_ok || !hadamard_ok) return false;
    if (mode == VerifyMode::blockwise) return blocks_ok() && unique_agreement_ok;
    return subsets_failed == 0 && subset_failures.empty();
  }
};

namespace detail {

template <UnitMatrix M>
std::vector<M> materialize_split_blocks(const BmsMatrix<M>& b) {
  if (b.block_widths.size() != std::size_t{b.q} + 2 || b.block_widths.front() != 1)
    throw std::invalid_argument("BMS block structure is malformed");
  for (std::size_t i = 1; i < b.block_widths.size(); ++i)
    if (b.block_widths[i] + 1 != b.q) throw std::invalid_argument("BMS block structure is malformed");
  const auto views = b.blocks();
  std::vector<M> out;
  out.reserve(views.size() - 1);
  for (std::size_t i = 1; i < views.size(); ++i) out.push_back(views[i].materialize());
  return out;
}

inline void record(std::vector<PairFailure>& list, std::uint64_t& count, PairFailure f) {
  ++count;
  if (list.size() < kMaxRecordedFailures) list.push_back(std::move(f));
}

}  // namespace detail

/// Per-block Gram criterion: every off-diagonal of H_b H_b^* lies in {q-1, -1},
/// and each pair of distinct rows agrees (value q-1) in exactly one block.
template <UnitMatrix M>
SplitCertificate verify_block_grams(const BmsMatrix<M>& b) {
  const auto blocks = detail::materialize_split_blocks(b);
  SplitCertificate cert;
  cert.q = b.q;
  cert.mode = VerifyMode::blockwise;
  cert.alpha = b.q / 2;
  cert.first_column_ok = first_column_is_ones(b.matrix);
  cert.hadamard_ok = is_hadamard(b.matrix);
  cert.block_gram_ok.assign(blocks.size(), true);
  cert.unique_agreement_ok = true;

  const GaussInt agree(static_cast<std::int64_t>(b.q) - 1);
  const GaussInt disagree(-1);
  const std::size_t n = b.order();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      std::size_t agreements = 0;
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        const GaussInt g = blocks[k].row_inner(u, v);
        if (g == agree) {
          ++agreements;
        } else if (g != disagree) {
          cert.block_gram_ok[k] = false;
          detail::record(cert.block_failures, cert.block_failure_count, {{k + 1}, u, v, g});
        }
      }
      if (agreements != 1) cert.unique_agreement_ok = false;
    }
  return cert;
}

/// Gram of the rows of [H_{t_1} ... H_{t_{q/2}}] must be (q/2)(q-1) I + (q/2) S with
/// S zero-diagonal and every off-diagonal entry a power of i.
template <UnitMatrix M>
SubsetResult verify_subset_split(const BmsMatrix<M>& b, std::span<const std::size_t> subset, bool want_agreement = false) {
  if (b.q % 2 != 0) throw std::invalid_argument("verify_subset_split: q must be even");
  if (subset.size() != b.q / 2)
    throw std::invalid_argument("verify_subset_split: subset size must be q/2 = " + std::to_string(b.q / 2));
  std::set<std::size_t> seen(subset.begin(), subset.end());
  if (seen.size() != subset.size() || *seen.begin() < 1 || *seen.rbegin() > std::size_t{b.q} + 1)
    throw std::invalid_argument("verify_subset_split: subset must hold distinct block numbers in 1..q+1");

  const auto views = b.blocks();
  std::vector<ColumnBlock<M>> chosen;
  for (std::size_t t : subset) chosen.push_back(views.at(t));
  const M sub = hconcat(std::span<const ColumnBlock<M>>(chosen));

  SubsetResult res;
  res.subset.assign(subset.begin(), subset.end());
  const std::int64_t alpha = b.q / 2;
  const std::size_t n = sub.rows();
  bool all_real = true;
  if (want_agreement) res.agreement.emplace(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const GaussInt g = sub.row_inner(u, v);
      ++res.value_counts[g];
      const bool ok = g.norm() == alpha * alpha && unit_phase(g) >= 0;
      if (!ok) {
        res.passed = false;
        detail::record(res.failures, res.failure_count, {res.subset, u, v, g});
      }
      if (!g.is_real()) all_real = false;
      if (res.agreement && g == GaussInt(-alpha)) {
        (*res.agreement)(u, v) = 1;
        (*res.agreement)(v, u) = 1;
      }
    }
  if (res.agreement && !(res.passed && all_real)) res.agreement.reset();
  return res;
}

namespace detail {

/// Uniform-ish k-subset of {1..n} from a minstd_rand stream: partial Fisher-Yates with modulo draws.
inline std::vector<std::size_t> sample_subset(std::minstd_rand& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{1});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng()) % (n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace detail

template <UnitMatrix M>
SplitCertificate verify_multi_splittable(const BmsMatrix<M>& b, const VerifyOptions& opt = {}) {
  if (b.q % 2 != 0) throw std::invalid_argument("verify_multi_splittable: q must be even");
  if (opt.mode == VerifyMode::blockwise) return verify_block_grams(b);

  detail::materialize_split_blocks(b);  // shape check only
  SplitCertificate cert;
  cert.q = b.q;
  cert.mode = opt.mode;
  cert.alpha = b.q / 2;
  cert.first_column_ok = first_column_is_ones(b.matrix);
  cert.hadamard_ok = is_hadamard(b.matrix);

  bool first = true;
  auto check = [&](std::span<const std::size_t> subset) {
    auto r = verify_subset_split(b, subset, first && opt.with_agreement_matrix);
    if (first && r.agreement) {
      cert.agreement_subset = r.subset;
      cert.agreement_matrix_B = std::move(r.agreement);
    }
    first = false;
    ++cert.subsets_checked;
    if (!r.passed) ++cert.subsets_failed;
    for (auto& f : r.failures)
      if (cert.subset_failures.size() < kMaxRecordedFailures) cert.subset_failures.push_back(std::move(f));
  };

  if (opt.mode == VerifyMode::exhaustive) {
    for_each_combination(std::size_t{b.q} + 1, b.q / 2, [&](const std::vector<std::size_t>& c) {
      std::vector<std::size_t> blocks(c.size());
      std::transform(c.begin(), c.end(), blocks.begin(), [](std::size_t x) { return x + 1; });
      check(blocks);
    });
  } else {
    if (!opt.seed) throw std::invalid_argument("verify_multi_splittable: sampled mode requires a seed");
    cert.seed = opt.seed;
    std::minstd_rand rng(static_cast<std::minstd_rand::result_type>(*opt.seed));
    for (std::uint64_t s = 0; s < opt.samples; ++s) check(detail::sample_subset(rng, std::size_t{b.q} + 1, b.q / 2));
  }
  return cert;
}

/// Column-Gram analysis of a row-submatrix H_1 (general two-value splittability).
struct GenericSplitReport {
  std::size_t ell = 0;
  std::vector<GaussInt> values;  // distinct off-diagonal values, sorted
  bool two_valued = false;
  GaussInt a;
  GaussInt b;
  /// adjacency(j, k) = 1 iff the (j, k) inner product equals a.
  AgreementMatrix adjacency;
};

template <UnitMatrix M>
GenericSplitReport verify_balanced_splittable(const M& h, std::span<const std::size_t> rows) {
  if (!is_hadamard(h)) throw std::invalid_argument("verify_balanced_splittable: input is not a Hadamard matrix");
  if (rows.empty()) throw std::invalid_argument("verify_balanced_splittable: row subset is empty");
  // Columns of H_1 become rows of its transpose.
  const M cols = select_rows(h, rows).transpose();
  GenericSplitReport rep;
  rep.ell = rows.size();
  const std::size_t n = cols.rows();
  std::set<GaussInt> vals;
  GramMatrix g(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      // (H_1^* H_1)(j, k) = sum_r conj(H_1[r, j]) H_1[r, k]
      g(j, k) = cols.row_inner(k, j);
      g(k, j) = g(j, k).conj();
      vals.insert(g(j, k));
      vals.insert(g(k, j));
    }
  rep.values.assign(vals.begin(), vals.end());

  if constexpr (std::same_as<M, SignMatrix>) {
    rep.two_valued = rep.values.size() <= 2;
    if (rep.two_valued && !rep.values.empty()) {
      rep.a = rep.values.back();
      rep.b = rep.values.front();
    }
  } else {
    // restricted quaternary case: all values alpha * i^e for one alpha >= 0
    bool ok = true;
    std::optional<std::int64_t> norm;
    for (const auto& v : rep.values) {
      if (v != GaussInt{} && unit_phase(v) < 0) ok = false;
      if (norm && *norm != v.norm()) ok = false;
      norm = v.norm();
    }
    rep.two_valued = ok;
    if (ok && !rep.values.empty()) {
      const auto it = std::find_if(rep.values.begin(), rep.values.end(), [](const GaussInt& v) { return unit_phase(v) == 0; });
      rep.a = it != rep.values.end() ? *it : rep.values.back();
      rep.b = -rep.a;
    }
  }
  rep.adjacency = AgreementMatrix(n, n);
  if (rep.two_valued)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (j != k && g(j, k) == rep.a) rep.adjacency(j, k) = 1;
  return rep;
}

}  // namespace bms
