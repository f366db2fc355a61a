// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "test_support.hpp"

using namespace bms;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& title, double limit_ms, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double ms = ms_since(t0);
  const bool in_time = limit_ms <= 0 || ms < limit_ms;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  char timing[96];
  if (limit_ms > 0)
    std::snprintf(timing, sizeof timing, "%.2f ms, limit %.0f ms%s", ms, limit_ms, in_time ? "" : " EXCEEDED");
  else
    std::snprintf(timing, sizeof timing, "%.2f ms", ms);
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << ": " << o.detail << " (" << timing << ")" << std::endl;
}

VerifyOptions mode(VerifyMode m, std::uint64_t samples = 0, std::optional<std::uint64_t> seed = std::nullopt) {
  VerifyOptions o;
  o.mode = m;
  o.samples = samples;
  o.seed = seed;
  return o;
}

// Distinct off-diagonal values over every q/2-subset (or the listed ones).
template <UnitMatrix M>
std::set<GaussInt> subset_values(const BmsMatrix<M>& b, const std::vector<std::vector<std::size_t>>& subsets) {
  std::set<GaussInt> vals;
  for (const auto& s : subsets)
    for (const auto& [v, n] : verify_subset_split(b, s).value_counts) vals.insert(v);
  return vals;
}

std::vector<std::vector<std::size_t>> all_subsets(unsigned q) {
  std::vector<std::vector<std::size_t>> out;
  for_each_combination(q + 1, q / 2, [&](const std::vector<std::size_t>& c) {
    std::vector<std::size_t> s;
    for (auto x : c) s.push_back(x + 1);
    out.push_back(s);
  });
  return out;
}

std::string show(const std::set<GaussInt>& vals) {
  std::ostringstream ss;
  ss << "{";
  bool first = true;
  for (const auto& v : vals) {
    ss << (first ? "" : ",") << v;
    first = false;
  }
  ss << "}";
  return ss.str();
}

bool real_pm(const std::set<GaussInt>& vals, std::int64_t a) {
  for (const auto& v : vals)
    if (v != GaussInt(a) && v != GaussInt(-a)) return false;
  return !vals.empty();
}

// Raw splittability evidence, ignoring the Hadamard and first-column gates.
template <UnitMatrix M>
bool raw_blockwise(const BmsMatrix<M>& b) {
  const auto c = verify_multi_splittable(b, mode(VerifyMode::blockwise));
  return c.blocks_ok() && c.unique_agreement_ok;
}
template <UnitMatrix M>
bool raw_exhaustive(const BmsMatrix<M>& b) {
  return verify_multi_splittable(b, mode(VerifyMode::exhaustive)).subsets_failed == 0;
}

struct Agreement {
  int cases = 0, verdict_mismatch = 0, raw_mismatch = 0, passes = 0;
  template <UnitMatrix M>
  void check(const BmsMatrix<M>& b) {
    const bool ex = verify_multi_splittable(b, mode(VerifyMode::exhaustive)).passed();
    const bool bw = verify_multi_splittable(b, mode(VerifyMode::blockwise)).passed();
    ++cases;
    passes += ex;
    verdict_mismatch += ex != bw;
    raw_mismatch += raw_exhaustive(b) != raw_blockwise(b);
  }
};

}  // namespace

int main() {
  // Fixture inputs are read up front so file IO is not charged to the criteria.
  const auto example_a = bms::test::example_oa();
  const auto example_h = bms::test::example_hadamard();
  const auto example_d = bms::test::example_bms();

  report(1, "fixture exactness", 10, [&] {
    const auto b = construct_bms(example_a, example_h);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 16; ++j) mismatches += b.matrix(i, j) != example_d.matrix(i, j);
    const bool shape = b.matrix.rows() == 16 && b.matrix.cols() == 16;
    return Outcome{shape && mismatches == 0, std::to_string(mismatches) + " mismatches in 256 entries"};
  });

  report(2, "multi-splittability q=4", 10, [&] {
    const auto c = verify_multi_splittable(example_d, mode(VerifyMode::exhaustive));
    const auto vals = subset_values(example_d, all_subsets(4));
    const bool ok = c.passed() && c.subsets_checked == 10 && real_pm(vals, 2);
    return Outcome{ok, std::to_string(c.subsets_checked) + " subsets, " + std::to_string(c.subsets_failed) +
                           " failed, values " + show(vals)};
  });

  report(3, "scale q=8", 5000, [&] {
    const auto a = oa_from_field(field_new(8));
    const auto b = construct_bms(a, sylvester(3));
    const bool had = is_hadamard(b.matrix);
    const auto c = verify_multi_splittable(b, mode(VerifyMode::exhaustive));
    const auto vals = subset_values(b, all_subsets(8));
    const bool round = canonical_relabel(extract_oa(b)) == canonical_relabel(a);
    const bool ok = had && c.passed() && c.subsets_checked == 126 && real_pm(vals, 4) && round;
    return Outcome{ok, std::string("hadamard ") + (had ? "yes" : "no") + ", " + std::to_string(c.subsets_checked) +
                           " subsets, values " + show(vals) + ", roundtrip " + (round ? "equal" : "DIFFERENT")};
  });

  report(4, "scale q=16", 60000, [&] {
    const auto b = construct_bms(oa_from_field(field_new(16)), sylvester(4));
    const auto bw = verify_multi_splittable(b, mode(VerifyMode::blockwise));
    const std::uint64_t seed = 20240516;
    const auto sc = verify_multi_splittable(b, mode(VerifyMode::sampled, 500, seed));
    // the same 500 subsets again, to collect the value set
    std::minstd_rand rng(static_cast<std::minstd_rand::result_type>(seed));
    std::vector<std::vector<std::size_t>> subsets;
    for (int i = 0; i < 500; ++i) subsets.push_back(detail::sample_subset(rng, 17, 8));
    const auto vals = subset_values(b, subsets);
    const auto blocks_ok = std::count(bw.block_gram_ok.begin(), bw.block_gram_ok.end(), true);
    const bool ok = bw.passed() && bw.block_gram_ok.size() == 17 && sc.passed() && sc.subsets_checked == 500 && real_pm(vals, 8);
    return Outcome{ok, std::to_string(blocks_ok) + "/17 blocks, " + std::to_string(sc.subsets_checked) +
                           " sampled subsets (seed " + std::to_string(seed) + "), values " + show(vals)};
  });

  report(5, "quaternary q=2 and q=4", 100, [&] {
    const auto b2 = construct_bms(oa_from_field(field_new(2)), quaternary_seed());
    const auto k4 = quaternary_tensor_hadamard(2);
    bool has_i = false;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) has_i = has_i || k4.exp(i, j) % 2 == 1;
    const auto b4 = construct_bms(oa_from_field(field_new(4)), k4);
    const auto c2 = verify_multi_splittable(b2, mode(VerifyMode::exhaustive));
    const auto c4 = verify_multi_splittable(b4, mode(VerifyMode::exhaustive));
    const auto v2 = subset_values(b2, all_subsets(2));
    const auto v4 = subset_values(b4, all_subsets(4));
    bool moduli = true;
    for (const auto& v : v2) moduli = moduli && v.norm() == 1;
    for (const auto& v : v4) moduli = moduli && v.norm() == 4;
    const bool ok = b2.order() == 4 && b4.order() == 16 && is_hadamard(b2.matrix) && is_hadamard(b4.matrix) && has_i &&
                    c2.passed() && c4.passed() && moduli;
    return Outcome{ok, "order 4 values " + show(v2) + ", order 16 values " + show(v4) + ", K with +-i: " + (has_i ? "yes" : "no")};
  });

  report(6, "indicator identities", 10000, [&] {
    int oa_ok = 0, oa_total = 0;
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
      const auto r = check_lemma_identities(oa_from_field(field_new(q)));
      oa_ok += r.same_symbol_identity && r.cross_symbol_identity && r.distance_identity;
      ++oa_total;
    }
    std::mt19937_64 rng(1000);
    int rand_ok = 0, rand_total = 0, non_oa = 0;
    while (rand_total < 1000) {
      const std::size_t n = 1 + rng() % 32, k = 1 + rng() % 32;
      const unsigned q = 2 + static_cast<unsigned>(rng() % 7);
      const auto a = bms::test::random_array(rng, n, k, q);
      const auto r = check_lemma_identities(a);
      rand_ok += r.distance_identity;
      non_oa += !(r.oa_shape && r.same_symbol_identity);
      ++rand_total;
    }
    const bool ok = oa_ok == oa_total && rand_ok == rand_total && non_oa == rand_total;
    return Outcome{ok, std::to_string(oa_ok) + "/" + std::to_string(oa_total) + " generated arrays, distance identity on " +
                           std::to_string(rand_ok) + "/" + std::to_string(rand_total) + " random non-OA arrays"};
  });

  report(7, "bound suite", 0, [&] {
    int rao = 0, attained = 0, total = 0, deletions = 0, deletions_ok = 0;
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
      const auto a = oa_from_field(field_new(q));
      ++total;
      rao += rao_bound(q + 1, q, 1) == a.rows() && a.rows() == std::size_t{q} * q;
      const auto r = equidistant_code_bound_check(a);
      attained += r.attained && r.is_oa && r.consistent && r.distance == std::optional<std::size_t>(q);
      for (std::size_t row = 0; row < a.rows(); ++row) {
        const auto c = equidistant_code_bound_check(a.without_row(row));
        ++deletions;
        deletions_ok += c.equidistant && c.size < c.bound && !c.attained && !c.is_oa && c.consistent;
      }
    }
    const bool ok = rao == total && attained == total && deletions_ok == deletions;
    return Outcome{ok, "Rao equality " + std::to_string(rao) + "/" + std::to_string(total) + ", bound attained " +
                           std::to_string(attained) + "/" + std::to_string(total) + ", unattained after " +
                           std::to_string(deletions_ok) + "/" + std::to_string(deletions) + " single-row deletions"};
  });

  report(8, "mode equivalence", 0, [&] {
    Agreement constructed, mutated, shuffled;
    const auto b4 = example_d;
    const auto b8 = construct_bms(oa_from_field(field_new(8)), sylvester(3));
    constructed.check(b4);
    constructed.check(construct_bms(oa_from_field(field_new(4)), quaternary_tensor_hadamard(2)));
    constructed.check(b8);

    std::mt19937_64 rng(8);
    std::set<std::pair<std::size_t, std::size_t>> distinct4;
    for (const auto* base : {&b4, &b8}) {
      const std::size_t n = base->order();
      for (int t = 0; t < 1000; ++t) {
        auto m = *base;
        const std::size_t i = rng() % n, j = rng() % n;
        if (n == 16) distinct4.insert({i, j});
        m.matrix.flip(i, j);
        mutated.check(m);
      }
    }

    const auto h = kron(sylvester(4), sylvester(0));
    for (int t = 0; t < 100; ++t) {
      std::vector<std::size_t> perm(15);
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng);
      SignMatrix p(16, 16);
      for (std::size_t i = 0; i < 16; ++i) {
        p.set(i, 0, h(i, 0));
        for (std::size_t j = 0; j < 15; ++j) p.set(i, j + 1, h(i, perm[j]));
      }
      shuffled.check(BmsMatrix<SignMatrix>::with_standard_blocks(4, p));
    }
    const int mism = constructed.verdict_mismatch + mutated.verdict_mismatch + shuffled.verdict_mismatch +
                     constructed.raw_mismatch + mutated.raw_mismatch + shuffled.raw_mismatch;
    const bool ok = mism == 0 && constructed.passes == constructed.cases && mutated.passes == 0;
    return Outcome{ok, std::to_string(constructed.cases) + " constructed (all pass), " + std::to_string(mutated.cases) +
                           " mutations (" + std::to_string(distinct4.size()) + " distinct at q=4), " +
                           std::to_string(shuffled.cases) + " shuffles (" + std::to_string(shuffled.passes) +
                           " pass), disagreements " + std::to_string(mism)};
  });

  report(9, "mutation sensitivity", 0, [&] {
    int caught4 = 0, total4 = 0;
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 1; j < 16; ++j) {
        auto m = example_d;
        m.matrix.flip(i, j);
        ++total4;
        caught4 += !verify_multi_splittable(m, mode(VerifyMode::exhaustive)).passed() &&
                   !verify_multi_splittable(m, mode(VerifyMode::blockwise)).passed();
      }
    const auto b8 = construct_bms(oa_from_field(field_new(8)), sylvester(3));
    std::mt19937_64 rng(9);
    int caught8 = 0, total8 = 0;
    for (int t = 0; t < 1000; ++t) {
      auto m = b8;
      m.matrix.flip(rng() % 64, 1 + rng() % 63);
      ++total8;
      caught8 += !verify_multi_splittable(m, mode(VerifyMode::exhaustive)).passed() &&
                 !verify_multi_splittable(m, mode(VerifyMode::blockwise)).passed();
    }
    const bool ok = total4 == 240 && caught4 == total4 && caught8 == total8;
    return Outcome{ok, "caught " + std::to_string(caught4) + "/" + std::to_string(total4) + " at q=4, " +
                           std::to_string(caught8) + "/" + std::to_string(total8) + " at q=8"};
  });

  report(10, "orders 36 and 100 out of reach", 0, [&] {
    int refused = 0;
    std::string msg;
    for (unsigned q : {6u, 10u}) {
      try {
        oa_from_field(field_new(q));
      } catch (const std::invalid_argument& e) {
        ++refused;
        msg += std::string(msg.empty() ? "" : "; ") + e.what();
      }
    }
    return Outcome{refused == 2, "refused: " + msg + "; nonexistence for these orders is not re-derived here"};
  });

  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " acceptance criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
