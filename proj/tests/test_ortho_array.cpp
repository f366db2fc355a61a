#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "test_support.hpp"

using namespace bms;

namespace {

const unsigned kPlaneOrders[] = {2, 3, 4, 5, 7, 8, 9, 16};

// Moves the last column to the front.
SymbolArray rotate_last_to_front(const SymbolArray& a) {
  std::vector<std::size_t> cols{a.cols() - 1};
  for (std::size_t c = 0; c + 1 < a.cols(); ++c) cols.push_back(c);
  return a.select_columns(cols);
}

OrthogonalArray with_entry(const OrthogonalArray& a, std::size_t i, std::size_t j, int s) {
  SymbolArray m = a.array();
  m.set(i, j, s);
  return OrthogonalArray(a.params(), m);
}

std::set<std::vector<int>> row_set(const SymbolArray& a) {
  std::set<std::vector<int>> out;
  for (std::size_t i = 0; i < a.rows(); ++i) out.insert(std::vector<int>(a.row(i).begin(), a.row(i).end()));
  return out;
}

}  // namespace

TEST(OaFromField, OrderTwo) {
  const auto a = oa_from_field(field_new(2));
  EXPECT_EQ(a.rows(), 4u);
  EXPECT_EQ(a.cols(), 3u);
  EXPECT_EQ(row_set(a), (std::set<std::vector<int>>{{1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 1}}));
  EXPECT_TRUE(verify_oa(a));
  EXPECT_TRUE(bms::test::brute_force_pairs(a));
}

TEST(OaFromField, OrderFourMatchesExampleArray) {
  const auto ours = oa_from_field(field_new(4));
  const auto given = bms::test::example_oa();
  // Same rows in the same order once the a-column is placed first.
  EXPECT_EQ(rotate_last_to_front(ours), given.array());
  EXPECT_TRUE(equivalent_by_relabel(rotate_last_to_front(ours), given.array()));
}

TEST(OaFromField, OrderEight) {
  const auto a = oa_from_field(field_new(8));
  EXPECT_EQ(a.rows(), 64u);
  EXPECT_EQ(a.cols(), 9u);
  EXPECT_TRUE(verify_oa(a));
  EXPECT_TRUE(bms::test::brute_force_pairs(a));
}

TEST(OaFromField, RefusesOrdersWithoutField) {
  EXPECT_THROW(oa_from_field(field_new(6)), std::invalid_argument);
  EXPECT_THROW(oa_from_field(field_new(10)), std::invalid_argument);
}

TEST(OrthogonalArrayType, ParameterChecks) {
  EXPECT_THROW(OrthogonalArray({4, 3, 2, 2, 1}, SymbolArray(5, 3, 2)), std::invalid_argument);
  EXPECT_THROW(OrthogonalArray({5, 3, 2, 2, 1}, SymbolArray(5, 3, 2)), std::invalid_argument);
  EXPECT_THROW(SymbolArray::from_rows({{1, 3}}, 2), std::invalid_argument);
  EXPECT_THROW(SymbolArray::from_rows({{0}}, 2), std::invalid_argument);
}

TEST(VerifyOa, Examples) {
  const auto given = bms::test::example_oa();
  EXPECT_TRUE(verify_oa(given));
  std::size_t i = 0, j = 0;
  for (; i < given.rows(); ++i) {
    for (j = 0; j < given.cols(); ++j)
      if (given(i, j) == 1) break;
    if (j < given.cols()) break;
  }
  EXPECT_FALSE(verify_oa(with_entry(given, i, j, 2)));
  EXPECT_FALSE(verify_oa(OrthogonalArray({4, 3, 2, 2, 1}, SymbolArray(4, 3, 2))));
}

TEST(IndicatorDecompose, Examples) {
  const auto one = indicator_decompose(SymbolArray::from_rows({{1}}, 2));
  ASSERT_EQ(one.symbols(), 2u);
  EXPECT_EQ(one.layers[0](0, 0), 1);
  EXPECT_EQ(one.layers[1](0, 0), 0);

  const auto st = indicator_decompose(bms::test::example_oa());
  EXPECT_TRUE(st.is_partition());
  for (const auto& l : st.layers)
    for (std::size_t c = 0; c < 5; ++c) {
      std::int64_t sum = 0;
      for (std::size_t r = 0; r < 16; ++r) sum += l(r, c);
      EXPECT_EQ(sum, 4);
    }

  const auto a8 = oa_from_field(field_new(8));
  EXPECT_EQ(indicator_decompose(a8).reconstruct(), a8.array());
}

TEST(HammingDistanceMatrix, Examples) {
  const auto d = hamming_distance_matrix(bms::test::example_oa());
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ(d(i, j), i == j ? 0 : 4);

  const auto dup = hamming_distance_matrix(SymbolArray::from_rows({{1, 2, 3}, {1, 2, 3}}, 3));
  EXPECT_EQ(dup(0, 1), 0);
  const auto far = hamming_distance_matrix(SymbolArray::from_rows({{1, 1, 1, 1, 1}, {2, 2, 2, 2, 2}}, 2));
  EXPECT_EQ(far(0, 1), 5);
}

TEST(LemmaIdentities, Examples) {
  const auto r = check_lemma_identities(bms::test::example_oa());
  EXPECT_TRUE(r.distance_identity);
  EXPECT_TRUE(r.same_symbol_identity);
  EXPECT_TRUE(r.cross_symbol_identity);
  EXPECT_TRUE(r.all());

  // Right shape, not an OA: only the unconditional identity survives.
  const auto bad = check_lemma_identities(SymbolArray(16, 5, 4));
  EXPECT_TRUE(bad.distance_identity);
  EXPECT_TRUE(bad.oa_shape);
  EXPECT_FALSE(bad.same_symbol_identity);
  EXPECT_FALSE(bad.cross_symbol_identity);

  EXPECT_TRUE(check_lemma_identities(oa_from_field(field_new(8))).all());
}

TEST(RestrictedDistances, Examples) {
  const auto a = bms::test::example_oa();
  const std::vector<std::size_t> two{0, 1}, all{0, 1, 2, 3, 4}, single{3};
  EXPECT_EQ(restricted_distances(a, two), (std::set<std::size_t>{1, 2}));
  EXPECT_EQ(restricted_distances(a, all), (std::set<std::size_t>{4}));
  const auto s1 = restricted_distances(a, single);
  for (auto v : s1) EXPECT_LE(v, 1u);
  const std::vector<std::size_t> bad{5};
  EXPECT_THROW(restricted_distances(a, bad), std::out_of_range);
}

TEST(RaoBound, Examples) {
  EXPECT_EQ(rao_bound(5, 4, 1), 16u);
  EXPECT_EQ(rao_bound(5, 4, 0), 1u);
  EXPECT_EQ(rao_bound(9, 8, 1), 64u);
  EXPECT_THROW(rao_bound(1000, 1u << 20, 5), std::overflow_error);
}

TEST(EquidistantBound, Examples) {
  const auto a = bms::test::example_oa();
  const auto full = equidistant_code_bound_check(a);
  EXPECT_TRUE(full.equidistant);
  EXPECT_EQ(full.distance, 4u);
  EXPECT_EQ(full.size, 16u);
  EXPECT_TRUE(full.attained);
  EXPECT_TRUE(full.is_oa);
  EXPECT_TRUE(full.consistent);

  const auto cut = equidistant_code_bound_check(a.without_row(7));
  EXPECT_TRUE(cut.equidistant);
  EXPECT_EQ(cut.size, 15u);
  EXPECT_FALSE(cut.attained);
  EXPECT_FALSE(cut.is_oa);
  EXPECT_TRUE(cut.consistent);

  const auto mixed = equidistant_code_bound_check(SymbolArray::from_rows({{1, 1, 1}, {1, 1, 2}, {2, 2, 2}}, 2));
  EXPECT_FALSE(mixed.equidistant);
  EXPECT_FALSE(mixed.distance.has_value());
}

TEST(CanonicalRelabel, Examples) {
  const auto col = canonical_relabel(SymbolArray::from_rows({{3}, {3}, {1}, {2}}, 3));
  EXPECT_EQ(col, SymbolArray::from_rows({{1}, {1}, {2}, {3}}, 3));
  const auto a = bms::test::example_oa();
  EXPECT_EQ(canonical_relabel(a), a);
}

// ---- properties

TEST(OaProperties, DistanceIdentityForEveryArray) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 32, k = 1 + rng() % 32;
    const unsigned q = 1 + static_cast<unsigned>(rng() % 6);
    const auto a = bms::test::random_array(rng, n, k, q);
    EXPECT_TRUE(check_lemma_identities(a).distance_identity);
  }
}

TEST(OaProperties, ConstructedPlanes) {
  for (unsigned q : kPlaneOrders) {
    const auto a = oa_from_field(field_new(q));
    EXPECT_TRUE(verify_oa(a)) << q;
    EXPECT_TRUE(bms::test::brute_force_pairs(a)) << q;
    EXPECT_TRUE(check_lemma_identities(a).all()) << q;
    EXPECT_EQ(distance_histogram(a), (std::map<std::size_t, std::size_t>{{q, q * q * (q * q - 1) / 2}})) << q;
    EXPECT_EQ(rao_bound(q + 1, q, 1), a.rows()) << q;
  }
}

TEST(OaProperties, EverySingleMutationBreaksSmallPlanes) {
  for (unsigned q : {2u, 3u, 4u}) {
    const auto a = oa_from_field(field_new(q));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        for (unsigned s = 1; s <= q; ++s)
          if (s != a(i, j)) {
            ASSERT_FALSE(verify_oa(with_entry(a, i, j, static_cast<int>(s)))) << q;
          }
  }
}

TEST(OaProperties, SampledMutationsBreakLargerPlanes) {
  std::mt19937_64 rng(23);
  for (unsigned q : {5u, 7u, 8u, 9u, 16u}) {
    const auto a = oa_from_field(field_new(q));
    for (int t = 0; t < 100; ++t) {
      const std::size_t i = rng() % a.rows(), j = rng() % a.cols();
      const int s = 1 + static_cast<int>((a(i, j) + rng() % (q - 1)) % q);
      ASSERT_NE(s, a(i, j));
      ASSERT_FALSE(verify_oa(with_entry(a, i, j, s))) << q;
    }
  }
}

TEST(OaProperties, BoundAttainmentMatchesOaProperty) {
  for (unsigned q : kPlaneOrders) {
    const auto a = oa_from_field(field_new(q));
    const auto r = equidistant_code_bound_check(a);
    EXPECT_TRUE(r.attained && r.is_oa && r.consistent) << q;
    for (std::size_t drop : {std::size_t{0}, a.rows() / 2, a.rows() - 1}) {
      const auto c = equidistant_code_bound_check(a.without_row(drop));
      EXPECT_TRUE(c.equidistant);
      EXPECT_FALSE(c.attained);
      EXPECT_TRUE(c.consistent);
    }
  }
}

TEST(OaProperties, RestrictedDistancesStayInWindow) {
  std::mt19937_64 rng(41);
  for (unsigned q : {4u, 5u, 8u}) {
    const auto a = oa_from_field(field_new(q));
    for (int t = 0; t < 30; ++t) {
      std::vector<std::size_t> cols(a.cols());
      std::iota(cols.begin(), cols.end(), 0);
      std::shuffle(cols.begin(), cols.end(), rng);
      const std::size_t s = 2 + rng() % (a.cols() - 1);
      cols.resize(s);
      for (auto d : restricted_distances(a, cols)) EXPECT_TRUE(d == s || d + 1 == s) << q << " s=" << s << " d=" << d;
    }
  }
}

TEST(OaProperties, CanonicalRelabelIsIdempotentAndDetectsBijections) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const unsigned q = 2 + static_cast<unsigned>(rng() % 5);
    const auto a = bms::test::random_array(rng, 1 + rng() % 20, 1 + rng() % 8, q);
    const auto c = canonical_relabel(a);
    EXPECT_EQ(canonical_relabel(c), c);
    std::vector<int> perm(q);
    std::iota(perm.begin(), perm.end(), 1);
    SymbolArray b(a.rows(), a.cols(), q);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < a.rows(); ++i) b.set(i, j, perm[a(i, j) - 1U]);
    }
    EXPECT_TRUE(equivalent_by_relabel(a, b));
  }
}
