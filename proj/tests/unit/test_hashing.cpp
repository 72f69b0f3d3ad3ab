#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "probgraph/hashing.hpp"

using namespace probgraph;

TEST(Hashing, GoldenWords) {
  // Frozen from an independent reimplementation of the documented algorithm.
  HashFamily fam(kDefaultHashSeed, 2);
  EXPECT_EQ(fam[0].seed(), 0x65f4bdf86ec187e6ULL);
  EXPECT_EQ(fam[1].seed(), 0x1ab638bd8226a3d4ULL);
  EXPECT_EQ(fam.hash_word(0, 0), 0x3410116f53e99247ULL);
  EXPECT_EQ(fam.hash_word(0, 1), 0x863cc2871683cf60ULL);
  EXPECT_EQ(fam.hash_word(0, 12345), 0x5642a7ec8fcbd79bULL);
  EXPECT_EQ(fam.hash_word(1, 0), 0x7ee3928e0436caa0ULL);
  EXPECT_EQ(fam.hash_word(1, 1), 0xe6d3b8a9c9360e0bULL);
  EXPECT_EQ(fam.hash_word(1, 12345), 0x493dd126db2198c9ULL);
}

TEST(Hashing, SingleBucketRange) {
  HashFamily fam(7, 3);
  for (std::uint64_t key = 0; key < 100; ++key) EXPECT_EQ(fam.hash_to_bit(2, key, 1), 0u);
}

TEST(Hashing, Deterministic) {
  HashFamily a(42, 4), b(42, 4);
  for (std::uint64_t key = 0; key < 1000; key += 37) {
    EXPECT_EQ(a.hash_to_bit(3, key, 1000), a.hash_to_bit(3, key, 1000));
    EXPECT_EQ(a.hash_to_bit(3, key, 1000), b.hash_to_bit(3, key, 1000));
    EXPECT_EQ(a.hash_to_unit(1, key), b.hash_to_unit(1, key));
  }
}

TEST(Hashing, IndexOutOfRangeIsContractViolation) {
  HashFamily fam(1, 2);
  EXPECT_THROW(fam.hash_to_bit(2, 5, 10), ContractViolation);
  EXPECT_THROW(fam.hash_to_unit(9, 5), ContractViolation);
  EXPECT_THROW(fam.hash_to_bit(0, 5, 0), ContractViolation);
  EXPECT_THROW(HashFamily(1, 0), ContractViolation);
}

TEST(Hashing, ChiSquareUniformBuckets) {
  HashFamily fam(kDefaultHashSeed, 1);
  constexpr int kBuckets = 256;
  constexpr int kKeys = 100000;
  std::vector<int> counts(kBuckets, 0);
  for (int key = 0; key < kKeys; ++key) ++counts[fam.hash_to_bit(0, key, kBuckets)];
  const double expected = static_cast<double>(kKeys) / kBuckets;
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 0.999 quantile of chi-square with 255 degrees of freedom (scipy).
  EXPECT_LT(chi2, 330.51974363400586);
}

TEST(Hashing, UnitIntervalCodomainAndMean) {
  EXPECT_EQ(word_to_unit(0), 0x1.0p-53);
  EXPECT_EQ(word_to_unit(~std::uint64_t{0}), 1.0);

  HashFamily fam(99, 1);
  double sum = 0;
  for (int key = 0; key < 100000; ++key) sum += fam.hash_to_unit(0, key);
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000000; ++i) {
    const double u = fam.hash_to_unit(0, rng());
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(Hashing, DistinctFunctionsAreIndependent) {
  HashFamily fam(3, 8);
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) EXPECT_NE(fam[i].seed(), fam[j].seed());

  std::mt19937_64 rng(11);
  constexpr int kKeys = 10000;
  int equal = 0;
  for (int n = 0; n < kKeys; ++n) {
    const auto key = rng();
    equal += fam.hash_to_bit(0, key, 1 << 16) == fam.hash_to_bit(1, key, 1 << 16);
  }
  EXPECT_LT(static_cast<double>(equal) / kKeys, 0.001);
}
