// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/similarity.hpp"

#include "oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace corpusmatch;
using corpusmatch::testing::random_string;

namespace {

const std::u32string kBengali3 = U"কখগ";
const std::u32string kAscii = U"abcdefgh";

// All strings over `alphabet` of length <= max_len, shortest first.
std::vector<std::u32string> enumerate(const std::u32string& alphabet, std::size_t max_len) {
  std::vector<std::u32string> out{U""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char32_t c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

}  // namespace

TEST(OracleTest, FrozenValuesAgree) {
  // These values are frozen into the kernel tests below.
  EXPECT_EQ(oracle::brute_force_distance(U"kitten", U"sitting"), 3u);
  EXPECT_EQ(oracle::brute_force_distance(U"abcd", U"abed"), 1u);
  EXPECT_EQ(oracle::brute_force_distance(U"", U"abc"), 3u);
  EXPECT_EQ(oracle::memo_distance(U"kitten", U"sitting"), 3u);
  EXPECT_EQ(oracle::score(1, 4, 4), 75.0);
}

TEST(LevenshteinReference, Examples) {
  EXPECT_EQ(levenshtein_reference(U"", U"abc"), 3u);
  EXPECT_EQ(levenshtein_reference(U"abc", U""), 3u);
  EXPECT_EQ(levenshtein_reference(U"xyz", U"xyz"), 0u);
  EXPECT_EQ(levenshtein_reference(U"kitten", U"sitting"), 3u);
  EXPECT_EQ(levenshtein_reference(U"", U""), 0u);
}

TEST(LevenshteinFast, Examples) {
  EXPECT_EQ(levenshtein_fast(U"", U""), std::optional<Distance>{0});
  EXPECT_EQ(levenshtein_fast(U"kitten", U"sitting"), std::optional<Distance>{3});
  EXPECT_EQ(levenshtein_fast(U"kitten", U"sitting", 3), std::optional<Distance>{3});
  EXPECT_EQ(levenshtein_fast(U"kitten", U"sitting", 2), std::nullopt);
  EXPECT_EQ(levenshtein_fast(U"abc", U"abc", 0), std::optional<Distance>{0});
  EXPECT_EQ(levenshtein_fast(U"abc", U"", 2), std::nullopt);
  EXPECT_EQ(levenshtein_fast(U"abc", U"", 3), std::optional<Distance>{3});
}

TEST(LevenshteinFast, CutoffNeverReportsAWrongValue) {
  std::mt19937 rng(7);
  for (int i = 0; i < 3000; ++i) {
    const auto s = random_string(rng, U"abc", 150);
    const auto t = random_string(rng, U"abc", 150);
    const Distance d = levenshtein_reference(s, t);
    std::uniform_int_distribution<Distance> k_dist(0, std::max<Distance>(d + 3, 1));
    const Distance k = k_dist(rng);
    const auto got = levenshtein_fast(s, t, k);
    if (d <= k) {
      ASSERT_EQ(got, std::optional<Distance>{d}) << "k=" << k;
    } else {
      ASSERT_EQ(got, std::nullopt) << "k=" << k << " d=" << d;
    }
  }
}

TEST(LevenshteinFast, ExhaustiveEquivalenceLength8) {
  // Every pair of strings of length <= 8 over a 3-letter alphabet.
  const auto strings = enumerate(kBengali3, 8);
  ASSERT_EQ(strings.size(), 9841u);
  std::size_t mismatches = 0;
  for (const auto& s : strings) {
    for (const auto& t : strings) {
      if (*levenshtein_fast(s, t) != levenshtein_reference(s, t)) ++mismatches;
    }
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(LevenshteinFast, RandomEquivalenceAcrossBlockSizes) {
  // Lengths straddle the 64-bit word boundary several times.
  std::mt19937 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const auto& alphabet = i % 3 == 0 ? kBengali3 : kAscii;
    const auto s = random_string(rng, alphabet, i % 2 ? 300 : 70);
    const auto t = random_string(rng, alphabet, i % 5 ? 300 : 70);
    ASSERT_EQ(*levenshtein_fast(s, t), levenshtein_reference(s, t));
  }
}

TEST(LevenshteinFast, SparseAlphabetPattern) {
  // Codepoints far apart use the hashed match table.
  const std::u32string s = U"a\U0001F600bকc\U00010000";
  const std::u32string t = U"\U0001F600abখc";
  EXPECT_EQ(*levenshtein_fast(s, t), oracle::brute_force_distance(s, t));
}

TEST(LevenshteinProperties, MetricAxioms) {
  std::mt19937 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto s = random_string(rng, kBengali3, 40);
    const auto t = random_string(rng, kBengali3, 40);
    const auto u = random_string(rng, kBengali3, 40);
    const Distance st = levenshtein_reference(s, t);
    EXPECT_EQ(levenshtein_reference(s, s), 0u);
    EXPECT_EQ(st, levenshtein_reference(t, s));
    EXPECT_LE(levenshtein_reference(s, u), st + levenshtein_reference(t, u));
    const Distance diff = s.size() > t.size() ? s.size() - t.size() : t.size() - s.size();
    EXPECT_GE(st, diff);
    EXPECT_LE(st, std::max(s.size(), t.size()));
  }
}

TEST(LevenshteinProperties, SingleEditSensitivity) {
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    auto s = random_string(rng, kAscii, 50);
    if (s.empty()) s = U"a";
    std::uniform_int_distribution<std::size_t> pos(0, s.size() - 1);
    auto deleted = s;
    deleted.erase(pos(rng), 1);
    auto inserted = s;
    inserted.insert(inserted.begin() + static_cast<std::ptrdiff_t>(pos(rng)), U'z');
    auto substituted = s;
    substituted[pos(rng)] = U'z';  // 'z' is outside kAscii, so it always differs
    for (const auto* variant : {&deleted, &inserted, &substituted}) {
      EXPECT_EQ(levenshtein_reference(s, *variant), 1u);
      EXPECT_EQ(*levenshtein_fast(s, *variant), 1u);
    }
  }
}

TEST(Similarity, Examples) {
  EXPECT_EQ(similarity(std::u32string_view(U"abcd"), U"abcd"), 100.0);
  EXPECT_EQ(similarity(std::u32string_view(U"abcd"), U"abed"), 75.0);
  EXPECT_EQ(similarity(std::u32string_view(U"abc"), U""), 0.0);
  EXPECT_EQ(similarity(std::u32string_view(U""), U""), 100.0);
  EXPECT_EQ(similarity(std::string_view("abcd"), std::string_view("abed"), Kernel::reference), 75.0);
}

TEST(Similarity, MatchesOracleScoreAndIsSymmetric) {
  std::mt19937 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_string(rng, kBengali3, 30);
    const auto b = random_string(rng, kBengali3, 30);
    const double expected = oracle::score(oracle::memo_distance(a, b), a.size(), b.size());
    const double s = similarity(a, b);
    EXPECT_EQ(s, expected);
    EXPECT_EQ(s, similarity(b, a));
    EXPECT_EQ(s, similarity(a, b, Kernel::reference));
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 100.0);
    EXPECT_EQ(similarity(a, a), 100.0);
  }
}

TEST(Similarity, CountsCodepointsNotBytes) {
  // Each Bengali letter is three UTF-8 bytes; one substitution out of four.
  EXPECT_EQ(similarity(std::string_view("কখগঘ"), std::string_view("কখচঘ")), 75.0);
}

TEST(SimilarityAtLeast, AgreesWithPlainScore) {
  std::mt19937 rng(13);
  for (int i = 0; i < 4000; ++i) {
    const auto a = random_string(rng, kBengali3, 120);
    const auto b = random_string(rng, kBengali3, 120);
    const double threshold = std::uniform_real_distribution<double>(0, 100)(rng);
    const double exact = similarity(a, b, Kernel::reference);
    for (Kernel k : {Kernel::reference, Kernel::fast}) {
      const auto got = similarity_at_least(a, b, threshold, k);
      if (exact >= threshold) {
        ASSERT_EQ(got, std::optional<double>{exact});
      } else {
        ASSERT_EQ(got, std::nullopt);
      }
    }
  }
}

TEST(SimilarityAtLeast, BoundaryThresholdsKeepExactHits) {
  // Scores landing exactly on the threshold must survive pruning.
  EXPECT_EQ(similarity_at_least(U"abcd", U"abed", 75.0, Kernel::fast), std::optional<double>{75.0});
  EXPECT_EQ(similarity_at_least(U"abcde", U"abxyz", 40.0, Kernel::fast), std::optional<double>{40.0});
  EXPECT_EQ(similarity_at_least(U"abc", U"", 0.0, Kernel::fast), std::optional<double>{0.0});
  EXPECT_EQ(similarity_at_least(U"abc", U"abc", 100.0, Kernel::fast), std::optional<double>{100.0});
  EXPECT_EQ(similarity_at_least(U"abcd", U"abed", 75.5, Kernel::fast), std::nullopt);
}

TEST(Kernel, NamesRoundTrip) {
  for (Kernel k : {Kernel::reference, Kernel::fast}) EXPECT_EQ(parse_kernel(to_string(k)), k);
  EXPECT_EQ(parse_kernel("bogus"), std::nullopt);
}
