// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/similarity.hpp"

#include "corpusmatch/utf8.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace corpusmatch {

std::string_view to_string(Kernel kernel) {
  return kernel == Kernel::reference ? "reference" : "fast";
}

std::optional<Kernel> parse_kernel(std::string_view name) {
  if (name == "reference") return Kernel::reference;
  if (name == "fast") return Kernel::fast;
  return std::nullopt;
}

Distance levenshtein_reference(std::u32string_view s, std::u32string_view t) {
  const std::size_t n = s.size();
  const std::size_t m = t.size();
  if (n == 0) return m;
  if (m == 0) return n;

  // prev holds row i-1 of d, cur row i; column j indexes t.
  std::vector<Distance> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;

  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    const char32_t si = s[i - 1];
    for (std::size_t j = 1; j <= m; ++j) {
      const Distance cost = si == t[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

namespace {

constexpr std::size_t kWordBits = 64;

// Per-character match bitmasks of the pattern, one 64-bit word per block of
// 64 pattern positions. Dense storage is used when the pattern's codepoints
// span a small interval, which covers any single script block.
class PatternBits {
 public:
  explicit PatternBits(std::u32string_view pattern)
      : words_((pattern.size() + kWordBits - 1) / kWordBits), zeros_(words_, 0) {
    const auto [lo, hi] = std::minmax_element(pattern.begin(), pattern.end());
    lo_ = *lo;
    hi_ = *hi;
    dense_ = static_cast<std::size_t>(hi_ - lo_) < kDenseSpan;
    if (dense_) {
      table_.assign((hi_ - lo_ + 1) * words_, 0);
    }
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      std::uint64_t* row = mutable_row(pattern[i]);
      row[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
    }
  }

  const std::uint64_t* row(char32_t c) const {
    if (c < lo_ || c > hi_) return zeros_.data();
    if (dense_) return table_.data() + (c - lo_) * words_;
    const auto it = sparse_index_.find(c);
    return it == sparse_index_.end() ? zeros_.data() : table_.data() + it->second;
  }

  std::size_t words() const { return words_; }

 private:
  static constexpr std::size_t kDenseSpan = 4096;

  std::uint64_t* mutable_row(char32_t c) {
    if (dense_) return table_.data() + (c - lo_) * words_;
    auto [it, inserted] = sparse_index_.try_emplace(c, table_.size());
    if (inserted) table_.resize(table_.size() + words_, 0);
    return table_.data() + it->second;
  }

  std::size_t words_;
  std::vector<std::uint64_t> zeros_;
  char32_t lo_ = 0;
  char32_t hi_ = 0;
  bool dense_ = true;
  std::vector<std::uint64_t> table_;
  std::unordered_map<char32_t, std::size_t> sparse_index_;
};

// Myers' bit-vector algorithm in Hyyrö's formulation. `pattern` is the
// shorter string and is non-empty. The running score is D[m][j]; because the
// last row changes by at most one per column, score - (n - j) is a lower
// bound on the final distance and drives the cutoff exit.
std::optional<Distance> myers(std::u32string_view pattern, std::u32string_view text,
                              Distance cutoff) {
  const std::size_t m = pattern.size();
  const std::size_t n = text.size();
  const PatternBits bits(pattern);
  const std::size_t words = bits.words();
  const std::uint64_t last_mask = std::uint64_t{1} << ((m - 1) % kWordBits);

  Distance score = m;

  if (words == 1) {
    std::uint64_t vp = ~std::uint64_t{0};
    std::uint64_t vn = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t eq = bits.row(text[j])[0];
      const std::uint64_t x = eq | vn;
      const std::uint64_t d0 = (((eq & vp) + vp) ^ vp) | x;
      std::uint64_t hp = vn | ~(d0 | vp);
      std::uint64_t hn = vp & d0;
      if (hp & last_mask) ++score;
      if (hn & last_mask) --score;
      if (score > cutoff && score - cutoff > n - j - 1) return std::nullopt;
      hp = (hp << 1) | 1;
      hn <<= 1;
      vp = hn | ~(d0 | hp);
      vn = hp & d0;
    }
    return score <= cutoff ? std::optional<Distance>(score) : std::nullopt;
  }

  std::vector<std::uint64_t> vp(words, ~std::uint64_t{0});
  std::vector<std::uint64_t> vn(words, 0);
  constexpr std::uint64_t high_bit = std::uint64_t{1} << (kWordBits - 1);

  for (std::size_t j = 0; j < n; ++j) {
    const std::uint64_t* eq_row = bits.row(text[j]);
    int hin = 1;  // D[0][j] - D[0][j-1]
    for (std::size_t b = 0; b < words; ++b) {
      std::uint64_t eq = eq_row[b];
      const std::uint64_t pv = vp[b];
      const std::uint64_t mv = vn[b];
      const std::uint64_t xv = eq | mv;
      if (hin < 0) eq |= 1;
      const std::uint64_t xh = (((eq & pv) + pv) ^ pv) | eq;
      std::uint64_t ph = mv | ~(xh | pv);
      std::uint64_t mh = pv & xh;

      const std::uint64_t out_bit = b + 1 == words ? last_mask : high_bit;
      int hout = 0;
      if (ph & out_bit) hout = 1;
      if (mh & out_bit) hout = -1;

      ph <<= 1;
      mh <<= 1;
      if (hin < 0) {
        mh |= 1;
      } else if (hin > 0) {
        ph |= 1;
      }
      vp[b] = mh | ~(xv | ph);
      vn[b] = ph & xv;
      hin = hout;
    }
    score = static_cast<Distance>(static_cast<std::ptrdiff_t>(score) + hin);
    if (score > cutoff && score - cutoff > n - j - 1) return std::nullopt;
  }
  return score <= cutoff ? std::optional<Distance>(score) : std::nullopt;
}

}  // namespace

std::optional<Distance> levenshtein_fast(std::u32string_view s, std::u32string_view t,
                                         std::optional<Distance> cutoff) {
  // Common affixes never contribute edits.
  const auto prefix = std::mismatch(s.begin(), s.end(), t.begin(), t.end());
  s.remove_prefix(static_cast<std::size_t>(prefix.first - s.begin()));
  t.remove_prefix(static_cast<std::size_t>(prefix.second - t.begin()));
  const auto suffix = std::mismatch(s.rbegin(), s.rend(), t.rbegin(), t.rend());
  s.remove_suffix(static_cast<std::size_t>(suffix.first - s.rbegin()));
  t.remove_suffix(static_cast<std::size_t>(suffix.second - t.rbegin()));

  if (s.size() > t.size()) std::swap(s, t);
  const Distance limit = cutoff.value_or(t.size());
  if (t.size() - s.size() > limit) return std::nullopt;
  if (s.empty()) return t.size();
  return myers(s, t, limit);
}

Distance levenshtein(std::u32string_view s, std::u32string_view t, Kernel kernel) {
  if (kernel == Kernel::reference) return levenshtein_reference(s, t);
  return *levenshtein_fast(s, t);
}

SimilarityScore score_from_distance(Distance distance, std::size_t len1, std::size_t len2) {
  const std::size_t longest = std::max(len1, len2);
  if (longest == 0) return 100.0;
  return 100.0 * static_cast<double>(longest - distance) / static_cast<double>(longest);
}

SimilarityScore similarity(std::u32string_view s1, std::u32string_view s2, Kernel kernel) {
  return score_from_distance(levenshtein(s1, s2, kernel), s1.size(), s2.size());
}

SimilarityScore similarity(std::string_view s1, std::string_view s2, Kernel kernel) {
  return similarity(utf8::decode(s1), utf8::decode(s2), kernel);
}

std::optional<SimilarityScore> similarity_at_least(std::u32string_view s1,
                                                   std::u32string_view s2,
                                                   SimilarityScore threshold, Kernel kernel) {
  const std::size_t longest = std::max(s1.size(), s2.size());
  Distance distance = 0;
  if (kernel == Kernel::reference || longest == 0) {
    distance = levenshtein(s1, s2, kernel);
  } else {
    // Any qualifying distance satisfies d <= longest * (1 - threshold/100).
    // One unit of slack absorbs rounding in that bound.
    const double exact_bound = static_cast<double>(longest) * (1.0 - threshold / 100.0);
    const double slack_bound = std::floor(std::max(exact_bound, 0.0)) + 1.0;
    const Distance cutoff = slack_bound >= static_cast<double>(longest)
                                ? longest
                                : static_cast<Distance>(slack_bound);
    const auto fast = levenshtein_fast(s1, s2, cutoff);
    if (!fast) return std::nullopt;
    distance = *fast;
  }
  const SimilarityScore score = score_from_distance(distance, s1.size(), s2.size());
  if (score < threshold) return std::nullopt;
  return score;
}

}  // namespace corpusmatch
