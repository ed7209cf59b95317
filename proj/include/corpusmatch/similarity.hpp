// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace corpusmatch {

/// Count of unit-cost single-character edits (insert, delete, substitute).
using Distance = std::size_t;

/// Percentage similarity in [0, 100].
using SimilarityScore = double;

enum class Kernel { reference, fast };

std::string_view to_string(Kernel kernel);
std::optional<Kernel> parse_kernel(std::string_view name);

/// Edit distance by the textbook dynamic program, using two rolling rows of
/// the (|s|+1) x (|t|+1) matrix. Characters compare as Unicode scalars.
Distance levenshtein_reference(std::u32string_view s, std::u32string_view t);

/// Bit-parallel edit distance. Returns the exact distance, or std::nullopt
/// when a cutoff is given and the distance exceeds it.
std::optional<Distance> levenshtein_fast(std::u32string_view s, std::u32string_view t,
                                         std::optional<Distance> cutoff = std::nullopt);

Distance levenshtein(std::u32string_view s, std::u32string_view t, Kernel kernel);

/// 100 * (1 - distance / max(|s1|, |s2|)); two empty strings score 100.
SimilarityScore similarity(std::u32string_view s1, std::u32string_view s2,
                           Kernel kernel = Kernel::fast);

/// UTF-8 convenience overload.
SimilarityScore similarity(std::string_view s1, std::string_view s2,
                           Kernel kernel = Kernel::fast);

/// Score for a known distance. Shared by every caller so that equal
/// distances always give bit-identical scores.
SimilarityScore score_from_distance(Distance distance, std::size_t len1, std::size_t len2);

/// Returns the score if it can reach `threshold`, otherwise std::nullopt.
/// With Kernel::fast the distance computation is cut off early once the
/// threshold is unreachable; the returned score is always exact.
std::optional<SimilarityScore> similarity_at_least(std::u32string_view s1,
                                                   std::u32string_view s2,
                                                   SimilarityScore threshold, Kernel kernel);

}  // namespace corpusmatch
