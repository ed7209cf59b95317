// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include <string>
#include <string_view>

namespace corpusmatch::utf8 {

inline constexpr char32_t kReplacement = U'�';

/// Decodes UTF-8 into Unicode scalar values. Malformed sequences, surrogates
/// and overlong forms each decode to U+FFFD.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view codepoints);

void append(std::string& out, char32_t cp);

/// Number of scalar values `decode` would produce.
std::size_t length(std::string_view bytes);

}  // namespace corpusmatch::utf8
