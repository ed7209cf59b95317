// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace corpusmatch::csv {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

/// Comma-delimited records. Fields may be double-quoted; inside quotes,
/// commas and newlines are literal and "" is an escaped quote. CRLF and LF
/// line endings are accepted; blank lines are skipped.
std::vector<std::vector<std::string>> parse(std::string_view text);

}  // namespace corpusmatch::csv
