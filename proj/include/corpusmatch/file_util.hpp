// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace corpusmatch {

/// Whole file as bytes, or std::nullopt if it cannot be opened or read.
std::optional<std::string> read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
/// Throws std::runtime_error on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace corpusmatch
