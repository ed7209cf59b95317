// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include <string>
#include <string_view>

namespace corpusmatch {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

}  // namespace corpusmatch
