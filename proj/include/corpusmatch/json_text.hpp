// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace corpusmatch {

/// Serializes without escaping non-ASCII; invalid UTF-8 becomes U+FFFD
/// instead of throwing.
inline std::string json_text(const nlohmann::json& value, int indent = -1) {
  return value.dump(indent, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace corpusmatch
