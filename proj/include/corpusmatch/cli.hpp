// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include <iosfwd>

namespace corpusmatch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the corpusmatch tool. Subcommands: init, ingest, ocr,
/// eval-ocr, check, serve, bench. Returns 0 on success, 1 on operational
/// errors and 2 on usage errors.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace corpusmatch
