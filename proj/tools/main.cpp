// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return corpusmatch::cli_dispatch(argc, argv, std::cout, std::cerr);
}
