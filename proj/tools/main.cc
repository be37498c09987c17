//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "cli.h"

int main(int argc, char** argv) { return kaleido::cli::Main(argc, argv, std::cout, std::cerr); }
