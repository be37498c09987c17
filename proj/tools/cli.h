//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_TOOLS_CLI_H_
#define KALEIDO_TOOLS_CLI_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace kaleido::cli {

struct RunConfig {
  std::string app;  // fsm, motif, clique or tc
  int k = 0;
  std::uint64_t support = 0;
  std::filesystem::path graph_path;
  std::optional<std::filesystem::path> label_path;
  int workers = 1;
  std::uint64_t memory_budget = 0;  // 0 = unlimited
  std::filesystem::path spill_dir;
  std::optional<std::filesystem::path> output_path;
};

// "512", "64K", "1.5M", "2G" (binary multiples). Throws kaleido::ConfigError.
std::uint64_t ParseByteSize(std::string_view text);

// Throws kaleido::ConfigError when k or support is outside the app's range.
void Validate(const RunConfig& config);

// Runs one application. Results go to config.output_path, or to `out` when
// unset; metrics go to `metrics`. Returns the process exit status.
int Run(const RunConfig& config, std::ostream& out, std::ostream& metrics);

// Parses argv and runs; prints a one-line diagnostic to `err` on failure.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kaleido::cli

#endif  // KALEIDO_TOOLS_CLI_H_
