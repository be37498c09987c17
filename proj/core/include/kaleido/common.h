//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_COMMON_H_
#define KALEIDO_COMMON_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kaleido {

#ifdef KALEIDO_WIDE_IDS
using VertexId = std::uint64_t;
#else
using VertexId = std::uint32_t;
#endif

// Edge ids share the vertex id width; a CSE level stores either kind in the
// same array type.
using EdgeId = VertexId;
using ElementId = VertexId;
using Offset = std::uint64_t;
using Label = std::uint32_t;

inline constexpr int kIdWidth = static_cast<int>(sizeof(ElementId));

// Upper bound on embedding length handled by the exploration kernels.
inline constexpr int kMaxEmbeddingSize = 16;

// Patterns are restricted to fewer than 9 vertices; beyond that equal
// degree sequences and spectra no longer imply isomorphism.
inline constexpr int kMaxPatternVertices = 8;

enum class EmbeddingKind : std::uint8_t { kVertexInduced, kEdgeInduced };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A pattern would exceed kMaxPatternVertices vertices.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Invalid run parameters, e.g. a size parameter outside an application's range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class BudgetTooSmallError : public Error {
 public:
  using Error::Error;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

// Internal contract violation, e.g. malformed level arrays or an inexact
// division in the characteristic polynomial.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kaleido

#endif  // KALEIDO_COMMON_H_
