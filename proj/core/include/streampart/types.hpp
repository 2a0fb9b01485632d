#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace streampart {

using NodeId = std::uint64_t;
using NodeWeight = std::int64_t;
using EdgeWeight = std::int64_t;

// Final block / processing element ids are 1-based; 0 marks "unassigned".
using PeId = std::uint32_t;
inline constexpr PeId kUnassigned = 0;

using BlockId = std::uint32_t;
inline constexpr BlockId kNoBlock = std::numeric_limits<BlockId>::max();

// Malformed graph input (header, tokens, adjacency invariants).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters: hierarchy strings, k, eps, hybrid depth, ...
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace streampart
