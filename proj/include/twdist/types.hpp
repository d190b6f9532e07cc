#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "twdist/errors.hpp"

namespace twdist {

using Vertex = std::uint32_t;
using Weight = std::uint64_t;
using Distance = std::uint64_t;

// Unreachable is represented by an empty optional.
using MaybeDistance = std::optional<Distance>;

inline Distance checked_add(Distance a, Distance b) {
  Distance out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("distance arithmetic overflow");
  return out;
}

inline Distance checked_mul(Distance a, Distance b) {
  Distance out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("distance arithmetic overflow");
  return out;
}

// Distances enter range-tree coordinates as signed differences.
inline std::int64_t to_signed(Distance d) {
  if (d > static_cast<Distance>(std::numeric_limits<std::int64_t>::max()))
    throw OverflowError("distance does not fit a signed coordinate");
  return static_cast<std::int64_t>(d);
}

}  // namespace twdist
