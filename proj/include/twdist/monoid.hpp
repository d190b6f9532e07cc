#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>

#include "twdist/types.hpp"

namespace twdist {

/// Commutative monoid over `value_type`: static identity() and combine().
template <class M>
concept Monoid = requires(const typename M::value_type& a, const typename M::value_type& b) {
  typename M::value_type;
  { M::identity() } -> std::convertible_to<typename M::value_type>;
  { M::combine(a, b) } -> std::convertible_to<typename M::value_type>;
};

/// (distances, max) with negative infinity as identity; nullopt is -inf.
struct MaxDistance {
  using value_type = std::optional<Distance>;
  static value_type identity() noexcept { return std::nullopt; }
  static value_type combine(const value_type& a, const value_type& b) noexcept {
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
  }
};

struct CountSumValue {
  std::uint64_t count = 0;
  Distance sum = 0;
  friend bool operator==(const CountSumValue&, const CountSumValue&) = default;
};

/// Componentwise addition of (count, sum) pairs; identity (0, 0).
struct CountSum {
  using value_type = CountSumValue;
  static value_type identity() noexcept { return {}; }
  static value_type combine(const value_type& a, const value_type& b) {
    return {checked_add(a.count, b.count), checked_add(a.sum, b.sum)};
  }
};

template <Monoid M>
typename M::value_type aggregate(std::span<const typename M::value_type> values) {
  auto acc = M::identity();
  for (const auto& v : values) acc = M::combine(acc, v);
  return acc;
}

}  // namespace twdist
