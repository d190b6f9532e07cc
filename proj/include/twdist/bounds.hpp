#pragma once

#include <cstddef>
#include <cstdint>

namespace twdist {

/// ceil(log2 n), with 0 for n <= 1.
constexpr std::size_t ceil_log2(std::size_t n) noexcept {
  std::size_t h = 0;
  while ((std::size_t{1} << h) < n) ++h;
  return h;
}

/// Exact C(a, b); throws OverflowError when the result exceeds 64 bits.
std::uint64_t binomial(std::uint64_t a, std::uint64_t b);

/// B(n, d) = C(d + ceil(log2 n), d).
std::uint64_t binomial_bound(std::size_t n, std::size_t d);

/// Node visits allowed for one query: 2^d * C(h + d, d).
std::uint64_t query_visit_bound(std::size_t n, std::size_t d);

/// Canonical-subset total allowed for one build: n * d * B(n, d).
std::uint64_t construction_bound(std::size_t n, std::size_t d);

/// C(d + h, d) * d! <= 2^d * h^d, evaluated exactly in 128-bit arithmetic.
/// Valid for h <= 20.
bool small_dimension_bound_holds(unsigned d, unsigned h);

}  // namespace twdist
