#include "twdist/bounds.hpp"

#include "twdist/types.hpp"

namespace twdist {

std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    // c * (a - b + i) / i stays integral at every step.
    c = c * (a - b + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t binomial_bound(std::size_t n, std::size_t d) {
  if (n == 0) throw InvalidArgument("binomial_bound requires n >= 1");
  return binomial(d + ceil_log2(n), d);
}

std::uint64_t query_visit_bound(std::size_t n, std::size_t d) {
  if (d >= 64) throw OverflowError("dimension too large for the visit bound");
  return checked_mul(std::uint64_t{1} << d, binomial_bound(n, d));
}

std::uint64_t construction_bound(std::size_t n, std::size_t d) {
  return checked_mul(checked_mul(n, d), binomial_bound(n, d));
}

bool small_dimension_bound_holds(unsigned d, unsigned h) {
  if (h > 20 || d > 20) throw InvalidArgument("exact check limited to d, h <= 20");
  unsigned __int128 lhs = binomial(d + h, d);
  for (unsigned i = 2; i <= d; ++i) lhs *= i;
  unsigned __int128 rhs = 1;
  for (unsigned i = 0; i < d; ++i) rhs *= 2 * static_cast<unsigned __int128>(h);
  return lhs <= rhs;
}

}  // namespace twdist
