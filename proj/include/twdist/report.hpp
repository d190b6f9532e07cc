#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twdist/types.hpp"

namespace twdist {

struct DistanceReport {
  std::vector<Distance> eccentricities;
  Distance diameter = 0;
  Distance radius = 0;
  std::optional<std::uint64_t> wiener;  // sum over unordered pairs

  friend bool operator==(const DistanceReport&, const DistanceReport&) = default;
};

/// Fills diameter and radius from the eccentricities.
DistanceReport make_report(std::vector<Distance> eccentricities, std::optional<std::uint64_t> wiener);

/// Named integer counters attached to a report, printed in insertion order.
using Counters = std::vector<std::pair<std::string, std::uint64_t>>;

struct ReportContext {
  std::string algorithm;
  std::size_t k = 0;  // separator bound (tw) or cover size (vc); 0 for oracle
  Counters counters;
};

std::string format_text(const DistanceReport& r, const ReportContext& ctx);
std::string format_json(const DistanceReport& r, const ReportContext& ctx);
std::string format_csv(const DistanceReport& r, const ReportContext& ctx);

}  // namespace twdist
