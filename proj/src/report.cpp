#include "twdist/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace twdist {

DistanceReport make_report(std::vector<Distance> eccentricities, std::optional<std::uint64_t> wiener) {
  DistanceReport r;
  if (!eccentricities.empty()) {
    r.diameter = *std::max_element(eccentricities.begin(), eccentricities.end());
    r.radius = *std::min_element(eccentricities.begin(), eccentricities.end());
  }
  r.eccentricities = std::move(eccentricities);
  r.wiener = wiener;
  return r;
}

// The report section is identical for every algorithm; only the counters differ.
std::string format_text(const DistanceReport& r, const ReportContext& ctx) {
  std::ostringstream out;
  out << "diameter " << r.diameter << '\n';
  out << "radius " << r.radius << '\n';
  if (r.wiener) out << "wiener " << *r.wiener << '\n';
  out << "eccentricities";
  for (auto e : r.eccentricities) out << ' ' << e;
  out << '\n';
  out << "--\n";
  out << "algorithm " << ctx.algorithm << '\n';
  out << "k " << ctx.k << '\n';
  for (const auto& [name, value] : ctx.counters) out << name << ' ' << value << '\n';
  return out.str();
}

std::string format_json(const DistanceReport& r, const ReportContext& ctx) {
  nlohmann::ordered_json j;
  j["n"] = r.eccentricities.size();
  j["k"] = ctx.k;
  j["algorithm"] = ctx.algorithm;
  j["eccentricities"] = r.eccentricities;
  j["diameter"] = r.diameter;
  j["radius"] = r.radius;
  j["wiener"] = r.wiener ? nlohmann::ordered_json(*r.wiener) : nlohmann::ordered_json(nullptr);
  auto& counters = j["counters"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : ctx.counters) counters[name] = value;
  return j.dump(2) + "\n";
}

std::string format_csv(const DistanceReport& r, const ReportContext& ctx) {
  std::ostringstream out;
  out << "# algorithm=" << ctx.algorithm << " k=" << ctx.k << '\n';
  out << "# diameter=" << r.diameter << '\n';
  out << "# radius=" << r.radius << '\n';
  if (r.wiener) out << "# wiener=" << *r.wiener << '\n';
  out << "vertex,eccentricity\n";
  for (std::size_t v = 0; v < r.eccentricities.size(); ++v) out << v + 1 << ',' << r.eccentricities[v] << '\n';
  return out.str();
}

}  // namespace twdist
