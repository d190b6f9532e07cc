// Serial versus OpenMP timings of the parallel kernels. Each pair of runs is
// also checked for identical output.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "twdist/generators.hpp"
#include "twdist/oracle.hpp"
#include "twdist/separator_tree.hpp"
#include "twdist/tw_distance.hpp"
#include "twdist/vc_distance.hpp"

using namespace twdist;

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

bool row(const char* name, const std::function<std::string(bool)>& kernel) {
  std::string serial, parallel;
  const double ts = time_ms([&] { serial = kernel(false); });
  const double tp = time_ms([&] { parallel = kernel(true); });
  const bool same = serial == parallel;
  std::printf("%-28s %10.1f %10.1f %8.2fx  %s\n", name, ts, tp, tp > 0 ? ts / tp : 0.0, same ? "same" : "DIFFERENT");
  return same;
}

std::string digest(const DistanceReport& r) {
  std::string s = std::to_string(r.diameter) + "/" + std::to_string(r.radius) + "/" + std::to_string(r.wiener.value_or(0));
  std::uint64_t h = 1469598103934665603ULL;
  for (auto e : r.eccentricities) h = (h ^ e) * 1099511628211ULL;
  return s + "/" + std::to_string(h);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1500;
  std::printf("threads: %d, n = %zu\n", omp_get_max_threads(), n);
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  const auto tw = gen_partial_ktree(n, 3, 0.7, 100, 7);
  const auto sst = skew_separator_tree(tw.graph, tw.td, 4);
  bool ok = true;

  ok &= row("separator recursion", [&](bool par) {
    TwOptions o;
    o.parallel = par;
    o.base_case_max_vertices = 32;
    return digest(distances_tw(tw.graph, sst, o).report);
  });
  ok &= row("all-sources base case", [&](bool par) {
    TwOptions o;
    o.parallel = par;
    o.base_case_max_vertices = n;
    return digest(distances_tw(tw.graph, sst, o).report);
  });
  ok &= row("oracle apsp", [&](bool par) { return digest(report_oracle(tw.graph, par)); });

  const auto vc = gen_planted_cover(n, 10, 11);
  ok &= row("cover class searches", [&](bool par) { return digest(ecc_wiener_vc(vc.graph, vc.cover, par).report); });
  return ok ? 0 : 1;
}
