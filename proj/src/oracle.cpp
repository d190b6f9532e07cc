#include "twdist/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <exception>
#include <string>

namespace twdist {

std::size_t oracle_vertex_limit() {
  if (const char* env = std::getenv("TWDIST_ORACLE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 3000;
}

namespace {

constexpr Distance kInf = DistanceMatrix::kUnreachable;

// A real distance equal to the marker would read as unreachable.
Distance add(Distance a, Distance b) {
  const Distance r = checked_add(a, b);
  if (r == kInf) throw OverflowError("distance collides with the unreachable marker");
  return r;
}

void floyd_warshall(const Graph& g, DistanceMatrix& m) {
  const std::size_t n = m.n;
  for (std::size_t v = 0; v < n; ++v) m.d[v * n + v] = 0;
  for (const auto& e : g.edges()) {
    auto& a = m.d[e.u * n + e.v];
    a = std::min(a, add(e.w, 0));
    m.d[e.v * n + e.u] = a;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const Distance ik = m.d[i * n + k];
      if (ik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Distance kj = m.d[k * n + j];
        if (kj == kInf) continue;
        const Distance via = add(ik, kj);
        if (via < m.d[i * n + j]) m.d[i * n + j] = via;
      }
    }
}

// Queue-based Bellman-Ford from one source; no priority queue involved.
void relax_from(const Graph& g, Vertex s, Distance* row, std::deque<Vertex>& queue, std::vector<char>& queued) {
  std::fill(row, row + g.vertex_count(), kInf);
  row[s] = 0;
  queue.assign(1, s);
  queued[s] = 1;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    queued[u] = 0;
    for (const auto& a : g.neighbors(u)) {
      const Distance via = add(row[u], a.w);
      if (via < row[a.to]) {
        row[a.to] = via;
        if (!queued[a.to]) {
          queued[a.to] = 1;
          queue.push_back(a.to);
        }
      }
    }
  }
}

}  // namespace

DistanceMatrix apsp_oracle(const Graph& g, bool parallel) {
  const std::size_t n = g.vertex_count();
  const std::size_t limit = oracle_vertex_limit();
  if (n > limit)
    throw ResourceError("oracle refuses " + std::to_string(n) + " vertices (limit " + std::to_string(limit) +
                        ", set TWDIST_ORACLE_LIMIT to raise it)");
  DistanceMatrix m;
  m.n = n;
  m.d.assign(n * n, kInf);
  if (n <= 256) {
    floyd_warshall(g, m);
    return m;
  }
  std::exception_ptr failure;
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel if (parallel)
  {
    std::deque<Vertex> queue;
    std::vector<char> queued(n, 0);
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < sn; ++s) {
      try {
        relax_from(g, static_cast<Vertex>(s), m.d.data() + static_cast<std::size_t>(s) * n, queue, queued);
      } catch (...) {
#pragma omp critical(twdist_oracle_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return m;
}

DistanceReport report_oracle(const Graph& g, bool parallel) {
  const auto m = apsp_oracle(g, parallel);
  const std::size_t n = m.n;
  std::vector<Distance> ecc(n, 0);
  std::uint64_t doubled = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const Distance d = m.d[u * n + v];
      if (d == kInf) throw DisconnectedError("graph is not connected");
      ecc[u] = std::max(ecc[u], d);
      doubled = checked_add(doubled, d);
    }
  return make_report(std::move(ecc), doubled / 2);
}

}  // namespace twdist
