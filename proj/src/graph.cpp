#include "tss/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace tss {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::uint32_t> degrees(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n)
      throw InstanceError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                          ") references a vertex outside 0.." + std::to_string(n) + "-1");
    if (u == v) throw InstanceError("self-loop at vertex " + std::to_string(u));
    ++degrees[u];
    ++degrees[v];
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degrees[v];
  g.neighbors_.resize(g.offsets_[n]);

  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last)
      throw InstanceError("duplicate edge at vertex " + std::to_string(v));
  }
  return g;
}

Graph Graph::from_adjacency(std::span<const std::uint32_t> degrees,
                            std::span<const Vertex> neighbors) {
  const std::size_t n = degrees.size();
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degrees[v];
  if (g.offsets_[n] != neighbors.size())
    throw InstanceError("degree sum does not match neighbor array length");
  if (neighbors.size() % 2 != 0) throw InstanceError("odd degree sum");
  g.neighbors_.assign(neighbors.begin(), neighbors.end());

  for (Vertex v = 0; v < n; ++v) {
    auto adj = g.neighbors(v);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (adj[i] >= n) throw InstanceError("neighbor out of range at vertex " + std::to_string(v));
      if (adj[i] == v) throw InstanceError("self-loop at vertex " + std::to_string(v));
      if (i > 0 && adj[i - 1] >= adj[i])
        throw InstanceError("neighbor list of vertex " + std::to_string(v) + " is not strictly sorted");
    }
  }
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(v))
      if (!g.has_edge(u, v)) throw InstanceError("asymmetric adjacency at vertex " + std::to_string(v));
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::uint32_t Graph::max_degree() const noexcept {
  std::uint32_t best = 0;
  for (Vertex v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::has_isolated_vertex() const noexcept {
  for (Vertex v = 0; v < vertex_count(); ++v)
    if (degree(v) == 0) return true;
  return false;
}

bool Graph::is_connected() const {
  const std::size_t n = vertex_count();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::deque<Vertex> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : neighbors(v)) {
      if (seen[u]) continue;
      seen[u] = true;
      ++reached;
      queue.push_back(u);
    }
  }
  return reached == n;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (Vertex u : neighbors(v))
      if (v < u) out.emplace_back(v, u);
  return out;
}

void RequirementVector::validate(const Graph& g) const {
  if (values_.size() != g.vertex_count())
    throw InstanceError("requirement vector has " + std::to_string(values_.size()) +
                        " entries, graph has " + std::to_string(g.vertex_count()) + " vertices");
  for (Vertex v = 0; v < values_.size(); ++v)
    if (values_[v] > g.degree(v))
      throw InstanceError("requirement " + std::to_string(values_[v]) + " of vertex " +
                          std::to_string(v) + " exceeds its degree " + std::to_string(g.degree(v)));
}

bool RequirementVector::has_zero() const noexcept {
  return std::find(values_.begin(), values_.end(), 0u) != values_.end();
}

RequirementVector capped_requirements(const Graph& g, std::uint32_t cap) {
  if (cap < 1) throw InstanceError("requirement cap must be at least 1");
  std::vector<std::uint32_t> r(g.vertex_count());
  for (Vertex v = 0; v < r.size(); ++v) r[v] = std::min(g.degree(v), cap);
  return RequirementVector(std::move(r));
}

NormalizedInstance normalize_requirements(const Graph& g, const RequirementVector& r) {
  r.validate(g);
  const std::size_t n = g.vertex_count();
  std::vector<std::int64_t> residual(r.values().begin(), r.values().end());
  std::vector<bool> active(n, false);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v)
    if (residual[v] <= 0) {
      active[v] = true;
      queue.push_back(v);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex u : g.neighbors(queue[head])) {
      if (active[u]) continue;
      if (--residual[u] <= 0) {
        active[u] = true;
        queue.push_back(u);
      }
    }
  }

  NormalizedInstance out;
  out.preactivated = queue.size();
  std::vector<Vertex> relabel(n, 0);
  for (Vertex v = 0; v < n; ++v)
    if (!active[v]) {
      relabel[v] = static_cast<Vertex>(out.origin.size());
      out.origin.push_back(v);
    }

  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges())
    if (!active[u] && !active[v]) edges.emplace_back(relabel[u], relabel[v]);
  out.graph = Graph::from_edges(out.origin.size(), edges);

  std::vector<std::uint32_t> req;
  req.reserve(out.origin.size());
  for (Vertex v : out.origin) req.push_back(static_cast<std::uint32_t>(residual[v]));
  out.requirements = RequirementVector(std::move(req));
  return out;
}

}  // namespace tss
