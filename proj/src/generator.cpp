#include "tss/generator.hpp"

#include <string>
#include <vector>

#include "tss/random.hpp"

namespace tss {

Graph generate_random_graph(std::size_t n, double q, std::uint64_t seed, std::size_t max_retries) {
  if (n < 2) throw GenerationError("random graph needs at least 2 vertices");
  if (!(q >= 0.0 && q <= 1.0)) throw GenerationError("edge probability must lie in [0, 1]");
  if (max_retries == 0) throw GenerationError("max_retries must be positive");

  Rng rng = make_rng(seed, {0x67656eULL});
  std::vector<Edge> edges;
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    edges.clear();
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (uniform01(rng) < q) edges.emplace_back(u, v);
    Graph g = Graph::from_edges(n, edges);
    if (g.is_connected()) return g;
  }
  throw GenerationError("no connected G(" + std::to_string(n) + ", " + std::to_string(q) +
                        ") drawn in " + std::to_string(max_retries) + " attempts");
}

RequirementVector random_requirements(const Graph& g, std::uint64_t seed) {
  Rng rng = make_rng(seed, {0x726571ULL});
  std::vector<std::uint32_t> r(g.vertex_count());
  for (Vertex v = 0; v < r.size(); ++v) {
    if (g.degree(v) == 0) throw InstanceError("vertex " + std::to_string(v) + " is isolated");
    r[v] = static_cast<std::uint32_t>(uniform_int(rng, 1, g.degree(v)));
  }
  return RequirementVector(std::move(r));
}

}  // namespace tss
