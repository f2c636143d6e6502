#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "tss/graph.hpp"

namespace tss {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Connected G(n, q): every vertex pair is an edge with probability q;
/// disconnected draws are discarded and redrawn from the same stream.
/// Throws GenerationError after `max_retries` disconnected draws.
Graph generate_random_graph(std::size_t n, double q, std::uint64_t seed,
                            std::size_t max_retries = 1000);

/// r[v] uniform in {1, ..., degree(v)}. Requires no isolated vertices.
RequirementVector random_requirements(const Graph& g, std::uint64_t seed);

}  // namespace tss
