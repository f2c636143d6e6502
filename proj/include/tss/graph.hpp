#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tss {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Raised when an instance violates a structural precondition
/// (bad edge, out-of-range vertex, requirement above degree, empty graph).
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph in compressed sparse row form.
///
/// Vertices are 0..n-1. Every neighbor list is strictly increasing, loop-free
/// and symmetric; the object is immutable once built and can be shared by
/// any number of concurrent readers.
class Graph {
 public:
  Graph() = default;

  /// Builds from undirected simple edges (each pair listed once, any order).
  /// Throws InstanceError on loops, duplicates or out-of-range endpoints.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  /// Builds from a degree array and the concatenated neighbor lists.
  /// All invariants are validated.
  static Graph from_adjacency(std::span<const std::uint32_t> degrees,
                              std::span<const Vertex> neighbors);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::uint32_t degree(Vertex v) const noexcept {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  bool has_edge(Vertex u, Vertex v) const noexcept;

  std::uint32_t max_degree() const noexcept;
  bool has_isolated_vertex() const noexcept;
  bool is_connected() const;

  /// Concatenated neighbor lists, in vertex order.
  std::span<const Vertex> adjacency() const noexcept { return neighbors_; }
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<Vertex> neighbors_;
};

/// Per-vertex activation thresholds. Valid against a graph when
/// 0 <= r[v] <= degree(v); solvers additionally expect r[v] >= 1
/// (see normalize_requirements).
class RequirementVector {
 public:
  RequirementVector() = default;
  explicit RequirementVector(std::vector<std::uint32_t> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  std::uint32_t operator[](Vertex v) const noexcept { return values_[v]; }
  std::span<const std::uint32_t> values() const noexcept { return values_; }

  /// Throws InstanceError when the vector does not fit the graph.
  void validate(const Graph& g) const;
  bool has_zero() const noexcept;

  bool operator==(const RequirementVector&) const = default;

 private:
  std::vector<std::uint32_t> values_;
};

/// r[v] = min(degree(v), cap).
RequirementVector capped_requirements(const Graph& g, std::uint32_t cap);

/// Result of removing pre-activated (r = 0) vertices.
struct NormalizedInstance {
  Graph graph;
  RequirementVector requirements;
  /// origin[v] = vertex id in the input graph.
  std::vector<Vertex> origin;
  std::size_t preactivated = 0;
};

/// Activates every r = 0 vertex, cascades the activation through the
/// thresholds of its neighbours, and returns the induced instance on the
/// vertices that are still inactive. The remaining requirements satisfy
/// 1 <= r[v] <= degree(v).
NormalizedInstance normalize_requirements(const Graph& g, const RequirementVector& r);

}  // namespace tss
