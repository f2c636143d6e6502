#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tss/graph.hpp"

namespace tss {

/// Candidate target set as a packed bit vector over the vertices, with a
/// cached population count.
class Individual {
 public:
  Individual() = default;
  explicit Individual(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static Individual from_vertices(std::size_t n, std::span<const Vertex> members);
  /// "1100" -> {0, 1} over n = 4. Test helper.
  static Individual from_string(std::string_view bits);

  std::size_t universe() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool test(Vertex v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1u; }
  void set(Vertex v) noexcept {
    if (!test(v)) {
      words_[v >> 6] |= std::uint64_t{1} << (v & 63);
      ++size_;
    }
  }
  void reset(Vertex v) noexcept {
    if (test(v)) {
      words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
      --size_;
    }
  }
  void assign(Vertex v, bool value) noexcept { value ? set(v) : reset(v); }

  std::vector<Vertex> vertices() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::string to_string() const;

  bool operator==(const Individual& o) const noexcept { return n_ == o.n_ && words_ == o.words_; }

 private:
  std::size_t n_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Scratch state of the queue-driven domination propagation.
///
/// Tracks the undominated set X, the residual neighbourhood size |N[v]|
/// (neighbours not yet processed), the residual requirement D[v] and the
/// dominated flag P[v]. The graph is never mutated; trimming of N is done
/// through the per-vertex residual counters. Vertices with r[v] = 0 are
/// activated on construction.
class PropagationState {
 public:
  PropagationState(const Graph& g, const RequirementVector& r);

  std::size_t vertex_count() const noexcept { return residual_req_.size(); }
  bool dominated(Vertex v) const noexcept { return mark_[v] != kUndominated; }
  bool complete() const noexcept { return undominated_.empty(); }

  /// X, in an unspecified but deterministic order.
  std::span<const Vertex> undominated() const noexcept { return undominated_; }
  std::size_t undominated_count() const noexcept { return undominated_.size(); }

  std::uint32_t residual_degree(Vertex v) const noexcept { return residual_deg_[v]; }
  std::uint32_t residual_requirement(Vertex v) const noexcept { return residual_req_[v]; }

  /// Asserts x as dominated and propagates breadth-first until no
  /// undominated vertex has its residual requirement at zero.
  /// Returns the number of newly dominated vertices; 0 when x already was.
  std::size_t propagate(Vertex x);

 private:
  enum : std::uint8_t { kUndominated = 0, kQueued = 1, kProcessed = 2 };

  void leave_undominated(Vertex v) noexcept;

  const Graph* graph_;
  std::vector<std::uint32_t> residual_req_;
  std::vector<std::uint32_t> residual_deg_;
  std::vector<std::uint8_t> mark_;
  std::vector<Vertex> undominated_;
  std::vector<std::uint32_t> position_;
  std::vector<Vertex> queue_;
};

/// Least fixed point of the activation rule started from s.
Individual activation_closure(const Graph& g, const RequirementVector& r, const Individual& s);

bool is_feasible(const Graph& g, const RequirementVector& r, const Individual& s);

}  // namespace tss
