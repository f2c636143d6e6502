#include "tss/exact.hpp"

#include <atomic>
#include <cstdint>
#include <exception>
#include <vector>

#include "tss/random.hpp"
#include "tss/seeding.hpp"

namespace tss {

namespace {

class Backtracker {
 public:
  Backtracker(std::size_t n, std::size_t incumbent) : n_(n), incumbent_(incumbent) {}

  std::size_t bound() const { return incumbent_.load(std::memory_order_relaxed); }

  void explore_from(const PropagationState& root, Vertex start) {
    if (bound() <= 1) return;
    PropagationState state = root;
    state.propagate(start);
    if (state.complete()) {
      offer(1);
      return;
    }
    std::size_t depth = 1;
    descend(state, start, depth);
  }

 private:
  void descend(const PropagationState& state, Vertex last, std::size_t depth) {
    for (Vertex v = last + 1; v < n_; ++v) {
      if (state.dominated(v)) continue;
      if (depth + 1 >= bound()) return;
      PropagationState next = state;
      next.propagate(v);
      if (next.complete())
        offer(depth + 1);
      else
        descend(next, v, depth + 1);
    }
  }

  void offer(std::size_t size) {
    std::size_t cur = incumbent_.load(std::memory_order_relaxed);
    while (size < cur && !incumbent_.compare_exchange_weak(cur, size, std::memory_order_relaxed)) {
    }
  }

  std::size_t n_;
  std::atomic<std::size_t> incumbent_;
};

/// Depth-limited search for the first sequence of exactly `k` vertices in
/// lexicographic order whose closure covers the graph.
bool first_solution(const PropagationState& state, Vertex from, std::size_t k, std::vector<Vertex>& chosen) {
  if (chosen.size() == k) return false;
  const std::size_t n = state.vertex_count();
  for (Vertex v = from; v < n; ++v) {
    if (state.dominated(v)) continue;
    PropagationState next = state;
    next.propagate(v);
    chosen.push_back(v);
    if (next.complete() || first_solution(next, v + 1, k, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

bool naive_covers(const Graph& g, const RequirementVector& r, std::uint32_t mask) {
  const std::size_t n = g.vertex_count();
  std::vector<char> active(n);
  for (Vertex v = 0; v < n; ++v) active[v] = (mask >> v) & 1u;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> next = active;
    for (Vertex v = 0; v < n; ++v) {
      if (active[v]) continue;
      std::uint32_t count = 0;
      for (Vertex u : g.neighbors(v)) count += active[u] ? 1 : 0;
      if (count >= r[v]) {
        next[v] = 1;
        changed = true;
      }
    }
    active.swap(next);
  }
  for (char a : active)
    if (!a) return false;
  return true;
}

}  // namespace

ExactResult exact_backtracking(const Graph& g, const RequirementVector& r, const ExactOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n > options.max_vertices)
    throw ExactLimitError("instance has " + std::to_string(n) + " vertices, exact search is limited to " +
                          std::to_string(options.max_vertices) + "; use the genetic algorithm instead");
  if (options.workers < 1) throw std::invalid_argument("need at least one worker");
  r.validate(g);

  const PropagationState root(g, r);
  ExactResult result{0, Individual(n)};
  if (root.complete()) return result;

  PropagationState scratch = root;
  Rng rng = make_rng(0);
  const std::size_t greedy_size = construct_greedy(g, scratch, rng).size();

  std::vector<Vertex> starts;
  for (Vertex v = 0; v < n; ++v)
    if (!root.dominated(v)) starts.push_back(v);

  Backtracker search(n, greedy_size);
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(starts.size());
#pragma omp parallel for num_threads(static_cast<int>(options.workers)) schedule(static, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      search.explore_from(root, starts[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(tss_exact_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  result.size = search.bound();
  std::vector<Vertex> chosen;
  first_solution(root, 0, result.size, chosen);
  result.solution = Individual::from_vertices(n, chosen);
  return result;
}

std::size_t brute_force(const Graph& g, const RequirementVector& r) {
  const std::size_t n = g.vertex_count();
  if (n > 20) throw ExactLimitError("brute force is limited to 20 vertices");
  r.validate(g);
  const std::uint32_t full = n == 0 ? 0 : (std::uint32_t{1} << n) - 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k == 0) {
      if (naive_covers(g, r, 0)) return 0;
      continue;
    }
    std::uint32_t mask = (std::uint32_t{1} << k) - 1;
    while (mask <= full) {
      if (naive_covers(g, r, mask)) return k;
      const std::uint32_t low = mask & (~mask + 1);
      const std::uint32_t ripple = mask + low;
      mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
  }
  return n;
}

}  // namespace tss
