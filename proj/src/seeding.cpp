#include "tss/seeding.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "tss/roulette.hpp"

namespace tss {

Individual construct_greedy(const Graph& g, PropagationState& state, Rng& rng) {
  Individual added(g.vertex_count());
  std::vector<double> weights;
  while (!state.complete()) {
    const auto open = state.undominated();
    const double x_size = static_cast<double>(open.size());
    weights.resize(open.size());
    for (std::size_t i = 0; i < open.size(); ++i)
      weights[i] = static_cast<double>(state.residual_degree(open[i])) / x_size;
    const Vertex x = open[spin_roulette(weights, rng)];
    added.set(x);
    state.propagate(x);
  }
  return added;
}

double reference_score(std::uint32_t residual_threshold, std::uint32_t residual_degree) noexcept {
  const double d = static_cast<double>(residual_degree);
  return static_cast<double>(residual_threshold) / (d * (d + 1.0));
}

namespace {

/// Bookkeeping for the reference heuristic: each live vertex sits in exactly
/// one of three ordered pools.
class ReferencePools {
 public:
  ReferencePools(const Graph& g, const RequirementVector& r)
      : threshold_(r.values().begin(), r.values().end()),
        degree_(g.vertex_count()),
        pool_(g.vertex_count(), kNone),
        score_(g.vertex_count(), 0.0) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      degree_[v] = g.degree(v);
      classify(v);
    }
  }

  bool empty() const { return activated_.empty() && forced_.empty() && ranked_.empty(); }
  bool has_activated() const { return !activated_.empty(); }
  bool has_forced() const { return !forced_.empty(); }
  Vertex first_activated() const { return *activated_.begin(); }
  Vertex first_forced() const { return *forced_.begin(); }

  Vertex pick_ranked(std::size_t window, Rng& rng) const {
    const std::size_t width = std::min(window, ranked_.size());
    std::size_t skip = width <= 1 ? 0 : static_cast<std::size_t>(uniform_int(rng, 0, width - 1));
    auto it = ranked_.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(skip));
    return it->second;
  }

  void retire(Vertex v) {
    unclassify(v);
    pool_[v] = kRetired;
  }
  bool live(Vertex v) const { return pool_[v] != kRetired; }

  void lower_threshold(Vertex u) {
    if (threshold_[u] > 0) --threshold_[u];
  }
  void lower_degree(Vertex u) {
    --degree_[u];
    unclassify(u);
    classify(u);
  }
  void refresh(Vertex u) {
    unclassify(u);
    classify(u);
  }

 private:
  enum : std::uint8_t { kNone, kActivated, kForced, kRanked, kRetired };

  void classify(Vertex v) {
    if (threshold_[v] == 0) {
      pool_[v] = kActivated;
      activated_.insert(v);
    } else if (degree_[v] < threshold_[v]) {
      pool_[v] = kForced;
      forced_.insert(v);
    } else {
      pool_[v] = kRanked;
      score_[v] = reference_score(threshold_[v], degree_[v]);
      ranked_.emplace(-score_[v], v);
    }
  }

  void unclassify(Vertex v) {
    switch (pool_[v]) {
      case kActivated: activated_.erase(v); break;
      case kForced: forced_.erase(v); break;
      case kRanked: ranked_.erase({-score_[v], v}); break;
      default: break;
    }
    pool_[v] = kNone;
  }

  std::vector<std::uint32_t> threshold_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint8_t> pool_;
  std::vector<double> score_;
  std::set<Vertex> activated_;
  std::set<Vertex> forced_;
  std::set<std::pair<double, Vertex>> ranked_;
};

}  // namespace

Individual construct_reference(const Graph& g, const RequirementVector& r, std::size_t window, Rng& rng) {
  if (window < 1) throw std::invalid_argument("selection window must be at least 1");
  r.validate(g);
  ReferencePools pools(g, r);
  Individual target(g.vertex_count());

  while (!pools.empty()) {
    Vertex v;
    if (pools.has_activated()) {
      v = pools.first_activated();
      for (Vertex u : g.neighbors(v))
        if (pools.live(u)) pools.lower_threshold(u);
    } else if (pools.has_forced()) {
      v = pools.first_forced();
      target.set(v);
      for (Vertex u : g.neighbors(v))
        if (pools.live(u)) pools.lower_threshold(u);
    } else {
      v = pools.pick_ranked(window, rng);
    }
    pools.retire(v);
    for (Vertex u : g.neighbors(v))
      if (pools.live(u)) pools.lower_degree(u);
  }
  return target;
}

Individual construct_mix(const Individual& s1, const Individual& s2, const Graph& g,
                         const RequirementVector& r, Rng& rng) {
  PropagationState state(g, r);
  Individual mixed(g.vertex_count());
  for (Vertex v : s1.vertices()) {
    if (!s2.test(v) || state.dominated(v)) continue;
    mixed.set(v);
    state.propagate(v);
  }
  for (Vertex v : construct_greedy(g, state, rng).vertices()) mixed.set(v);
  return mixed;
}

std::vector<Individual> build_initial_generation(const Graph& g, const RequirementVector& r,
                                                 std::size_t workers, std::uint64_t master_seed) {
  if (workers < 1) throw std::invalid_argument("need at least one worker");
  r.validate(g);
  std::vector<Individual> members(3 * workers);
  const auto count = static_cast<std::ptrdiff_t>(workers);
#pragma omp parallel for num_threads(static_cast<int>(workers)) schedule(static, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::size_t p = static_cast<std::size_t>(i) + 1;
    Rng rng = make_rng(master_seed, {p, 0});
    Individual s1 = construct_reference(g, r, p, rng);
    PropagationState state(g, r);
    Individual s2 = construct_greedy(g, state, rng);
    Individual s3 = construct_mix(s1, s2, g, r, rng);
    members[3 * i] = std::move(s1);
    members[3 * i + 1] = std::move(s2);
    members[3 * i + 2] = std::move(s3);
  }
  return members;
}

}  // namespace tss
