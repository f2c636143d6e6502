#include "tss/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tss/roulette.hpp"

namespace tss {

std::string_view operator_name(Operator op) noexcept {
  static constexpr std::array<std::string_view, kOperatorCount> names{
      "OPC", "TPC", "RC", "UC", "AND", "OR", "NOT", "R-AND", "R-OR", "AVG", "CO", "SWAP", "DOUBLE-NEW", "FM"};
  return names[operator_index(op)];
}

double edit_probability(double delta, std::size_t n) noexcept {
  if (n == 0) return 0.0;
  return std::clamp(delta / static_cast<double>(n), 0.0, 1.0);
}

namespace {

void require_same_universe(const Individual& a, const Individual& b) {
  if (a.universe() != b.universe()) throw std::invalid_argument("parents differ in vertex count");
}

/// k distinct values from [lo, hi], increasing.
std::vector<std::size_t> sample_distinct(std::size_t lo, std::size_t hi, std::size_t k, Rng& rng) {
  std::vector<std::size_t> pool(hi - lo + 1);
  std::iota(pool.begin(), pool.end(), lo);
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(uniform_int(rng, i, pool.size() - 1));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

Children cut_crossover(const Individual& p1, const Individual& p2, std::span<const std::size_t> cuts) {
  require_same_universe(p1, p2);
  const std::size_t n = p1.universe();
  Children kids{Individual(n), Individual(n)};
  std::size_t next_cut = 0;
  bool swapped = false;
  for (Vertex v = 0; v < n; ++v) {
    while (next_cut < cuts.size() && cuts[next_cut] <= v) {
      swapped = !swapped;
      ++next_cut;
    }
    const Individual& a = swapped ? p2 : p1;
    const Individual& b = swapped ? p1 : p2;
    kids.first.assign(v, a.test(v));
    kids.second.assign(v, b.test(v));
  }
  return kids;
}

Children one_point_crossover(const Individual& p1, const Individual& p2, Rng& rng) {
  const std::size_t n = p1.universe();
  if (n < 3) throw std::invalid_argument("one-point crossover needs n >= 3");
  const std::array<std::size_t, 1> cut{static_cast<std::size_t>(uniform_int(rng, 2, n - 1))};
  return cut_crossover(p1, p2, cut);
}

Children two_point_crossover(const Individual& p1, const Individual& p2, Rng& rng) {
  const std::size_t n = p1.universe();
  if (n < 6) throw std::invalid_argument("two-point crossover needs n >= 6");
  const std::size_t half = n / 2;
  const std::size_t first = static_cast<std::size_t>(uniform_int(rng, 2, half - 1));
  const std::size_t second = static_cast<std::size_t>(uniform_int(rng, half + 1, n - 1));
  const std::array<std::size_t, 2> cuts{first, second};
  return cut_crossover(p1, p2, cuts);
}

Children random_cut_crossover(const Individual& p1, const Individual& p2, double delta, Rng& rng) {
  const std::size_t n = p1.universe();
  if (n < 2) return {p1, p2};
  const auto wanted = static_cast<std::size_t>(std::max(1.0, std::round(delta)));
  const auto cuts = sample_distinct(1, n - 1, std::min(wanted, n - 1), rng);
  return cut_crossover(p1, p2, cuts);
}

Children uniform_crossover(const Individual& p1, const Individual& p2, double prob_cross, Rng& rng) {
  require_same_universe(p1, p2);
  Children kids{p1, p2};
  for (Vertex v = 0; v < p1.universe(); ++v) {
    if (uniform01(rng) < prob_cross) {
      kids.first.assign(v, p2.test(v));
      kids.second.assign(v, p1.test(v));
    }
  }
  return kids;
}

Children logical_children(LogicalKind kind, const Individual& p1, const Individual& p2) {
  require_same_universe(p1, p2);
  Individual child(p1.universe());
  for (Vertex v = 0; v < p1.universe(); ++v)
    child.assign(v, kind == LogicalKind::And ? (p1.test(v) && p2.test(v)) : (p1.test(v) || p2.test(v)));
  return {child, child};
}

Children negated_children(const Individual& p1, const Individual& p2) {
  require_same_universe(p1, p2);
  Children kids{Individual(p1.universe()), Individual(p2.universe())};
  for (Vertex v = 0; v < p1.universe(); ++v) {
    kids.first.assign(v, !p1.test(v));
    kids.second.assign(v, !p2.test(v));
  }
  return kids;
}

Children random_logical_children(LogicalKind kind, const Individual& p1, const Individual& p2,
                                 double delta, Rng& rng) {
  require_same_universe(p1, p2);
  const double prob = edit_probability(delta, p1.universe());
  Children kids{p1, p2};
  for (Vertex v = 0; v < p1.universe(); ++v) {
    if (uniform01(rng) < prob) {
      const bool value = kind == LogicalKind::And ? (p1.test(v) && p2.test(v)) : (p1.test(v) || p2.test(v));
      kids.first.assign(v, value);
      kids.second.assign(v, value);
    }
  }
  return kids;
}

Children average_children(std::span<const Individual> generation) {
  if (generation.empty()) throw std::invalid_argument("average operator needs a non-empty generation");
  const std::size_t n = generation.front().universe();
  const std::size_t members = generation.size();
  std::vector<std::size_t> count(n, 0);
  for (const auto& s : generation)
    for (Vertex v : s.vertices()) ++count[v];
  Children kids{Individual(n), Individual(n)};
  for (Vertex v = 0; v < n; ++v) {
    // count > 0.5 |B| and count > 0.6 |B| in exact integer form
    if (10 * count[v] > 5 * members) kids.first.set(v);
    if (10 * count[v] > 6 * members) kids.second.set(v);
  }
  return kids;
}

Children consensus_children(const Individual& p1, const Individual& p2, const CensusStore& census,
                            double delta, Rng& rng) {
  require_same_universe(p1, p2);
  const double prob = edit_probability(delta, p1.universe());
  const std::uint64_t total = census.total();
  Children kids{p1, p2};
  for (Vertex v = 0; v < p1.universe(); ++v) {
    if (uniform01(rng) < prob) {
      const bool agreed = 2 * census.v_count(v) > total;
      kids.first.assign(v, agreed);
      kids.second.assign(v, agreed);
    }
  }
  return kids;
}

Individual swap_neighbors(const Individual& parent, const Graph& g, const RequirementVector& r,
                          double delta, Rng& rng) {
  const double prob = edit_probability(delta, g.vertex_count());
  Individual s = parent;
  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!s.test(v)) continue;
    if (!(uniform01(rng) < prob)) continue;
    s.reset(v);
    std::int64_t missing = r[v];
    candidates.clear();
    for (Vertex u : g.neighbors(v)) {
      if (s.test(u))
        --missing;
      else
        candidates.push_back(u);
    }
    if (missing <= 0) continue;
    // neighbor lists are sorted, so stable_sort keeps lower ids first on ties
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&g](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    for (std::size_t i = 0; i < static_cast<std::size_t>(missing) && i < candidates.size(); ++i)
      s.set(candidates[i]);
  }
  return s;
}

std::size_t double_new_target(std::size_t best_size, double delta, std::size_t n) noexcept {
  const auto step = static_cast<std::size_t>(std::llround(std::max(delta, 0.0)));
  std::size_t t = best_size > step ? best_size - step : best_size;
  return std::clamp<std::size_t>(t, 1, std::max<std::size_t>(n, 1));
}

Children double_new_children(const Individual& p1, const Individual& p2, std::size_t target,
                             const CensusStore& census, Rng& rng) {
  require_same_universe(p1, p2);
  const std::size_t n = p1.universe();
  target = std::min(target, n);

  Individual first(n);
  for (Vertex v = 0; v < n; ++v) first.assign(v, uniform_int(rng, 1, 2) == 1 ? p1.test(v) : p2.test(v));
  if (first.size() != target) {
    const bool grow = first.size() < target;
    std::vector<Vertex> pool;
    for (Vertex v = 0; v < n; ++v)
      if (first.test(v) != grow) pool.push_back(v);
    const std::size_t changes = grow ? target - first.size() : first.size() - target;
    for (std::size_t i = 0; i < changes; ++i) {
      const auto j = static_cast<std::size_t>(uniform_int(rng, i, pool.size() - 1));
      std::swap(pool[i], pool[j]);
      first.assign(pool[i], grow);
    }
  }

  Individual second(n);
  std::vector<Vertex> unused(n);
  std::iota(unused.begin(), unused.end(), Vertex{0});
  std::uint64_t total = 0;
  for (Vertex v = 0; v < n; ++v) total += census.v_count(v);
  while (second.size() < target) {
    std::size_t pick = 0;
    if (total > 0) {
      const std::uint64_t goal = uniform_int(rng, 0, total - 1);
      std::uint64_t acc = 0;
      for (pick = 0; pick < unused.size(); ++pick) {
        acc += census.v_count(unused[pick]);
        if (goal < acc) break;
      }
    } else {
      pick = static_cast<std::size_t>(uniform_int(rng, 0, unused.size() - 1));
    }
    const Vertex v = unused[pick];
    second.set(v);
    total -= census.v_count(v);
    unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return {std::move(first), std::move(second)};
}

Children forced_mutation(const EvaluatedGeneration& previous, double delta, Rng& rng) {
  if (previous.members.empty()) throw std::invalid_argument("forced mutation needs a non-empty generation");
  const auto order = previous.by_fitness();
  const Individual& best1 = previous.members[order[0]];
  const Individual& best2 = previous.members[order.size() > 1 ? order[1] : order[0]];
  Individual a = mutate(best1, delta, rng);
  Individual b = mutate(best2, delta, rng);
  return {std::move(a), std::move(b)};
}

Individual mutate(Individual s, double delta, Rng& rng) {
  const std::size_t n = s.universe();
  const double prob = edit_probability(delta, n);
  for (Vertex v = 0; v < n; ++v) {
    const double r1 = uniform01(rng);
    const double r2 = uniform01(rng);
    if (!s.test(v) && r1 < prob) s.set(v);
    if (s.test(v) && r2 < prob) s.reset(v);
  }
  for (Vertex v = 0; v < n; ++v) {
    const double r = uniform01(rng);
    if (s.test(v) && r < prob) s.reset(v);
  }
  return s;
}

Individual optimize_individual(const Individual& s, const Graph& g, const RequirementVector& r,
                               const CensusStore& census, const GaWeights& weights, Rng& rng) {
  PropagationState state(g, r);
  Individual out(g.vertex_count());
  std::vector<Vertex> pending = s.vertices();
  std::vector<double> w;

  const double total = static_cast<double>(census.total());
  const double blend = weights.degree + weights.v_census;
  auto weight_of = [&](Vertex v) {
    const double degree_term =
        static_cast<double>(state.residual_degree(v)) / static_cast<double>(state.undominated_count());
    const double census_term = total > 0.0 ? (total - static_cast<double>(census.v_count(v))) / total : 1.0;
    return (degree_term * weights.degree + census_term * weights.v_census) / blend;
  };

  while (!state.complete()) {
    std::erase_if(pending, [&state](Vertex v) { return state.dominated(v); });
    std::span<const Vertex> pool = pending.empty() ? state.undominated() : std::span<const Vertex>(pending);
    w.resize(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) w[i] = weight_of(pool[i]);
    const Vertex v = pool[spin_roulette(w, rng)];
    out.set(v);
    state.propagate(v);
  }
  return out;
}

Children apply_operator(Operator op, const Individual& p1, const Individual& p2,
                        const ReproductionContext& ctx, Rng& rng) {
  const std::size_t n = ctx.graph.vertex_count();
  switch (op) {
    case Operator::OnePoint:
      if (n < 3) return uniform_crossover(p1, p2, ctx.weights.prob_cross, rng);
      return one_point_crossover(p1, p2, rng);
    case Operator::TwoPoint:
      if (n < 6) return uniform_crossover(p1, p2, ctx.weights.prob_cross, rng);
      return two_point_crossover(p1, p2, rng);
    case Operator::RandomCut: return random_cut_crossover(p1, p2, ctx.delta, rng);
    case Operator::Uniform: return uniform_crossover(p1, p2, ctx.weights.prob_cross, rng);
    case Operator::And: return logical_children(LogicalKind::And, p1, p2);
    case Operator::Or: return logical_children(LogicalKind::Or, p1, p2);
    case Operator::Not: return negated_children(p1, p2);
    case Operator::RandomAnd: return random_logical_children(LogicalKind::And, p1, p2, ctx.delta, rng);
    case Operator::RandomOr: return random_logical_children(LogicalKind::Or, p1, p2, ctx.delta, rng);
    case Operator::Average: return average_children(ctx.previous.members);
    case Operator::Consensus: return consensus_children(p1, p2, ctx.census, ctx.delta, rng);
    case Operator::Swap: {
      Individual a = swap_neighbors(p1, ctx.graph, ctx.requirements, ctx.delta, rng);
      Individual b = swap_neighbors(p2, ctx.graph, ctx.requirements, ctx.delta, rng);
      return {std::move(a), std::move(b)};
    }
    case Operator::DoubleNew:
    case Operator::ForcedMutation: break;
  }
  throw std::invalid_argument("apply_operator handles operators 1..12 only");
}

Offspring reproduce(const ReproductionContext& ctx, std::size_t rank, Rng& rng) {
  const auto op = operator_from_number(static_cast<std::size_t>(uniform_int(rng, 1, kOperatorCount)));
  return reproduce_with(op, ctx, rank, rng);
}

Offspring reproduce_with(Operator op, const ReproductionContext& ctx, std::size_t rank, Rng& rng) {
  const EvaluatedGeneration& prev = ctx.previous;
  if (prev.members.empty()) throw std::invalid_argument("reproduction needs a previous generation");
  if (rank < 1 || rank > prev.members.size()) throw std::invalid_argument("worker rank out of range");

  Children kids;
  if (op == Operator::ForcedMutation) {
    kids = forced_mutation(prev, ctx.delta, rng);
  } else {
    const BiasedRoulette roulette(prev.f);
    const Individual& p1 = prev.members[roulette.spin(rng)];
    const Individual& p2 = prev.members[roulette.spin(rng)];
    if (op == Operator::DoubleNew) {
      const std::size_t best = prev.members[prev.best_index].size();
      const std::size_t target = double_new_target(best, ctx.delta, ctx.graph.vertex_count());
      kids = double_new_children(p1, p2, target, ctx.census, rng);
    } else {
      kids = apply_operator(op, p1, p2, ctx, rng);
    }
  }

  const double r1 = uniform01(rng);
  const double r2 = uniform01(rng);
  if (r1 < ctx.weights.mutation) kids.first = mutate(std::move(kids.first), ctx.delta, rng);
  if (r2 < ctx.weights.mutation) kids.second = mutate(std::move(kids.second), ctx.delta, rng);

  Offspring out;
  out.op = op;
  out.first = optimize_individual(kids.first, ctx.graph, ctx.requirements, ctx.census, ctx.weights, rng);
  out.second = optimize_individual(kids.second, ctx.graph, ctx.requirements, ctx.census, ctx.weights, rng);
  out.elite = prev.members[prev.by_quality()[rank - 1]];
  return out;
}

}  // namespace tss
