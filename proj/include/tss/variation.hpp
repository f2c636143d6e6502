#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

#include "tss/census.hpp"
#include "tss/fitness.hpp"
#include "tss/graph.hpp"
#include "tss/propagation.hpp"
#include "tss/random.hpp"

namespace tss {

enum class Operator : std::uint8_t {
  OnePoint = 1,
  TwoPoint,
  RandomCut,
  Uniform,
  And,
  Or,
  Not,
  RandomAnd,
  RandomOr,
  Average,
  Consensus,
  Swap,
  DoubleNew,
  ForcedMutation,
};

inline constexpr std::size_t kOperatorCount = 14;

constexpr std::size_t operator_index(Operator op) noexcept { return static_cast<std::size_t>(op) - 1; }
constexpr Operator operator_from_number(std::size_t r) noexcept { return static_cast<Operator>(r); }
std::string_view operator_name(Operator op) noexcept;

using Children = std::pair<Individual, Individual>;

/// Everything a worker reads while building its offspring. All references
/// stay frozen for the duration of a generation.
struct ReproductionContext {
  const Graph& graph;
  const RequirementVector& requirements;
  const EvaluatedGeneration& previous;
  const CensusStore& census;
  const GaWeights& weights;
  double delta;
};

/// Per-position edit probability delta / n, clamped to [0, 1].
double edit_probability(double delta, std::size_t n) noexcept;

// -- crossovers ------------------------------------------------------------

/// Segment exchange at the given cut points. A cut c (1 <= c < n) ends a
/// segment after the first c positions; segments alternate between parents,
/// child one starting with p1. Cuts must be strictly increasing.
Children cut_crossover(const Individual& p1, const Individual& p2, std::span<const std::size_t> cuts);

/// One cut drawn from [2, n - 1]. Needs n >= 3.
Children one_point_crossover(const Individual& p1, const Individual& p2, Rng& rng);
/// Cuts from [2, n/2 - 1] and [n/2 + 1, n - 1]. Needs n >= 6.
Children two_point_crossover(const Individual& p1, const Individual& p2, Rng& rng);
/// max(1, round(delta)) distinct cuts (at most n - 1), uniform over [1, n - 1].
Children random_cut_crossover(const Individual& p1, const Individual& p2, double delta, Rng& rng);
/// Each position is exchanged between the children with probability prob_cross.
Children uniform_crossover(const Individual& p1, const Individual& p2, double prob_cross, Rng& rng);

// -- logical ---------------------------------------------------------------

enum class LogicalKind { And, Or };

Children logical_children(LogicalKind kind, const Individual& p1, const Individual& p2);
Children negated_children(const Individual& p1, const Individual& p2);
/// Per position, with probability delta / n both children take p1 op p2;
/// otherwise each keeps its own parent's bit.
Children random_logical_children(LogicalKind kind, const Individual& p1, const Individual& p2,
                                 double delta, Rng& rng);

// -- population based ------------------------------------------------------

/// v in the first child iff more than 50% of `generation` contains v,
/// in the second iff more than 60% does.
Children average_children(std::span<const Individual> generation);

/// Per position, with probability delta / n the bit becomes
/// (V-Census(v) > W / 2), else the parent's bit is kept.
Children consensus_children(const Individual& p1, const Individual& p2, const CensusStore& census,
                            double delta, Rng& rng);

/// Scans v = 0..n-1; a member v is, with probability delta / n, replaced by
/// the r[v] - |N(v) n S| highest-degree neighbours outside S (ties: lower id).
/// No propagation is done.
Individual swap_neighbors(const Individual& parent, const Graph& g, const RequirementVector& r,
                          double delta, Rng& rng);

/// best_size - round(delta) when that stays positive, else best_size;
/// clamped to [1, n].
std::size_t double_new_target(std::size_t best_size, double delta, std::size_t n) noexcept;

/// First child: per-position coin between the parents, then random
/// insertions or removals until it has `target` vertices. Second child:
/// `target` vertices drawn one by one from a roulette over unused vertices
/// weighted by V-Census (uniform when all weights are zero).
Children double_new_children(const Individual& p1, const Individual& p2, std::size_t target,
                             const CensusStore& census, Rng& rng);

/// Mutates the two fittest members of `previous` unconditionally.
Children forced_mutation(const EvaluatedGeneration& previous, double delta, Rng& rng);

// -- mutation and repair ---------------------------------------------------

/// First pass: each position may be switched on and, independently and in
/// the same step, switched off, each with probability delta / n. Second
/// pass: every member is removed with probability delta / n.
Individual mutate(Individual s, double delta, Rng& rng);

/// Rebuilds a feasible individual from the members of s. While vertices
/// remain undominated: members already dominated are dropped; a surviving
/// member (or, once none survive, an undominated vertex) is drawn by a
/// roulette over w'(v) and propagated. w'(v) blends the residual degree
/// ratio |N[v]| / |X| with the census rarity (W - V-Census(v)) / W.
Individual optimize_individual(const Individual& s, const Graph& g, const RequirementVector& r,
                               const CensusStore& census, const GaWeights& weights, Rng& rng);

/// Runs operator 1..12 on explicit parents. Tiny instances where the cut
/// intervals are empty fall back to uniform crossover.
Children apply_operator(Operator op, const Individual& p1, const Individual& p2,
                        const ReproductionContext& ctx, Rng& rng);

struct Offspring {
  Individual first;
  Individual second;
  Individual elite;
  Operator op = Operator::OnePoint;
};

/// One worker's share of a new generation: draws an operator uniformly from
/// 1..14, builds two children, mutates each with probability pMutation,
/// repairs both, and copies the rank-th best member of the previous
/// generation (rank is 1-based).
Offspring reproduce(const ReproductionContext& ctx, std::size_t rank, Rng& rng);

/// Same as reproduce with the operator fixed.
Offspring reproduce_with(Operator op, const ReproductionContext& ctx, std::size_t rank, Rng& rng);

}  // namespace tss
