#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tss/graph.hpp"
#include "tss/propagation.hpp"
#include "tss/random.hpp"

namespace tss {

/// Randomized greedy construction. While undominated vertices remain, draws
/// x from a biased roulette over X weighted by |N[x]| / |X|, adds it and
/// propagates. Works from whatever `state` already dominates and returns
/// only the vertices it added.
Individual construct_greedy(const Graph& g, PropagationState& state, Rng& rng);

/// Selection score used by the reference heuristic when no vertex is forced:
/// threshold / (degree * (degree + 1)) on the residual graph.
double reference_score(std::uint32_t residual_threshold, std::uint32_t residual_degree) noexcept;

/// Threshold-pruning reference heuristic. Repeatedly
///   1. retires a vertex whose residual threshold is 0 (it is activated),
///   2. else adds to the target set a vertex whose residual degree is below
///      its residual threshold,
///   3. else retires one of the `window` vertices with the highest
///      reference_score, chosen uniformly.
/// window = 1 is the deterministic heuristic and draws nothing from rng.
Individual construct_reference(const Graph& g, const RequirementVector& r, std::size_t window, Rng& rng);

/// Starts from s1 AND s2, propagates its members in increasing order while
/// dropping those already dominated, then completes with construct_greedy.
Individual construct_mix(const Individual& s1, const Individual& s2, const Graph& g,
                         const RequirementVector& r, Rng& rng);

/// Three individuals per worker p = 1..workers, (reference with window p,
/// greedy, mix), gathered in worker order. Each worker draws from its own
/// stream derived from (master_seed, p).
std::vector<Individual> build_initial_generation(const Graph& g, const RequirementVector& r,
                                                 std::size_t workers, std::uint64_t master_seed);

}  // namespace tss
