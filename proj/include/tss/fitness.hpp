#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tss/census.hpp"
#include "tss/propagation.hpp"

namespace tss {

struct GaWeights {
  double size = 0.98;
  double s_census = 0.02;
  double degree = 0.98;
  double v_census = 0.02;
  double prob_cross = 0.3;
  double mutation = 0.025;

  /// Throws std::invalid_argument on negative weights, zero weight pairs or
  /// probabilities outside [0, 1].
  void validate() const;
};

/// ((n - z(S)) * wSize + (W - SCensus(S)) * wSCensus) / (wSize + wSCensus)
double protofitness(const Individual& s, const CensusStore& census, const GaWeights& w);

/// Sigma scaling with population standard deviation: all ones when the
/// deviation is zero, otherwise max(1 + (pf - mean) / (2 sigma), 0.01).
std::vector<double> sigma_scale(std::span<const double> pfs);

inline constexpr double kFitnessFloor = 0.01;

struct EvaluatedGeneration {
  std::vector<Individual> members;
  std::vector<double> pf;
  std::vector<double> f;
  /// Highest f, lowest index on ties.
  std::size_t best_index = 0;
  double pf_mean = 0.0;
  double pf_stddev = 0.0;

  std::size_t min_size() const;
  /// Member indices by decreasing f (ties: lower index first).
  std::vector<std::size_t> by_fitness() const;
  /// Member indices by increasing size, then decreasing f, then index.
  /// The k-th entry is the k-th best solution of the generation.
  std::vector<std::size_t> by_quality() const;
};

/// Protofitness per member (spread over `threads`), then one consolidation
/// of mean and deviation, then scaled fitness.
EvaluatedGeneration evaluate_generation(std::vector<Individual> members, const CensusStore& census,
                                        const GaWeights& w, int threads = 1);

}  // namespace tss
