#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "tss/census.hpp"
#include "tss/fitness.hpp"
#include "tss/graph.hpp"
#include "tss/propagation.hpp"
#include "tss/variation.hpp"

namespace tss {

struct GaParams {
  std::size_t g_min = 10;
  std::size_t g_max = 500;
  std::size_t g_w_improvement = 50;
  GaWeights weights;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  std::optional<std::chrono::duration<double>> time_limit;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

enum class StopReason { Converged, GenerationLimit, TimeLimit };
std::string_view stop_reason_name(StopReason reason) noexcept;

struct OperatorStats {
  std::array<std::uint64_t, kOperatorCount> invocations{};
  /// Children that beat the previous generation's smallest member.
  std::array<std::uint64_t, kOperatorCount> improvements{};

  OperatorStats& operator+=(const OperatorStats& other) noexcept;
};

struct GenerationRecord {
  std::size_t index = 0;
  std::size_t best_size = 0;  // best so far
  double delta = 0.0;
  std::size_t ct_improvement = 0;
  double elapsed_ms = 0.0;
};

struct RunResult {
  Individual best;
  /// Index of the last generation built (B0 not counted).
  std::size_t generations = 0;
  StopReason stop = StopReason::Converged;
  double wall_ms = 0.0;
  double delta0 = 0.0;
  double delta_step = 0.0;
  OperatorStats operators;
  std::vector<GenerationRecord> trace;
};

/// min((max r)^2 * n / sum r, n / 4)
double initial_delta(const Graph& g, const RequirementVector& r);

/// Census-driven genetic algorithm over a fixed instance.
///
/// One generation = every worker p in 1..P produces two repaired children
/// plus a copy of the p-th best previous member (parallel phase), the 3P
/// members are gathered in worker order, evaluated, and recorded into the
/// census. Worker p in generation i draws only from the stream
/// (seed, p, i), so results do not depend on thread scheduling.
class GeneticAlgorithm {
 public:
  using Observer = std::function<void(const GenerationRecord&, const EvaluatedGeneration&)>;

  GeneticAlgorithm(const Graph& g, const RequirementVector& r, GaParams params);

  void set_observer(Observer observer) { observer_ = std::move(observer); }

  /// Builds, evaluates and records B0. Must be called once before step().
  void initialize();
  /// Builds B_{i+1} from B_i and updates the improvement counter and delta.
  void step();
  /// Loop condition, evaluated for the generation that would be built next.
  bool should_continue() const;
  /// initialize() + step() until should_continue() is false.
  RunResult run();

  std::size_t generation_index() const noexcept { return index_; }
  std::size_t ct_improvement() const noexcept { return ct_improvement_; }
  double delta() const noexcept { return delta_; }
  double delta0() const noexcept { return delta0_; }
  double delta_step() const noexcept { return delta_step_; }
  const Individual& best() const noexcept { return best_; }
  const EvaluatedGeneration& current() const noexcept { return current_; }
  const CensusStore& census() const noexcept { return census_; }
  const OperatorStats& operators() const noexcept { return operators_; }
  bool time_exhausted() const;

 private:
  void finish_generation(std::vector<Individual> members);

  const Graph& graph_;
  const RequirementVector& requirements_;
  GaParams params_;
  Observer observer_;

  CensusStore census_;
  EvaluatedGeneration current_;
  Individual best_;
  OperatorStats operators_;
  std::vector<GenerationRecord> trace_;
  std::size_t index_ = 0;
  std::size_t ct_improvement_ = 0;
  double delta0_ = 0.0;
  double delta_step_ = 0.0;
  double delta_ = 0.0;
  bool initialized_ = false;
  std::chrono::steady_clock::time_point started_;
};

RunResult run_genetic_algorithm(const Graph& g, const RequirementVector& r, const GaParams& params,
                                GeneticAlgorithm::Observer observer = {});

}  // namespace tss
