#include "tss/engine.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "tss/random.hpp"
#include "tss/seeding.hpp"

namespace tss {

void GaParams::validate() const {
  if (g_min < 1 || g_min > g_max) throw std::invalid_argument("need 1 <= g_min <= g_max");
  if (g_w_improvement < 1) throw std::invalid_argument("g_w_improvement must be at least 1");
  if (workers < 1) throw std::invalid_argument("need at least one worker");
  if (time_limit && time_limit->count() < 0) throw std::invalid_argument("time limit must be nonnegative");
  weights.validate();
}

std::string_view stop_reason_name(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::Converged: return "converged";
    case StopReason::GenerationLimit: return "g_max";
    case StopReason::TimeLimit: return "time_limit";
  }
  return "unknown";
}

OperatorStats& OperatorStats::operator+=(const OperatorStats& other) noexcept {
  for (std::size_t i = 0; i < kOperatorCount; ++i) {
    invocations[i] += other.invocations[i];
    improvements[i] += other.improvements[i];
  }
  return *this;
}

double initial_delta(const Graph& g, const RequirementVector& r) {
  r.validate(g);
  const double n = static_cast<double>(g.vertex_count());
  const auto values = r.values();
  const double max_r = static_cast<double>(*std::max_element(values.begin(), values.end()));
  const double sum_r = std::accumulate(values.begin(), values.end(), 0.0);
  if (sum_r <= 0.0) return n / 4.0;
  return std::min(max_r * max_r * n / sum_r, n / 4.0);
}

GeneticAlgorithm::GeneticAlgorithm(const Graph& g, const RequirementVector& r, GaParams params)
    : graph_(g), requirements_(r), params_(std::move(params)) {
  params_.validate();
  if (g.vertex_count() == 0) throw InstanceError("cannot solve an empty graph");
  r.validate(g);
}

bool GeneticAlgorithm::time_exhausted() const {
  if (!params_.time_limit) return false;
  return std::chrono::steady_clock::now() - started_ >= *params_.time_limit;
}

void GeneticAlgorithm::initialize() {
  started_ = std::chrono::steady_clock::now();
  delta0_ = initial_delta(graph_, requirements_);
  delta_step_ = 3.0 * delta0_ / static_cast<double>(params_.g_w_improvement);
  delta_ = delta0_;
  ct_improvement_ = 0;
  index_ = 0;
  census_ = CensusStore(graph_.vertex_count());
  operators_ = {};
  trace_.clear();

  auto members = build_initial_generation(graph_, requirements_, params_.workers, params_.seed);
  current_ = evaluate_generation(std::move(members), census_, params_.weights,
                                 static_cast<int>(params_.workers));
  census_.record(current_.members);
  best_ = current_.members[current_.by_quality().front()];
  initialized_ = true;

  GenerationRecord rec{0, best_.size(), delta_, ct_improvement_,
                       std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started_).count()};
  trace_.push_back(rec);
  if (observer_) observer_(rec, current_);
}

void GeneticAlgorithm::step() {
  if (!initialized_) throw std::logic_error("initialize() must run before step()");
  const std::size_t workers = params_.workers;
  const std::size_t next = index_ + 1;
  const std::size_t previous_min = current_.min_size();
  const ReproductionContext ctx{graph_, requirements_, current_, census_, params_.weights, delta_};

  std::vector<Offspring> offspring(workers);
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(workers);
#pragma omp parallel for num_threads(static_cast<int>(workers)) schedule(static, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      const std::size_t rank = static_cast<std::size_t>(i) + 1;
      Rng rng = make_rng(params_.seed, {rank, next});
      offspring[static_cast<std::size_t>(i)] = reproduce(ctx, rank, rng);
    } catch (...) {
#pragma omp critical(tss_engine_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Individual> members;
  members.reserve(3 * workers);
  for (auto& o : offspring) {
    const std::size_t k = operator_index(o.op);
    ++operators_.invocations[k];
    if (o.first.size() < previous_min) ++operators_.improvements[k];
    if (o.second.size() < previous_min) ++operators_.improvements[k];
    members.push_back(std::move(o.first));
    members.push_back(std::move(o.second));
    members.push_back(std::move(o.elite));
  }
  finish_generation(std::move(members));
}

void GeneticAlgorithm::finish_generation(std::vector<Individual> members) {
  current_ = evaluate_generation(std::move(members), census_, params_.weights, static_cast<int>(params_.workers));
  census_.record(current_.members);
  ++index_;

  const Individual& smallest = current_.members[current_.by_quality().front()];
  if (smallest.size() < best_.size()) {
    best_ = smallest;
    ct_improvement_ = 0;
    delta_ = delta0_;
  } else {
    ++ct_improvement_;
    delta_ = delta0_ + static_cast<double>(ct_improvement_) * delta_step_;
  }

  GenerationRecord rec{index_, best_.size(), delta_, ct_improvement_,
                       std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started_).count()};
  trace_.push_back(rec);
  if (observer_) observer_(rec, current_);
}

bool GeneticAlgorithm::should_continue() const {
  const std::size_t next = index_ + 1;
  const bool wanted = (next <= params_.g_min || ct_improvement_ <= params_.g_w_improvement) && next <= params_.g_max;
  return wanted && !time_exhausted();
}

RunResult GeneticAlgorithm::run() {
  initialize();
  while (should_continue()) step();

  RunResult result;
  result.best = current_.members[current_.by_quality().front()];
  result.generations = index_;
  const std::size_t next = index_ + 1;
  if (next > params_.g_max)
    result.stop = StopReason::GenerationLimit;
  else if (next > params_.g_min && ct_improvement_ > params_.g_w_improvement)
    result.stop = StopReason::Converged;
  else
    result.stop = StopReason::TimeLimit;
  result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started_).count();
  result.delta0 = delta0_;
  result.delta_step = delta_step_;
  result.operators = operators_;
  result.trace = trace_;
  return result;
}

RunResult run_genetic_algorithm(const Graph& g, const RequirementVector& r, const GaParams& params,
                                GeneticAlgorithm::Observer observer) {
  GeneticAlgorithm ga(g, r, params);
  ga.set_observer(std::move(observer));
  return ga.run();
}

}  // namespace tss
