#include "tss/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tss {

void GaWeights::validate() const {
  for (double w : {size, s_census, degree, v_census})
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("GA weights must be finite and nonnegative");
  if (!(size + s_census > 0.0)) throw std::invalid_argument("w_size + w_scensus must be positive");
  if (!(degree + v_census > 0.0)) throw std::invalid_argument("w_degree + w_vcensus must be positive");
  for (double p : {prob_cross, mutation})
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probabilities must lie in [0, 1]");
}

double protofitness(const Individual& s, const CensusStore& census, const GaWeights& w) {
  const double n = static_cast<double>(s.universe());
  const double z = static_cast<double>(s.size());
  const double total = static_cast<double>(census.total());
  const double seen = static_cast<double>(census.s_count(s));
  return ((n - z) * w.size + (total - seen) * w.s_census) / (w.size + w.s_census);
}

std::vector<double> sigma_scale(std::span<const double> pfs) {
  if (pfs.empty()) throw std::invalid_argument("sigma_scale needs at least one value");
  const double count = static_cast<double>(pfs.size());
  const double mean = std::accumulate(pfs.begin(), pfs.end(), 0.0) / count;
  double var = 0.0;
  for (double x : pfs) var += (x - mean) * (x - mean);
  const double sigma = std::sqrt(var / count);

  std::vector<double> f(pfs.size(), 1.0);
  if (sigma == 0.0) return f;
  for (std::size_t i = 0; i < pfs.size(); ++i)
    f[i] = std::max(1.0 + (pfs[i] - mean) / (2.0 * sigma), kFitnessFloor);
  return f;
}

std::size_t EvaluatedGeneration::min_size() const {
  std::size_t best = members.empty() ? 0 : members.front().size();
  for (const auto& s : members) best = std::min(best, s.size());
  return best;
}

std::vector<std::size_t> EvaluatedGeneration::by_fitness() const {
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) { return f[a] > f[b]; });
  return order;
}

std::vector<std::size_t> EvaluatedGeneration::by_quality() const {
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    if (members[a].size() != members[b].size()) return members[a].size() < members[b].size();
    return f[a] > f[b];
  });
  return order;
}

EvaluatedGeneration evaluate_generation(std::vector<Individual> members, const CensusStore& census,
                                        const GaWeights& w, int threads) {
  if (members.empty()) throw std::invalid_argument("cannot evaluate an empty generation");
  EvaluatedGeneration gen;
  gen.members = std::move(members);
  gen.pf.resize(gen.members.size());

  const auto count = static_cast<std::ptrdiff_t>(gen.members.size());
#pragma omp parallel for num_threads(threads) schedule(static) if (threads > 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) gen.pf[i] = protofitness(gen.members[i], census, w);

  const double mean = std::accumulate(gen.pf.begin(), gen.pf.end(), 0.0) / static_cast<double>(count);
  double var = 0.0;
  for (double x : gen.pf) var += (x - mean) * (x - mean);
  gen.pf_mean = mean;
  gen.pf_stddev = std::sqrt(var / static_cast<double>(count));
  gen.f = sigma_scale(gen.pf);

  gen.best_index = 0;
  for (std::size_t i = 1; i < gen.f.size(); ++i)
    if (gen.f[i] > gen.f[gen.best_index]) gen.best_index = i;
  return gen;
}

}  // namespace tss
