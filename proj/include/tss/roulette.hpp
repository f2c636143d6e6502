#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "tss/random.hpp"

namespace tss {

/// Biased roulette: index i is drawn with probability weights[i] / sum.
/// Cumulative-weight inverse sampling with a single uniform draw; if every
/// weight is zero the draw is uniform over all indices.
class BiasedRoulette {
 public:
  explicit BiasedRoulette(std::span<const double> weights) : cumulative_(weights.size()) {
    if (weights.empty()) throw std::invalid_argument("roulette needs at least one slot");
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!(weights[i] >= 0.0)) throw std::invalid_argument("roulette weights must be nonnegative");
      acc += weights[i];
      cumulative_[i] = acc;
    }
  }

  std::size_t size() const noexcept { return cumulative_.size(); }
  double total() const noexcept { return cumulative_.back(); }

  std::size_t spin(Rng& rng) const {
    if (total() <= 0.0) return static_cast<std::size_t>(uniform_int(rng, 0, cumulative_.size() - 1));
    const double target = uniform01(rng) * total();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
    if (i == cumulative_.size()) {
      // target rounded up to the total: take the last slot with positive width
      i = cumulative_.size() - 1;
      while (i > 0 && cumulative_[i] == cumulative_[i - 1]) --i;
    }
    return i;
  }

 private:
  std::vector<double> cumulative_;
};

/// One-shot spin without keeping the cumulative table.
inline std::size_t spin_roulette(std::span<const double> weights, Rng& rng) {
  return BiasedRoulette(weights).spin(rng);
}

}  // namespace tss
