#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "tss/graph.hpp"
#include "tss/propagation.hpp"

namespace tss {

/// Raised when an instance is too large for exhaustive search.
class ExactLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactOptions {
  std::size_t workers = 1;
  std::size_t max_vertices = 60;
};

struct ExactResult {
  std::size_t size = 0;
  /// Lexicographically first minimum target set (by sorted vertex list).
  Individual solution;
};

/// Pruned backtracking over increasing-label vertex sequences. Only
/// undominated vertices are tried as extensions, each on a copied
/// propagation state, and branches that cannot beat the incumbent are cut.
/// Start vertices are dealt round-robin to the workers, who share the
/// incumbent size. The reported solution does not depend on `workers`.
ExactResult exact_backtracking(const Graph& g, const RequirementVector& r, const ExactOptions& options = {});

/// Subset enumeration by increasing cardinality with a naive round-based
/// activation check. Refuses n > 20.
std::size_t brute_force(const Graph& g, const RequirementVector& r);

}  // namespace tss
