#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "tss/propagation.hpp"

namespace tss {

/// Population history.
///
/// S-Census counts how often each distinct individual was recorded, keyed
/// by the full packed bit vector so that distinct individuals never share a
/// key. V-Census counts, per vertex, the recorded individuals containing it.
/// W is the total number of recorded individuals, repeats included.
///
/// Only mutated between generations; concurrent readers are fine otherwise.
class CensusStore {
 public:
  CensusStore() = default;
  explicit CensusStore(std::size_t n) : v_census_(n, 0) {}

  void record(std::span<const Individual> generation);

  std::uint64_t s_count(const Individual& s) const;
  /// Throws std::out_of_range for v >= n.
  std::uint64_t v_count(Vertex v) const { return v_census_.at(v); }

  std::uint64_t total() const noexcept { return w_total_; }
  std::size_t distinct() const noexcept { return s_census_.size(); }
  std::size_t vertex_count() const noexcept { return v_census_.size(); }
  std::span<const std::uint64_t> vertex_counts() const noexcept { return v_census_; }

  /// "vertex,v_census" rows followed by a "# w_total=.. distinct=.." line.
  void write_csv(std::ostream& out) const;

  bool operator==(const CensusStore&) const = default;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept;
  };

  std::unordered_map<std::vector<std::uint64_t>, std::uint64_t, KeyHash> s_census_;
  std::vector<std::uint64_t> v_census_;
  std::uint64_t w_total_ = 0;
};

}  // namespace tss
