#include "tss/census.hpp"

#include <ostream>
#include <stdexcept>

namespace tss {

std::size_t CensusStore::KeyHash::operator()(const std::vector<std::uint64_t>& key) const noexcept {
  // FNV-style fold of splitmix64-finalized words.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t w : key) {
    w += 0x9e3779b97f4a7c15ULL;
    w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ULL;
    w = (w ^ (w >> 27)) * 0x94d049bb133111ebULL;
    w ^= w >> 31;
    h = (h ^ w) * 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

void CensusStore::record(std::span<const Individual> generation) {
  for (const Individual& s : generation) {
    if (s.universe() != v_census_.size())
      throw std::invalid_argument("individual does not match census vertex count");
    std::vector<std::uint64_t> key(s.words().begin(), s.words().end());
    ++s_census_[std::move(key)];
    for (Vertex v : s.vertices()) ++v_census_[v];
    ++w_total_;
  }
}

std::uint64_t CensusStore::s_count(const Individual& s) const {
  const std::vector<std::uint64_t> key(s.words().begin(), s.words().end());
  auto it = s_census_.find(key);
  return it == s_census_.end() ? 0 : it->second;
}

void CensusStore::write_csv(std::ostream& out) const {
  out << "vertex,v_census\n";
  for (std::size_t v = 0; v < v_census_.size(); ++v) out << v << ',' << v_census_[v] << '\n';
  out << "# w_total=" << w_total_ << " distinct=" << s_census_.size() << '\n';
}

}  // namespace tss
