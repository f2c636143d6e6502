#include "tss/propagation.hpp"

#include <stdexcept>

namespace tss {

Individual Individual::from_vertices(std::size_t n, std::span<const Vertex> members) {
  Individual s(n);
  for (Vertex v : members) {
    if (v >= n) throw std::out_of_range("vertex " + std::to_string(v) + " outside individual");
    s.set(v);
  }
  return s;
}

Individual Individual::from_string(std::string_view bits) {
  Individual s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      s.set(static_cast<Vertex>(i));
    else if (bits[i] != '0')
      throw std::invalid_argument("bit string may only contain 0 and 1");
  }
  return s;
}

std::vector<Vertex> Individual::vertices() const {
  std::vector<Vertex> out;
  out.reserve(size_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      const int bit = __builtin_ctzll(word);
      out.push_back(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
  return out;
}

std::string Individual::to_string() const {
  std::string out(n_, '0');
  for (Vertex v = 0; v < n_; ++v)
    if (test(v)) out[v] = '1';
  return out;
}

PropagationState::PropagationState(const Graph& g, const RequirementVector& r)
    : graph_(&g),
      residual_req_(r.values().begin(), r.values().end()),
      residual_deg_(g.vertex_count()),
      mark_(g.vertex_count(), kUndominated),
      undominated_(g.vertex_count()),
      position_(g.vertex_count()) {
  if (r.size() != g.vertex_count()) throw InstanceError("requirement vector does not match graph");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    residual_deg_[v] = g.degree(v);
    undominated_[v] = v;
    position_[v] = v;
  }
  queue_.reserve(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (residual_req_[v] == 0) propagate(v);
}

void PropagationState::leave_undominated(Vertex v) noexcept {
  const std::uint32_t pos = position_[v];
  const Vertex last = undominated_.back();
  undominated_[pos] = last;
  position_[last] = pos;
  undominated_.pop_back();
}

std::size_t PropagationState::propagate(Vertex x) {
  if (mark_[x] != kUndominated) return 0;
  queue_.clear();
  queue_.push_back(x);
  mark_[x] = kQueued;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const Vertex v = queue_[head];
    for (Vertex u : graph_->neighbors(v)) {
      if (mark_[u] == kProcessed) continue;  // already trimmed from N[v]
      --residual_deg_[u];
      if (residual_req_[u] > 0) --residual_req_[u];
      if (mark_[u] == kUndominated && residual_req_[u] == 0) {
        mark_[u] = kQueued;
        queue_.push_back(u);
      }
    }
    residual_deg_[v] = 0;
    mark_[v] = kProcessed;
    leave_undominated(v);
  }
  return queue_.size();
}

Individual activation_closure(const Graph& g, const RequirementVector& r, const Individual& s) {
  PropagationState state(g, r);
  for (Vertex v : s.vertices()) state.propagate(v);
  Individual closure(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (state.dominated(v)) closure.set(v);
  return closure;
}

bool is_feasible(const Graph& g, const RequirementVector& r, const Individual& s) {
  if (s.universe() != g.vertex_count()) return false;
  PropagationState state(g, r);
  for (Vertex v : s.vertices()) {
    state.propagate(v);
    if (state.complete()) return true;
  }
  return state.complete();
}

}  // namespace tss
