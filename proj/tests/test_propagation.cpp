#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tss/propagation.hpp"

using namespace tss;

TEST_CASE("individual bookkeeping") {
  Individual s(70);
  CHECK(s.size() == 0);
  s.set(3);
  s.set(3);
  s.set(69);
  CHECK(s.size() == 2);
  s.reset(3);
  s.reset(3);
  CHECK(s.size() == 1);
  CHECK(s.vertices() == std::vector<Vertex>{69});

  const Individual t = Individual::from_string("1100");
  CHECK(t.size() == 2);
  CHECK(t.to_string() == "1100");
  CHECK(t == Individual::from_vertices(4, std::vector<Vertex>{0, 1}));
}

TEST_CASE("path propagation dominates everything") {
  const Graph g = oracle::path(3);
  PropagationState st(g, oracle::uniform(3, 1));
  CHECK(st.propagate(0) == 3);
  CHECK(st.complete());
  CHECK(st.undominated_count() == 0);
}

TEST_CASE("star propagation from a leaf stops at the center") {
  const Graph g = oracle::star(3);
  PropagationState st(g, RequirementVector({3, 1, 1, 1}));
  CHECK(st.propagate(1) == 1);
  CHECK(st.dominated(1));
  CHECK_FALSE(st.dominated(0));
  CHECK(st.residual_requirement(0) == 2);
  CHECK(st.undominated_count() == 3);

  // Repeating is a no-op.
  const PropagationState before = st;
  CHECK(st.propagate(1) == 0);
  CHECK(st.undominated_count() == before.undominated_count());
  CHECK(st.residual_requirement(0) == before.residual_requirement(0));
}

TEST_CASE("closure hand cases") {
  const Graph c4 = oracle::cycle(4);
  const RequirementVector two = oracle::uniform(4, 2);
  CHECK(activation_closure(c4, two, Individual::from_string("1010")).size() == 4);
  CHECK(activation_closure(c4, two, Individual::from_string("1100")).size() == 2);
  CHECK(activation_closure(c4, two, Individual(4)).size() == 0);
  CHECK(activation_closure(c4, two, Individual::from_string("1111")).size() == 4);

  const Graph star = oracle::star(3);
  const RequirementVector rs({3, 1, 1, 1});
  CHECK(is_feasible(star, rs, Individual::from_string("1000")));
  CHECK_FALSE(is_feasible(star, rs, Individual::from_string("0100")));

  const Graph g = generate_random_graph(10, 0.4, 1);
  const RequirementVector ones = oracle::uniform(10, 1);
  for (Vertex v = 0; v < 10; ++v) {
    Individual s(10);
    s.set(v);
    CHECK(is_feasible(g, ones, s));
  }
}

TEST_CASE("closure matches the naive fixed point") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    const double q = 0.2 + 0.1 * static_cast<double>(rng() % 7);
    const auto [g, r] = oracle::random_instance(n, q, rng());
    const auto adj = oracle::adjacency_of(g);
    const std::vector<std::uint32_t> req(r.values().begin(), r.values().end());
    Individual s(n);
    for (Vertex v = 0; v < n; ++v)
      if (rng() % 3 == 0) s.set(v);
    std::size_t rounds = 0;
    const auto expected = oracle::closure(adj, req, oracle::to_bools(s), &rounds);
    CHECK(oracle::to_bools(activation_closure(g, r, s)) == expected);
    CHECK(rounds <= n - 1);
  }
}

TEST_CASE("closure is monotone") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [g, r] = oracle::random_instance(10, 0.35, rng());
    Individual small(10), big(10);
    for (Vertex v = 0; v < 10; ++v) {
      const auto x = rng() % 4;
      if (x == 0) small.set(v);
      if (x <= 1) big.set(v);
    }
    const Individual a = activation_closure(g, r, small);
    const Individual b = activation_closure(g, r, big);
    for (Vertex v = 0; v < 10; ++v)
      if (a.test(v)) CHECK(b.test(v));
  }
}

TEST_CASE("zero requirements are active from the start") {
  const Graph g = oracle::path(3);
  PropagationState st(g, RequirementVector({0, 1, 2}));
  CHECK(st.dominated(0));
  CHECK(st.dominated(1));
  CHECK_FALSE(st.dominated(2));
}
