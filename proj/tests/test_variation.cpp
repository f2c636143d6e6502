#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tss/roulette.hpp"
#include "tss/seeding.hpp"
#include "tss/variation.hpp"

using namespace tss;

namespace {

Individual bits(const char* s) { return Individual::from_string(s); }

EvaluatedGeneration evaluated(std::vector<Individual> members, std::size_t n) {
  return evaluate_generation(std::move(members), CensusStore(n), GaWeights{});
}

/// |observed - expected| <= 3 sigma for a binomial count.
bool within_3sigma(double observed, double trials, double p) {
  const double sigma = std::sqrt(trials * p * (1.0 - p));
  return std::abs(observed - trials * p) <= 3.0 * sigma + 1e-9;
}

}  // namespace

TEST_CASE("cut crossovers") {
  const std::array<std::size_t, 1> one{3};
  auto [a, b] = cut_crossover(bits("111000"), bits("000111"), one);
  CHECK(a.to_string() == "111111");
  CHECK(b.to_string() == "000000");

  const std::array<std::size_t, 2> two{2, 4};
  auto [c, d] = cut_crossover(bits("111111"), bits("000000"), two);
  CHECK(c.to_string() == "110011");
  CHECK(d.to_string() == "001100");

  Rng rng = make_rng(1);
  for (int i = 0; i < 200; ++i) {
    auto [x, y] = one_point_crossover(bits("1111111111"), bits("0000000000"), rng);
    const std::size_t cut = x.size();
    CHECK(cut >= 2);
    CHECK(cut <= 9);
    CHECK(x.size() + y.size() == 10);
    auto [u, v] = two_point_crossover(bits("1111111111"), bits("0000000000"), rng);
    CHECK(u.size() + v.size() == 10);
    CHECK(u.test(0));
    CHECK(u.test(1));
    CHECK_FALSE(u.test(5));
  }
  CHECK_THROWS(one_point_crossover(bits("10"), bits("01"), rng));
  CHECK_THROWS(two_point_crossover(bits("10101"), bits("01010"), rng));
}

TEST_CASE("random cut crossover uses round(delta) cuts") {
  Rng rng = make_rng(2);
  // Alternating segments from complementary parents: every cut is a switch.
  const Individual ones = bits("1111111111111111");
  const Individual zeros = bits("0000000000000000");
  for (double delta : {0.2, 1.0, 3.4, 6.0, 40.0}) {
    auto [a, b] = random_cut_crossover(ones, zeros, delta, rng);
    std::size_t switches = 0;
    for (Vertex v = 1; v < 16; ++v) switches += a.test(v) != a.test(v - 1) ? 1 : 0;
    const auto wanted = static_cast<std::size_t>(std::max(1.0, std::round(delta)));
    CHECK(switches == std::min<std::size_t>(wanted, 15));
    CHECK(a.size() + b.size() == 16);
  }
}

TEST_CASE("uniform crossover edge probabilities") {
  Rng rng = make_rng(3);
  const Individual p1 = bits("1100101"), p2 = bits("0110011");
  auto [a, b] = uniform_crossover(p1, p2, 0.0, rng);
  CHECK(a == p1);
  CHECK(b == p2);
  auto [c, d] = uniform_crossover(p1, p2, 1.0, rng);
  CHECK(c == p2);
  CHECK(d == p1);
  auto [e, f] = uniform_crossover(p1, p1, 0.5, rng);
  CHECK(e == p1);
  CHECK(f == p1);
}

TEST_CASE("logical operators") {
  auto [a1, a2] = logical_children(LogicalKind::And, bits("1100"), bits("1010"));
  CHECK(a1.to_string() == "1000");
  CHECK(a2.to_string() == "1000");
  auto [o1, o2] = logical_children(LogicalKind::Or, bits("1100"), bits("1010"));
  CHECK(o1.to_string() == "1110");
  CHECK(o2.to_string() == "1110");
  auto [n1, n2] = negated_children(bits("1100"), bits("1010"));
  CHECK(n1.to_string() == "0011");
  CHECK(n2.to_string() == "0101");

  Rng rng = make_rng(4);
  auto [r1, r2] = random_logical_children(LogicalKind::And, bits("1100"), bits("1010"), 0.0, rng);
  CHECK(r1.to_string() == "1100");
  CHECK(r2.to_string() == "1010");
  auto [s1, s2] = random_logical_children(LogicalKind::Or, bits("1100"), bits("1010"), 4.0, rng);
  CHECK(s1.to_string() == "1110");
  CHECK(s2.to_string() == "1110");
}

TEST_CASE("logical size dominance and purity") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    Individual p1(30), p2(30);
    for (Vertex v = 0; v < 30; ++v) {
      p1.assign(v, gen() & 1);
      p2.assign(v, gen() & 1);
    }
    const Individual c1 = p1, c2 = p2;
    auto [a, unused_a] = logical_children(LogicalKind::And, p1, p2);
    auto [o, unused_o] = logical_children(LogicalKind::Or, p1, p2);
    CHECK(a.size() <= std::min(p1.size(), p2.size()));
    CHECK(o.size() >= std::max(p1.size(), p2.size()));
    CHECK(p1 == c1);
    CHECK(p2 == c2);
  }
}

TEST_CASE("average operator thresholds") {
  const std::vector<Individual> gen{bits("1110"), bits("1100"), bits("1000"), bits("1001")};
  // v0: 4/4, v1: 2/4, v2: 1/4, v3: 1/4
  auto [a, b] = average_children(gen);
  CHECK(a.to_string() == "1000");
  CHECK(b.to_string() == "1000");

  const std::vector<Individual> three{bits("110"), bits("110"), bits("100"), bits("010")};
  // v0: 3/4 -> both, v1: 3/4 -> both
  auto [c, d] = average_children(three);
  CHECK(c.to_string() == "110");
  CHECK(d.to_string() == "110");

  // 11 of 20 = 55%: above 50%, not above 60%.
  std::vector<Individual> twenty(20, bits("0"));
  for (int i = 0; i < 11; ++i) twenty[i] = bits("1");
  auto [e, f] = average_children(twenty);
  CHECK(e.to_string() == "1");
  CHECK(f.to_string() == "0");

  const std::vector<Individual> same(3, bits("0110"));
  auto [g, h] = average_children(same);
  CHECK(g == same[0]);
  CHECK(h == same[0]);
}

TEST_CASE("consensus operator") {
  Rng rng = make_rng(6);
  const Individual p1 = bits("1010"), p2 = bits("0101");
  CensusStore all(4);
  all.record(std::vector<Individual>(3, bits("1111")));
  auto [a, b] = consensus_children(p1, p2, all, 0.0, rng);
  CHECK(a == p1);
  CHECK(b == p2);
  auto [c, d] = consensus_children(p1, p2, all, 4.0, rng);
  CHECK(c.to_string() == "1111");
  CHECK(d.to_string() == "1111");

  CensusStore none(4);
  none.record(std::vector<Individual>(3, bits("0000")));
  auto [e, f] = consensus_children(p1, p2, none, 4.0, rng);
  CHECK(e.to_string() == "0000");
  CHECK(f.to_string() == "0000");

  const CensusStore fresh(4);
  auto [g, h] = consensus_children(p1, p2, fresh, 4.0, rng);
  CHECK(g.empty());
  CHECK(h.empty());
}

TEST_CASE("swap operator") {
  Rng rng = make_rng(7);
  // Leaves 0..3 around center 4; leaves 2 and 3 carry an extra pendant each so
  // they have the highest degree among the leaves. The center has the largest
  // member id, so the scan ends right after the swap fires there.
  const std::vector<Edge> edges{{0, 4}, {1, 4}, {2, 4}, {3, 4}, {2, 5}, {3, 6}};
  const Graph g = Graph::from_edges(7, edges);
  const RequirementVector r({1, 1, 1, 1, 2, 1, 1});
  const Individual center = Individual::from_vertices(7, std::vector<Vertex>{4});
  CHECK(swap_neighbors(center, g, r, 0.0, rng) == center);
  CHECK(swap_neighbors(center, g, r, 7.0, rng).vertices() == std::vector<Vertex>{2, 3});
  CHECK(swap_neighbors(Individual(7), g, r, 7.0, rng).empty());

  // Plain star: all leaves tie, lower ids win.
  const std::vector<Edge> plain{{0, 4}, {1, 4}, {2, 4}, {3, 4}};
  const Graph s = Graph::from_edges(5, plain);
  const RequirementVector rs({1, 1, 1, 1, 2});
  CHECK(swap_neighbors(Individual::from_string("00001"), s, rs, 5.0, rng).to_string() == "11000");
}

TEST_CASE("double-new target and sizes") {
  CHECK(double_new_target(10, 3.0, 50) == 7);
  CHECK(double_new_target(2, 5.0, 50) == 2);
  CHECK(double_new_target(4, 2.6, 50) == 1);
  CHECK(double_new_target(3, 3.0, 50) == 3);

  Rng rng = make_rng(8);
  const CensusStore fresh(20);
  std::array<int, 20> hits{};
  for (int i = 0; i < 2000; ++i) {
    auto [a, b] = double_new_children(bits("11111111110000000000"), bits("00000111111111100000"), 7, fresh, rng);
    CHECK(a.size() == 7);
    CHECK(b.size() == 7);
    for (Vertex v : b.vertices()) ++hits[v];
  }
  // uniform fallback: every vertex is drawn
  for (int h : hits) CHECK(h > 0);

  CensusStore skewed(4);
  skewed.record(std::vector<Individual>(5, bits("1100")));
  for (int i = 0; i < 100; ++i) {
    auto [a, b] = double_new_children(bits("1000"), bits("0100"), 2, skewed, rng);
    CHECK(b.to_string() == "1100");
  }
}

TEST_CASE("mutation edge cases") {
  Rng rng = make_rng(9);
  const Individual s = bits("1100110011");
  CHECK(mutate(s, 0.0, rng) == s);
  CHECK(mutate(s, 10.0, rng).empty());
  CHECK(mutate(Individual(10), 10.0, rng).empty());
}

TEST_CASE("forced mutation uses the two fittest members") {
  Rng rng = make_rng(10);
  const auto prev = evaluated({bits("1111"), bits("1000"), bits("1100")}, 4);
  auto [a, b] = forced_mutation(prev, 0.0, rng);
  CHECK(a.to_string() == "1000");
  CHECK(b.to_string() == "1100");

  const auto single = evaluated({bits("0110")}, 4);
  auto [c, d] = forced_mutation(single, 0.0, rng);
  CHECK(c == d);

  // At delta = n/2 the children almost never equal their parents.
  const auto big = evaluated({bits("1010101010101010"), bits("1100110011001100")}, 16);
  int unchanged = 0;
  for (int i = 0; i < 500; ++i) {
    auto [x, y] = forced_mutation(big, 8.0, rng);
    if (x == big.members[big.by_fitness()[0]]) ++unchanged;
  }
  CHECK(unchanged < 5);
}

TEST_CASE("repair") {
  Rng rng = make_rng(11);
  const Graph g = generate_random_graph(15, 0.3, 3);
  const RequirementVector ones = oracle::uniform(15, 1);
  const CensusStore census(15);
  const GaWeights w;

  Individual all(15);
  for (Vertex v = 0; v < 15; ++v) all.set(v);
  const Individual one = optimize_individual(all, g, ones, census, w, rng);
  CHECK(one.size() == 1);
  CHECK(is_feasible(g, ones, one));

  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [h, r] = oracle::random_instance(12, 0.4, gen());
    Individual s(12);
    for (Vertex v = 0; v < 12; ++v)
      if (gen() % 3 == 0) s.set(v);
    const Individual fixed = optimize_individual(s, h, r, CensusStore(12), w, rng);
    CHECK(is_feasible(h, r, fixed));

    const Individual fresh = optimize_individual(Individual(12), h, r, CensusStore(12), w, rng);
    CHECK(is_feasible(h, r, fresh));

    // An irredundant feasible input is kept as a subset.
    PropagationState st(h, r);
    const Individual greedy = construct_greedy(h, st, rng);
    const Individual again = optimize_individual(greedy, h, r, CensusStore(12), w, rng);
    for (Vertex v : again.vertices()) CHECK(greedy.test(v));
  }
}

TEST_CASE("reproduction") {
  // Four-vertex toy where {0} alone is not enough; AND of 1100 and 1010 is
  // 1000 which the repair must complete.
  const Graph g = oracle::cycle(4);
  const RequirementVector r = oracle::uniform(4, 2);
  const CensusStore census(4);
  GaWeights w;
  w.mutation = 0.0;
  const auto prev = evaluate_generation({bits("1010"), bits("0101"), bits("1100")}, census, w);
  const ReproductionContext ctx{g, r, prev, census, w, 1.0};
  Rng rng = make_rng(13);
  for (int i = 0; i < 50; ++i) {
    const Offspring o = reproduce_with(Operator::And, ctx, 1, rng);
    CHECK(is_feasible(g, r, o.first));
    CHECK(is_feasible(g, r, o.second));
    CHECK(o.elite == prev.members[prev.by_quality()[0]]);
    CHECK(o.op == Operator::And);
  }
  CHECK_THROWS(reproduce_with(Operator::And, ctx, 4, rng));
}

TEST_CASE("every operator yields feasible children") {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + gen() % 20;
    const auto [g, r] = oracle::random_instance(n, 0.3, gen());
    Rng rng = make_rng(gen());
    CensusStore census(n);
    auto members = build_initial_generation(g, r, 2, gen());
    census.record(members);
    const GaWeights w;
    const auto prev = evaluate_generation(std::move(members), census, w);
    const ReproductionContext ctx{g, r, prev, census, w, 0.5 + static_cast<double>(gen() % 8)};
    for (std::size_t k = 1; k <= kOperatorCount; ++k) {
      const Offspring o = reproduce_with(operator_from_number(k), ctx, 1 + gen() % 6, rng);
      CHECK(is_feasible(g, r, o.first));
      CHECK(is_feasible(g, r, o.second));
      CHECK(is_feasible(g, r, o.elite));
    }
  }
}

TEST_CASE("roulette") {
  const std::vector<double> w{1, 0, 3};
  const BiasedRoulette wheel(w);
  Rng rng = make_rng(15);
  std::array<int, 3> hits{};
  for (int i = 0; i < 20000; ++i) ++hits[wheel.spin(rng)];
  CHECK(hits[1] == 0);
  CHECK(within_3sigma(hits[0], 20000, 0.25));

  const std::vector<double> zeros{0, 0, 0, 0};
  std::array<int, 4> flat{};
  const BiasedRoulette uniform(zeros);
  for (int i = 0; i < 20000; ++i) ++flat[uniform.spin(rng)];
  for (int h : flat) CHECK(within_3sigma(h, 20000, 0.25));

  CHECK_THROWS(BiasedRoulette(std::vector<double>{}));
  CHECK_THROWS(BiasedRoulette(std::vector<double>{1, -1}));
}

TEST_CASE("operator names") {
  CHECK(operator_name(Operator::OnePoint) == "OPC");
  CHECK(operator_name(Operator::ForcedMutation) == "FM");
  CHECK(operator_index(Operator::DoubleNew) == 12);
  CHECK(edit_probability(5.0, 4) == 1.0);
  CHECK(edit_probability(-1.0, 4) == 0.0);
}
