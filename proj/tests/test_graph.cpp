#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tss/generator.hpp"
#include "tss/graph.hpp"
#include "tss/instance_io.hpp"

using namespace tss;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "tss_graph_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

RawEdgeList parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

}  // namespace

TEST_CASE("graph construction validates edges") {
  const std::vector<Edge> ok{{0, 1}, {2, 1}};
  const Graph g = Graph::from_edges(3, ok);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(g.max_degree() == 2);
  CHECK(g.is_connected());

  const std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(2, loop), InstanceError);
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(Graph::from_edges(2, dup), InstanceError);
  const std::vector<Edge> range{{0, 5}};
  CHECK_THROWS_AS(Graph::from_edges(2, range), InstanceError);
}

TEST_CASE("adjacency construction rejects asymmetric input") {
  const std::vector<std::uint32_t> deg{1, 0};
  const std::vector<Vertex> nb{1};
  CHECK_THROWS_AS(Graph::from_adjacency(deg, nb), InstanceError);
}

TEST_CASE("requirement vector bounds") {
  const Graph g = oracle::path(3);
  CHECK_NOTHROW(RequirementVector({1, 2, 1}).validate(g));
  CHECK_THROWS_AS(RequirementVector({1, 3, 1}).validate(g), InstanceError);
  CHECK_THROWS_AS(RequirementVector({1, 1}).validate(g), InstanceError);
  CHECK(RequirementVector({0, 1, 1}).has_zero());
}

TEST_CASE("capped requirements") {
  const RequirementVector star = capped_requirements(oracle::star(4), 2);
  CHECK(star[0] == 2);
  for (Vertex v = 1; v <= 4; ++v) CHECK(star[v] == 1);

  const Graph k5 = oracle::complete(5);
  const RequirementVector r5 = capped_requirements(k5, 1);
  for (std::uint32_t x : r5.values()) CHECK(x == 1);

  const RequirementVector p3 = capped_requirements(oracle::path(3), 5);
  CHECK(p3 == RequirementVector({1, 2, 1}));
}

TEST_CASE("random graph generation") {
  const Graph k5 = generate_random_graph(5, 1.0, 3);
  CHECK(k5.edge_count() == 10);

  CHECK_THROWS_AS(generate_random_graph(3, 0.0, 1, 20), GenerationError);
  CHECK_THROWS(generate_random_graph(5, 1.5, 1));

  const Graph a = generate_random_graph(30, 0.1, 42);
  const Graph b = generate_random_graph(30, 0.1, 42);
  CHECK(a == b);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = generate_random_graph(12, 0.3, seed);
    CHECK(g.is_connected());
    CHECK_FALSE(g.has_isolated_vertex());
  }
}

TEST_CASE("random requirements") {
  const Graph k4 = oracle::complete(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RequirementVector r = random_requirements(k4, seed);
    for (std::uint32_t x : r.values()) {
      CHECK(x >= 1);
      CHECK(x <= 3);
    }
  }

  const Graph matching = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
  const RequirementVector rm = random_requirements(matching, 9);
  for (std::uint32_t x : rm.values()) CHECK(x == 1);

  const Graph g = generate_random_graph(20, 0.4, 5);
  CHECK(random_requirements(g, 77) == random_requirements(g, 77));
  CHECK_NOTHROW(random_requirements(g, 77).validate(g));
}

TEST_CASE("normalization removes pre-activated vertices") {
  // Path 0-1-2-3 with r = (0, 1, 2, 1): 0 activates 1, then 2 still needs 2.
  const Graph g = oracle::path(4);
  const NormalizedInstance norm = normalize_requirements(g, RequirementVector({0, 1, 2, 1}));
  CHECK(norm.preactivated == 2);
  CHECK(norm.graph.vertex_count() == 2);
  CHECK(norm.origin == std::vector<Vertex>{2, 3});
  CHECK(norm.requirements == RequirementVector({1, 1}));
}

TEST_CASE("edge list parsing") {
  const RawEdgeList a = parse("0 1\n1 0\n2 2\n");
  CHECK(a.records.size() == 3);
  CHECK(a.labels == std::vector<std::uint64_t>{0, 1, 2});

  const RawEdgeList b = parse("# c\n5 7\n");
  CHECK(b.records.size() == 1);
  CHECK(b.records[0] == Edge{0, 1});
  CHECK(b.labels == std::vector<std::uint64_t>{5, 7});

  try {
    parse("a b\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(parse("1 2\n3\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2 3\n"), ParseError);
}

TEST_CASE("preprocessing drops loops, duplicates and isolated vertices") {
  RawEdgeList raw = parse("0 1\n1 0\n2 2\n");
  raw.labels.push_back(3);  // vertex 3 is mentioned without edges
  const PreprocessResult res = preprocess(raw);
  CHECK(res.instance.graph.vertex_count() == 2);
  CHECK(res.instance.graph.edge_count() == 1);
  CHECK(res.report.vertices_before == 4);
  CHECK(res.report.edges_before == 3);
  CHECK(res.report.multi_edges_removed == 1);
  CHECK(res.report.loops_removed == 1);
  CHECK(res.report.isolated_removed == 2);
  CHECK(res.report.max_degree == 1);
  CHECK(res.instance.labels == std::vector<std::uint64_t>{0, 1});

  CHECK_THROWS_AS(preprocess(parse("4 4\n")), InstanceError);
}

TEST_CASE("preprocessing is idempotent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::ostringstream text;
    const int records = 5 + static_cast<int>(rng() % 40);
    for (int i = 0; i < records; ++i) text << rng() % 25 + 100 << ' ' << rng() % 25 + 100 << '\n';
    const PreprocessResult once = preprocess(parse(text.str()));

    std::ostringstream again;
    write_edge_list(again, once.instance.graph, once.instance.labels);
    const PreprocessResult twice = preprocess(parse(again.str()));
    CHECK(twice.instance.graph == once.instance.graph);
    CHECK(twice.instance.labels == once.instance.labels);
    CHECK(twice.report.multi_edges_removed == 0);
    CHECK(twice.report.loops_removed == 0);
    CHECK(twice.report.isolated_removed == 0);
  }
}

TEST_CASE("external ids survive relabeling") {
  const PreprocessResult res = preprocess(parse("900 17\n17 42\n42 900\n"));
  CHECK(res.instance.labels == std::vector<std::uint64_t>{17, 42, 900});
  CHECK(res.instance.graph.has_edge(0, 2));  // 17 - 900
}

TEST_CASE("requirement files") {
  const PreprocessResult res = preprocess(parse("10 20\n20 30\n"));
  std::istringstream in("# thresholds\n10 1\n20 2\n30 1\n99 4\n");
  const RequirementVector r = read_requirements(in, res.instance.labels);
  CHECK(r == RequirementVector({1, 2, 1}));

  std::istringstream missing("10 1\n20 2\n");
  CHECK_THROWS(read_requirements(missing, res.instance.labels));

  std::ostringstream out;
  write_requirements(out, r, res.instance.labels);
  std::istringstream back(out.str());
  CHECK(read_requirements(back, res.instance.labels) == r);
}

TEST_CASE("binary cache round trip") {
  const Graph g = generate_random_graph(25, 0.3, 8);
  const RequirementVector r = random_requirements(g, 8);

  std::stringstream with(std::ios::in | std::ios::out | std::ios::binary);
  write_binary(with, g, &r);
  const Instance a = read_binary(with);
  CHECK(a.graph == g);
  REQUIRE(a.requirements.has_value());
  CHECK(*a.requirements == r);

  std::stringstream without(std::ios::in | std::ios::out | std::ios::binary);
  write_binary(without, g, nullptr);
  const Instance b = read_binary(without);
  CHECK(b.graph == g);
  CHECK_FALSE(b.requirements.has_value());

  std::stringstream junk("TSSX0000");
  CHECK_THROWS(read_binary(junk));

  const auto path = scratch_dir() / "cache.tssb";
  Instance inst{g, {}, r};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) inst.labels.push_back(1000 + v);
  save_instance(path, inst);
  CHECK(is_binary_instance(path));
  const Instance loaded = load_instance(path);
  CHECK(loaded.graph == g);
  CHECK(loaded.labels == inst.labels);
  CHECK(*loaded.requirements == r);
}

TEST_CASE("text instances are preprocessed on load") {
  const auto path = scratch_dir() / "toy.edges";
  {
    std::ofstream out(path);
    out << "1 2\n2 1\n3 3\n2 4\n";
  }
  CHECK_FALSE(is_binary_instance(path));
  const Instance inst = load_instance(path);
  CHECK(inst.graph.vertex_count() == 3);
  CHECK(inst.graph.edge_count() == 2);
  CHECK_THROWS(load_instance(scratch_dir() / "does_not_exist.edges"));
}
