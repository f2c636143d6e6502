// Command-line front end: gen, preprocess, solve, bench, verify.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "tss/exact.hpp"
#include "tss/generator.hpp"
#include "tss/instance_io.hpp"
#include "tss/report.hpp"

namespace {

using nlohmann::json;

std::size_t default_workers() {
  if (const char* env = std::getenv("TSS_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring invalid TSS_WORKERS='" << env << "'\n";
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

struct GaFlags {
  std::size_t g_min = 10;
  std::size_t g_max = 500;
  std::size_t g_w_improvement = 50;
  double w_size = 0.98;
  double w_scensus = 0.02;
  double w_degree = 0.98;
  double w_vcensus = 0.02;
  double prob_cross = 0.3;
  double mutation = 0.025;
  double time_limit = 0.0;

  void attach(CLI::App& cmd) {
    cmd.add_option("--g-min", g_min, "Minimum number of generations")->capture_default_str();
    cmd.add_option("--g-max", g_max, "Maximum number of generations")->capture_default_str();
    cmd.add_option("--g-w-improvement", g_w_improvement, "Generations without improvement before stopping")
        ->capture_default_str();
    cmd.add_option("--w-size", w_size, "Protofitness weight of the solution size")->capture_default_str();
    cmd.add_option("--w-scensus", w_scensus, "Protofitness weight of the S-Census term")->capture_default_str();
    cmd.add_option("--w-degree", w_degree, "Repair weight of the residual degree")->capture_default_str();
    cmd.add_option("--w-vcensus", w_vcensus, "Repair weight of the V-Census term")->capture_default_str();
    cmd.add_option("--p-prob-cross", prob_cross, "Uniform crossover exchange probability")->capture_default_str();
    cmd.add_option("--p-mutation", mutation, "Probability of mutating a child")->capture_default_str();
    cmd.add_option("--time-limit", time_limit, "Wall-clock limit in seconds (0 = none)")->capture_default_str();
  }

  tss::GaParams params(std::size_t workers, std::uint64_t seed) const {
    tss::GaParams p;
    p.g_min = g_min;
    p.g_max = g_max;
    p.g_w_improvement = g_w_improvement;
    p.weights = {w_size, w_scensus, w_degree, w_vcensus, prob_cross, mutation};
    p.workers = workers;
    p.seed = seed;
    if (time_limit > 0) p.time_limit = std::chrono::duration<double>(time_limit);
    p.validate();
    return p;
  }
};

int cmd_gen(std::size_t n, double q, std::uint64_t seed, const std::string& out) {
  const tss::Graph g = tss::generate_random_graph(n, q, seed);
  const tss::RequirementVector r = tss::random_requirements(g, seed);
  std::vector<std::uint64_t> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = v;
  auto edges = open_output(out + ".edges");
  tss::write_edge_list(edges, g, labels);
  auto reqs = open_output(out + ".req");
  tss::write_requirements(reqs, r, labels);
  std::cout << "edges=" << out << ".edges\nrequirements=" << out << ".req\nvertices=" << n
            << "\nedge_count=" << g.edge_count() << '\n';
  return 0;
}

int cmd_preprocess(const std::string& in, const std::string& out, const std::string& report_path) {
  const tss::RawEdgeList raw = tss::read_edge_list(in);
  const tss::PreprocessResult res = tss::preprocess(raw);
  tss::save_instance(out, res.instance);
  tss::write_report(std::cout, res.report);
  if (!report_path.empty()) {
    auto rep = open_output(report_path);
    tss::write_report(rep, res.report);
  }
  return 0;
}

int cmd_verify(const std::string& graph, const std::string& requirements, const std::string& solution) {
  const tss::Instance inst = tss::load_instance(graph);
  const tss::RequirementVector r = tss::resolve_requirements(inst, requirements);
  std::ifstream in(solution);
  if (!in) throw std::runtime_error("cannot read " + solution);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<std::pair<std::string, std::vector<std::uint64_t>>> sets;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json doc = json::parse(text);
    for (const char* key : {"ga", "exact"})
      if (doc.contains(key)) sets.emplace_back(key, doc[key]["solution"].get<std::vector<std::uint64_t>>());
  } else {
    std::vector<std::uint64_t> ids;
    std::istringstream is(text);
    std::uint64_t id;
    while (is >> id) ids.push_back(id);
    if (!is.eof()) throw std::runtime_error("solution file must list external vertex ids");
    sets.emplace_back("solution", ids);
  }
  if (sets.empty()) throw std::runtime_error("no solution found in " + solution);

  std::unordered_map<std::uint64_t, tss::Vertex> dense;
  for (std::size_t v = 0; v < inst.labels.size(); ++v) dense.emplace(inst.labels[v], static_cast<tss::Vertex>(v));
  bool all = true;
  for (const auto& [name, ids] : sets) {
    tss::Individual s(inst.graph.vertex_count());
    for (std::uint64_t id : ids) {
      const auto it = dense.find(id);
      if (it == dense.end()) throw std::runtime_error("vertex " + std::to_string(id) + " is not in the instance");
      s.set(it->second);
    }
    const bool ok = tss::is_feasible(inst.graph, r, s);
    std::cout << name << ".size=" << s.size() << '\n' << name << ".feasible=" << (ok ? "true" : "false") << '\n';
    all = all && ok;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Target set selection solver"};
  app.require_subcommand(1);

  std::size_t gen_n = 30;
  double gen_q = 0.5;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a connected G(n, q) instance with random requirements");
  gen->add_option("-n,--n", gen_n, "Number of vertices")->required();
  gen->add_option("-q,--q", gen_q, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "Seed")->required();
  gen->add_option("-o,--out", gen_out, "Output prefix (writes PREFIX.edges and PREFIX.req)")->required();

  std::string pre_in, pre_out, pre_report;
  auto* pre = app.add_subcommand("preprocess", "Clean an edge list and write a binary cache");
  pre->add_option("input", pre_in, "Raw edge list")->required();
  pre->add_option("-o,--out", pre_out, "Binary cache path")->required();
  pre->add_option("--report", pre_report, "Also write the report to this file");

  std::string graph, requirements, mode = "ga", out, format = "json";
  std::size_t workers = 0;
  std::uint64_t seed = 0;
  std::size_t exact_max = 60;
  bool no_timing = false, quiet = false;
  GaFlags ga_flags;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("--graph", graph, "Edge list or binary cache")->required();
  solve->add_option("--requirements", requirements, "file | random:SEED | cap:K (default: stored in the cache)");
  solve->add_option("--mode", mode, "ga | exact | both")->check(CLI::IsMember({"ga", "exact", "both"}))
      ->capture_default_str();
  solve->add_option("--workers", workers, "Worker count (default: TSS_WORKERS or hardware threads)");
  auto* seed_opt = solve->add_option("--seed", seed, "Master seed (drawn and printed when absent)");
  solve->add_option("--exact-max-vertices", exact_max, "Refuse exact search above this size")->capture_default_str();
  solve->add_option("--out", out, "Write the report here instead of stdout");
  solve->add_option("--format", format, "json | kv")->check(CLI::IsMember({"json", "kv"}))->capture_default_str();
  solve->add_flag("--no-timing", no_timing, "Leave wall times out of the report");
  solve->add_flag("--quiet", quiet, "No per-generation progress on stderr");
  ga_flags.attach(*solve);

  std::string bench_spec, bench_out;
  GaFlags bench_flags;
  std::size_t bench_workers = 0;
  auto* bench = app.add_subcommand("bench", "Run GA and exact search over a benchmark spec, emit CSV");
  bench->add_option("spec", bench_spec, "Spec file, one key=value row per line")->required();
  bench->add_option("--out", bench_out, "CSV path (default stdout)");
  bench->add_option("--workers", bench_workers, "Worker count (default: TSS_WORKERS or hardware threads)");
  bench->add_option("--exact-max-vertices", exact_max, "Refuse exact search above this size")->capture_default_str();
  bench_flags.attach(*bench);

  std::string verify_graph, verify_requirements, verify_solution;
  auto* verify = app.add_subcommand("verify", "Check that a solution activates the whole graph");
  verify->add_option("--graph", verify_graph, "Edge list or binary cache")->required();
  verify->add_option("--requirements", verify_requirements, "file | random:SEED | cap:K");
  verify->add_option("--solution", verify_solution, "Solve report (JSON) or list of vertex ids")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(gen_n, gen_q, gen_seed, gen_out);
    if (*pre) return cmd_preprocess(pre_in, pre_out, pre_report);
    if (*verify) return cmd_verify(verify_graph, verify_requirements, verify_solution);

    if (*bench) {
      tss::BenchDefaults defaults;
      const std::size_t w = bench_workers ? bench_workers : default_workers();
      defaults.ga = bench_flags.params(w, 0);
      defaults.exact.workers = w;
      defaults.exact.max_vertices = exact_max;
      std::ifstream spec(bench_spec);
      if (!spec) throw std::runtime_error("cannot read " + bench_spec);
      std::size_t failed = 0;
      if (bench_out.empty()) {
        failed = tss::run_bench(spec, std::cout, defaults);
      } else {
        auto csv = open_output(bench_out);
        failed = tss::run_bench(spec, csv, defaults);
      }
      if (failed > 0) std::cerr << failed << " bench rows failed\n";
      return failed > 0 ? 1 : 0;
    }

    if (*solve) {
      if (!*seed_opt) {
        seed = (std::uint64_t{std::random_device{}()} << 32) | std::random_device{}();
        std::cerr << "seed=" << seed << '\n';
      }
      const std::size_t w = workers ? workers : default_workers();
      tss::SolveOptions opts;
      opts.mode = tss::parse_solve_mode(mode);
      opts.ga = ga_flags.params(w, seed);
      opts.exact.workers = w;
      opts.exact.max_vertices = exact_max;
      opts.requirement_source = requirements;
      opts.include_timing = !no_timing;

      const tss::Instance inst = tss::load_instance(graph);
      const tss::RequirementVector r = tss::resolve_requirements(inst, requirements);
      tss::GeneticAlgorithm::Observer progress;
      if (!quiet)
        progress = [](const tss::GenerationRecord& rec, const tss::EvaluatedGeneration&) {
          std::cerr << tss::progress_line(rec) << '\n';
        };
      const json doc = tss::solve(inst, r, opts, progress);

      std::ostringstream text;
      if (format == "kv")
        tss::write_key_values(text, doc);
      else
        text << doc.dump(2) << '\n';
      if (out.empty()) {
        std::cout << text.str();
      } else {
        auto file = open_output(out);
        file << text.str();
      }
      return 0;
    }
  } catch (const tss::ExactLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const tss::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
