#include "tss/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tss/generator.hpp"

namespace tss {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

struct MappedSolution {
  std::vector<std::uint64_t> ids;
  bool feasible = false;
};

MappedSolution map_solution(const Instance& inst, const RequirementVector& r, const NormalizedInstance& norm,
                            const Individual& s) {
  Individual original(inst.graph.vertex_count());
  for (Vertex v : s.vertices()) original.set(norm.origin[v]);
  MappedSolution out;
  for (Vertex v : original.vertices()) out.ids.push_back(inst.labels[v]);
  std::sort(out.ids.begin(), out.ids.end());
  out.feasible = is_feasible(inst.graph, r, original);
  return out;
}

json operator_table(const OperatorStats& stats) {
  json rows = json::array();
  for (std::size_t k = 0; k < kOperatorCount; ++k) {
    const Operator op = operator_from_number(k + 1);
    rows.push_back({{"id", k + 1},
                    {"name", operator_name(op)},
                    {"invocations", stats.invocations[k]},
                    {"improvements", stats.improvements[k]}});
  }
  return rows;
}

json ga_section(const Instance& inst, const RequirementVector& r, const NormalizedInstance& norm,
                const SolveOptions& options, GeneticAlgorithm::Observer observer) {
  json out;
  if (norm.graph.vertex_count() == 0) {
    out = {{"size", 0}, {"solution", json::array()}, {"feasible", true}, {"generations", 0},
           {"stop_reason", stop_reason_name(StopReason::Converged)}};
    if (options.include_timing) out["wall_ms"] = 0.0;
    return out;
  }
  const RunResult run = run_genetic_algorithm(norm.graph, norm.requirements, options.ga, std::move(observer));
  const MappedSolution sol = map_solution(inst, r, norm, run.best);

  double delta_max = run.delta0;
  json improvements = json::array();
  std::size_t last = 0;
  for (const auto& rec : run.trace) {
    delta_max = std::max(delta_max, rec.delta);
    if (improvements.empty() || rec.best_size < last) {
      improvements.push_back({rec.index, rec.best_size});
      last = rec.best_size;
    }
  }

  out["size"] = run.best.size();
  out["solution"] = sol.ids;
  out["feasible"] = sol.feasible;
  out["generations"] = run.generations;
  out["stop_reason"] = stop_reason_name(run.stop);
  out["delta0"] = run.delta0;
  out["delta_step"] = run.delta_step;
  out["delta_final"] = run.trace.empty() ? run.delta0 : run.trace.back().delta;
  out["delta_max"] = delta_max;
  out["improvements"] = improvements;
  out["operators"] = operator_table(run.operators);
  if (options.include_timing) out["wall_ms"] = run.wall_ms;
  return out;
}

json exact_section(const Instance& inst, const RequirementVector& r, const NormalizedInstance& norm,
                   const SolveOptions& options) {
  const auto t0 = Clock::now();
  ExactResult res{0, Individual(0)};
  if (norm.graph.vertex_count() > 0) res = exact_backtracking(norm.graph, norm.requirements, options.exact);
  const MappedSolution sol = map_solution(inst, r, norm, res.solution);
  json out = {{"size", res.size}, {"solution", sol.ids}, {"feasible", sol.feasible}};
  if (options.include_timing) out["wall_ms"] = ms_since(t0);
  return out;
}

void flatten(std::ostream& out, const std::string& prefix, const json& node) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(out, prefix.empty() ? key : prefix + "." + key, value);
    return;
  }
  if (node.is_array()) {
    const bool scalars = std::all_of(node.begin(), node.end(), [](const json& x) { return x.is_primitive(); });
    if (scalars) {
      out << prefix << '=';
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i) out << ' ';
        out << (node[i].is_string() ? node[i].get<std::string>() : node[i].dump());
      }
      out << '\n';
    } else {
      for (std::size_t i = 0; i < node.size(); ++i) flatten(out, prefix + "." + std::to_string(i), node[i]);
    }
    return;
  }
  out << prefix << '=' << (node.is_string() ? node.get<std::string>() : node.dump()) << '\n';
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c == '\n' ? ' ' : c;
  }
  return quoted + '"';
}

struct BenchRow {
  std::string instance;
  std::string n, q, seed;
  std::string exact_size, ga_size, ga_generations, ga_ms, exact_ms, error;
};

void write_row(std::ostream& csv, const BenchRow& row) {
  csv << csv_field(row.instance) << ',' << row.n << ',' << row.q << ',' << row.seed << ',' << row.exact_size
      << ',' << row.ga_size << ',' << row.ga_generations << ',' << row.ga_ms << ',' << row.exact_ms << ','
      << csv_field(row.error) << '\n';
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

void apply_ga_setting(GaParams& p, ExactOptions& e, const std::string& key, const std::string& value) {
  if (key == "g_min") p.g_min = parse_number<std::size_t>(value, key);
  else if (key == "g_max") p.g_max = parse_number<std::size_t>(value, key);
  else if (key == "g_w_improvement") p.g_w_improvement = parse_number<std::size_t>(value, key);
  else if (key == "workers") p.workers = e.workers = parse_number<std::size_t>(value, key);
  else if (key == "time_limit") p.time_limit = std::chrono::duration<double>(parse_number<double>(value, key));
  else if (key == "w_size") p.weights.size = parse_number<double>(value, key);
  else if (key == "w_scensus") p.weights.s_census = parse_number<double>(value, key);
  else if (key == "w_degree") p.weights.degree = parse_number<double>(value, key);
  else if (key == "w_vcensus") p.weights.v_census = parse_number<double>(value, key);
  else if (key == "p_prob_cross") p.weights.prob_cross = parse_number<double>(value, key);
  else if (key == "p_mutation") p.weights.mutation = parse_number<double>(value, key);
  else if (key == "exact_max_vertices") e.max_vertices = parse_number<std::size_t>(value, key);
  else throw std::invalid_argument("unknown bench key '" + key + "'");
}

}  // namespace

SolveMode parse_solve_mode(std::string_view text) {
  if (text == "ga") return SolveMode::Ga;
  if (text == "exact") return SolveMode::Exact;
  if (text == "both") return SolveMode::Both;
  throw std::invalid_argument("mode must be ga, exact or both");
}

std::string_view solve_mode_name(SolveMode mode) noexcept {
  switch (mode) {
    case SolveMode::Ga: return "ga";
    case SolveMode::Exact: return "exact";
    case SolveMode::Both: return "both";
  }
  return "ga";
}

RequirementVector resolve_requirements(const Instance& inst, std::string_view source) {
  if (source.empty()) {
    if (!inst.requirements) throw std::invalid_argument("instance carries no requirements; pass --requirements");
    return *inst.requirements;
  }
  if (source.starts_with("random:"))
    return random_requirements(inst.graph, parse_number<std::uint64_t>(source.substr(7), "requirement seed"));
  if (source.starts_with("cap:"))
    return capped_requirements(inst.graph, parse_number<std::uint32_t>(source.substr(4), "requirement cap"));
  if (source.starts_with("file:")) source.remove_prefix(5);
  return read_requirements(std::filesystem::path(std::string(source)), inst.labels);
}

json solve(const Instance& inst, const RequirementVector& r, const SolveOptions& options,
           GeneticAlgorithm::Observer observer) {
  options.ga.validate();
  r.validate(inst.graph);
  const NormalizedInstance norm = normalize_requirements(inst.graph, r);

  json doc;
  doc["mode"] = solve_mode_name(options.mode);
  doc["seed"] = options.ga.seed;
  doc["workers"] = options.ga.workers;
  doc["requirements"] = options.requirement_source.empty() ? "instance" : options.requirement_source;
  doc["instance"] = {{"vertices", inst.graph.vertex_count()},
                     {"edges", inst.graph.edge_count()},
                     {"preactivated", norm.preactivated}};

  // Refuse oversized exact runs before spending time on the GA.
  if (options.mode != SolveMode::Ga && norm.graph.vertex_count() > options.exact.max_vertices)
    exact_backtracking(norm.graph, norm.requirements, options.exact);

  if (options.mode != SolveMode::Exact) doc["ga"] = ga_section(inst, r, norm, options, std::move(observer));
  if (options.mode != SolveMode::Ga) doc["exact"] = exact_section(inst, r, norm, options);
  if (options.mode == SolveMode::Both)
    doc["gap"] = doc["ga"]["size"].get<long long>() - doc["exact"]["size"].get<long long>();
  return doc;
}

void write_key_values(std::ostream& out, const json& doc) { flatten(out, "", doc); }

std::string progress_line(const GenerationRecord& rec) {
  std::ostringstream os;
  os << "gen=" << rec.index << " best=" << rec.best_size << " delta=" << fixed(rec.delta, 4)
     << " ct=" << rec.ct_improvement << " elapsed_ms=" << fixed(rec.elapsed_ms, 1);
  return os.str();
}

std::size_t run_bench(std::istream& spec, std::ostream& csv, const BenchDefaults& defaults) {
  csv << kBenchHeader << '\n';
  std::size_t failures = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(spec, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    BenchRow base;
    base.instance = "line" + std::to_string(line_no);
    std::map<std::string, std::string> settings;
    std::size_t trials = 1;
    GaParams ga = defaults.ga;
    ExactOptions exact = defaults.exact;
    bool run_exact = true;
    try {
      std::istringstream tokens(line);
      std::string token;
      while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got '" + token + "'");
        settings[token.substr(0, eq)] = token.substr(eq + 1);
      }
      for (const auto& [key, value] : settings) {
        if (key == "n" || key == "q" || key == "seed" || key == "graph" || key == "requirements" || key == "name")
          continue;
        if (key == "trials") trials = parse_number<std::size_t>(value, key);
        else if (key == "exact") run_exact = parse_number<int>(value, key) != 0;
        else apply_ga_setting(ga, exact, key, value);
      }
      if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    } catch (const std::exception& e) {
      base.error = e.what();
      write_row(csv, base);
      ++failures;
      continue;
    }

    for (std::size_t t = 0; t < trials; ++t) {
      BenchRow row = base;
      try {
        Instance inst;
        RequirementVector r;
        std::uint64_t seed = settings.count("seed") ? parse_number<std::uint64_t>(settings["seed"], "seed") : 0;
        row.seed = std::to_string(seed);
        if (settings.count("graph")) {
          inst = load_instance(settings["graph"]);
          row.instance = settings["graph"];
          const auto req = settings.count("requirements") ? settings["requirements"] : std::string();
          r = resolve_requirements(inst, req);
        } else {
          if (!settings.count("n") || !settings.count("q"))
            throw std::invalid_argument("row needs n and q, or graph");
          const auto n = parse_number<std::size_t>(settings["n"], "n");
          const auto q = parse_number<double>(settings["q"], "q");
          row.q = settings["q"];
          inst.graph = generate_random_graph(n, q, seed);
          inst.labels.resize(n);
          for (std::size_t v = 0; v < n; ++v) inst.labels[v] = v;
          r = random_requirements(inst.graph, seed);
          row.instance = "gnp_n" + settings["n"] + "_q" + settings["q"] + "_s" + row.seed;
        }
        if (settings.count("name")) row.instance = settings["name"];
        if (trials > 1) row.instance += "#" + std::to_string(t);
        row.n = std::to_string(inst.graph.vertex_count());

        SolveOptions opts;
        opts.ga = ga;
        opts.ga.seed = seed + t;
        opts.exact = exact;

        opts.mode = SolveMode::Ga;
        const json ga_doc = solve(inst, r, opts);
        row.ga_size = std::to_string(ga_doc["ga"]["size"].get<std::size_t>());
        row.ga_generations = std::to_string(ga_doc["ga"]["generations"].get<std::size_t>());
        row.ga_ms = fixed(ga_doc["ga"]["wall_ms"].get<double>(), 3);
        if (run_exact) {
          try {
            opts.mode = SolveMode::Exact;
            const json ex_doc = solve(inst, r, opts);
            row.exact_size = std::to_string(ex_doc["exact"]["size"].get<std::size_t>());
            row.exact_ms = fixed(ex_doc["exact"]["wall_ms"].get<double>(), 3);
          } catch (const ExactLimitError& e) {
            row.error = std::string("exact: ") + e.what();
          }
        }
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      if (!row.error.empty()) ++failures;
      write_row(csv, row);
    }
  }
  return failures;
}

}  // namespace tss
