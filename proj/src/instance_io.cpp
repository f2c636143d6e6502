#include "tss/instance_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace tss {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

/// Splits on blanks; returns false for comment or empty lines.
bool tokenize(std::string_view line, std::vector<std::string_view>& tokens) {
  tokens.clear();
  std::size_t i = 0;
  while (i < line.size() && is_blank(line[i])) ++i;
  if (i == line.size() || line[i] == '#' || line[i] == '%') return false;
  while (i < line.size()) {
    std::size_t j = i;
    while (j < line.size() && !is_blank(line[j])) ++j;
    tokens.push_back(line.substr(i, j - i));
    while (j < line.size() && is_blank(line[j])) ++j;
    i = j;
  }
  return true;
}

std::uint64_t parse_u64(std::string_view token, std::size_t line_no, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line_no, std::string("expected a nonnegative integer ") + what + ", got '" +
                                  std::string(token) + "'");
  return value;
}

std::ifstream open_input(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

void put_u32(std::ostream& out, std::uint32_t x) {
  const std::array<char, 4> b{static_cast<char>(x & 0xff), static_cast<char>((x >> 8) & 0xff),
                              static_cast<char>((x >> 16) & 0xff), static_cast<char>((x >> 24) & 0xff)};
  out.write(b.data(), b.size());
}

bool get_u32(std::istream& in, std::uint32_t& x) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) return false;
  x = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
      (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  return true;
}

std::uint32_t require_u32(std::istream& in, const char* field) {
  std::uint32_t x = 0;
  if (!get_u32(in, x)) throw InstanceError(std::string("truncated binary instance: missing ") + field);
  return x;
}

std::uint32_t narrow(std::size_t x, const char* field) {
  if (x > 0xffffffffULL) throw InstanceError(std::string(field) + " does not fit in u32");
  return static_cast<std::uint32_t>(x);
}

}  // namespace

RawEdgeList parse_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> external;
  std::vector<std::string_view> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!tokenize(line, tokens)) continue;
    if (tokens.size() != 2)
      throw ParseError(line_no, "expected 2 vertex ids, found " + std::to_string(tokens.size()) + " tokens");
    external.emplace_back(parse_u64(tokens[0], line_no, "vertex id"),
                          parse_u64(tokens[1], line_no, "vertex id"));
  }

  RawEdgeList raw;
  raw.labels.reserve(external.size() * 2);
  for (const auto& [u, v] : external) {
    raw.labels.push_back(u);
    raw.labels.push_back(v);
  }
  std::sort(raw.labels.begin(), raw.labels.end());
  raw.labels.erase(std::unique(raw.labels.begin(), raw.labels.end()), raw.labels.end());

  std::unordered_map<std::uint64_t, Vertex> dense;
  dense.reserve(raw.labels.size());
  for (std::size_t i = 0; i < raw.labels.size(); ++i) dense.emplace(raw.labels[i], static_cast<Vertex>(i));
  raw.records.reserve(external.size());
  for (const auto& [u, v] : external) raw.records.emplace_back(dense.at(u), dense.at(v));
  return raw;
}

RawEdgeList read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

PreprocessResult preprocess(const RawEdgeList& raw) {
  const std::size_t n = raw.labels.size();
  PreprocessResult out;
  PreprocessReport& rep = out.report;
  rep.vertices_before = n;
  rep.edges_before = raw.records.size();

  std::vector<Edge> edges;
  edges.reserve(raw.records.size());
  for (auto [u, v] : raw.records) {
    if (u >= n || v >= n) throw InstanceError("edge record references an undeclared vertex");
    if (u == v) {
      ++rep.loops_removed;
      continue;
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  rep.multi_edges_removed = rep.edges_before - rep.loops_removed - edges.size();

  std::vector<bool> touched(n, false);
  for (auto [u, v] : edges) touched[u] = touched[v] = true;
  std::vector<Vertex> relabel(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (touched[v]) {
      relabel[v] = static_cast<Vertex>(out.instance.labels.size());
      out.instance.labels.push_back(raw.labels[v]);
    }
  rep.isolated_removed = n - out.instance.labels.size();
  if (out.instance.labels.empty()) throw InstanceError("empty instance after pre-processing");

  for (auto& [u, v] : edges) {
    u = relabel[u];
    v = relabel[v];
  }
  out.instance.graph = Graph::from_edges(out.instance.labels.size(), edges);
  rep.vertices_after = out.instance.graph.vertex_count();
  rep.edges_after = out.instance.graph.edge_count();
  rep.max_degree = out.instance.graph.max_degree();
  return out;
}

void write_report(std::ostream& out, const PreprocessReport& r) {
  out << "vertices_before=" << r.vertices_before << '\n'
      << "vertices_after=" << r.vertices_after << '\n'
      << "edges_before=" << r.edges_before << '\n'
      << "edges_after=" << r.edges_after << '\n'
      << "multi_edges_removed=" << r.multi_edges_removed << '\n'
      << "loops_removed=" << r.loops_removed << '\n'
      << "isolated_removed=" << r.isolated_removed << '\n'
      << "max_degree=" << r.max_degree << '\n';
}

RequirementVector read_requirements(std::istream& in, const std::vector<std::uint64_t>& labels) {
  std::unordered_map<std::uint64_t, Vertex> dense;
  dense.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) dense.emplace(labels[i], static_cast<Vertex>(i));

  std::vector<std::uint32_t> r(labels.size(), 0);
  std::vector<bool> seen(labels.size(), false);
  std::vector<std::string_view> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!tokenize(line, tokens)) continue;
    if (tokens.size() != 2) throw ParseError(line_no, "expected 'external_id threshold'");
    const std::uint64_t id = parse_u64(tokens[0], line_no, "vertex id");
    const std::uint64_t threshold = parse_u64(tokens[1], line_no, "threshold");
    auto it = dense.find(id);
    // Ids dropped by pre-processing (isolated vertices) are ignored.
    if (it == dense.end()) continue;
    if (seen[it->second]) throw ParseError(line_no, "vertex " + std::to_string(id) + " listed twice");
    if (threshold > 0xffffffffULL) throw ParseError(line_no, "threshold out of range");
    seen[it->second] = true;
    r[it->second] = static_cast<std::uint32_t>(threshold);
  }
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (!seen[v]) throw InstanceError("no requirement given for vertex " + std::to_string(labels[v]));
  return RequirementVector(std::move(r));
}

RequirementVector read_requirements(const std::filesystem::path& path,
                                    const std::vector<std::uint64_t>& labels) {
  auto in = open_input(path);
  return read_requirements(in, labels);
}

void write_requirements(std::ostream& out, const RequirementVector& r,
                        const std::vector<std::uint64_t>& labels) {
  for (Vertex v = 0; v < r.size(); ++v) out << labels[v] << ' ' << r[v] << '\n';
}

void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::uint64_t>& labels) {
  for (const auto& [u, v] : g.edges()) out << labels[u] << ' ' << labels[v] << '\n';
}

void write_binary(std::ostream& out, const Graph& g, const RequirementVector* r) {
  out.write("TSSB", 4);
  put_u32(out, kBinaryVersion);
  put_u32(out, narrow(g.vertex_count(), "vertex count"));
  put_u32(out, narrow(g.edge_count(), "edge count"));
  for (Vertex v = 0; v < g.vertex_count(); ++v) put_u32(out, g.degree(v));
  for (Vertex u : g.adjacency()) put_u32(out, u);
  if (r != nullptr) {
    r->validate(g);
    for (std::uint32_t x : r->values()) put_u32(out, x);
  }
}

Instance read_binary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || std::string_view(magic.data(), 4) != "TSSB")
    throw InstanceError("not a TSSB binary instance");
  const std::uint32_t version = require_u32(in, "version");
  if (version != kBinaryVersion)
    throw InstanceError("unsupported TSSB version " + std::to_string(version));
  const std::uint32_t n = require_u32(in, "vertex count");
  const std::uint32_t m = require_u32(in, "edge count");

  std::vector<std::uint32_t> degrees(n);
  for (auto& d : degrees) d = require_u32(in, "degree array");
  std::vector<Vertex> adjacency(2 * static_cast<std::size_t>(m));
  for (auto& u : adjacency) u = require_u32(in, "neighbor array");

  Instance inst;
  inst.graph = Graph::from_adjacency(degrees, adjacency);
  inst.labels.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) inst.labels[v] = v;

  std::uint32_t first = 0;
  if (get_u32(in, first)) {
    if (n == 0) throw InstanceError("requirement block on an empty graph");
    std::vector<std::uint32_t> r(n);
    r[0] = first;
    for (std::uint32_t v = 1; v < n; ++v) r[v] = require_u32(in, "requirement array");
    inst.requirements = RequirementVector(std::move(r));
    inst.requirements->validate(inst.graph);
  }
  if (in.peek() != std::char_traits<char>::eof()) throw InstanceError("trailing bytes in binary instance");
  return inst;
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_binary(out, inst.graph, inst.requirements ? &*inst.requirements : nullptr);
  }
  std::ofstream ids(path.string() + ".ids");
  if (!ids) throw std::runtime_error("cannot write " + path.string() + ".ids");
  for (std::uint64_t id : inst.labels) ids << id << '\n';
}

bool is_binary_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<char, 4> magic{};
  return in.read(magic.data(), magic.size()) && std::string_view(magic.data(), 4) == "TSSB";
}

Instance load_instance(const std::filesystem::path& path) {
  if (!is_binary_instance(path)) return preprocess(read_edge_list(path)).instance;

  auto in = open_input(path, std::ios::in | std::ios::binary);
  Instance inst = read_binary(in);
  const std::filesystem::path ids_path = path.string() + ".ids";
  if (std::filesystem::exists(ids_path)) {
    auto ids = open_input(ids_path);
    std::vector<std::uint64_t> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ids, line)) {
      ++line_no;
      std::vector<std::string_view> tokens;
      if (!tokenize(line, tokens)) continue;
      if (tokens.size() != 1) throw ParseError(line_no, "expected one id per line in " + ids_path.string());
      labels.push_back(parse_u64(tokens[0], line_no, "vertex id"));
    }
    if (labels.size() != inst.labels.size())
      throw InstanceError("id sidecar lists " + std::to_string(labels.size()) + " ids for " +
                          std::to_string(inst.labels.size()) + " vertices");
    inst.labels = std::move(labels);
  }
  return inst;
}

}  // namespace tss
