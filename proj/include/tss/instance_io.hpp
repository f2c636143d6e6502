#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tss/graph.hpp"

namespace tss {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Edge records exactly as read: duplicates, both directions and loops kept.
/// Endpoints are dense ids; labels[id] is the external id from the file.
struct RawEdgeList {
  std::vector<Edge> records;
  std::vector<std::uint64_t> labels;
};

/// Whitespace separated "u v" pairs per line. Lines starting with '#' or '%'
/// are comments, blank lines are skipped. External ids are relabeled densely
/// in increasing order.
RawEdgeList parse_edge_list(std::istream& in);
RawEdgeList read_edge_list(const std::filesystem::path& path);

struct PreprocessReport {
  std::size_t vertices_before = 0;
  std::size_t vertices_after = 0;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::size_t multi_edges_removed = 0;
  std::size_t loops_removed = 0;
  std::size_t isolated_removed = 0;
  std::uint32_t max_degree = 0;
};

/// A solvable graph plus the external id of each vertex.
struct Instance {
  Graph graph;
  std::vector<std::uint64_t> labels;
  std::optional<RequirementVector> requirements;
};

struct PreprocessResult {
  Instance instance;
  PreprocessReport report;
};

/// Drops loops, collapses parallel and reverse-duplicate records into one
/// undirected edge, removes degree-0 vertices and relabels densely.
/// Throws InstanceError("empty instance") when nothing is left.
PreprocessResult preprocess(const RawEdgeList& raw);

void write_report(std::ostream& out, const PreprocessReport& report);

/// "external_id threshold" per line, comments as in edge lists. Every vertex
/// of the instance must be listed exactly once.
RequirementVector read_requirements(std::istream& in, const std::vector<std::uint64_t>& labels);
RequirementVector read_requirements(const std::filesystem::path& path,
                                    const std::vector<std::uint64_t>& labels);
void write_requirements(std::ostream& out, const RequirementVector& r,
                        const std::vector<std::uint64_t>& labels);

void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::uint64_t>& labels);

/// Binary cache layout, all little-endian u32:
///   "TSSB" | version | n | m | degree[n] | neighbors[2m] | requirement[n]?
/// The requirement block is present iff bytes remain after the adjacency.
/// External ids are not part of the format; they travel in a sidecar text
/// file (one id per line) written by save_instance next to the cache.
inline constexpr std::uint32_t kBinaryVersion = 1;

void write_binary(std::ostream& out, const Graph& g, const RequirementVector* r);
Instance read_binary(std::istream& in);

/// Writes `path` plus `path` + ".ids".
void save_instance(const std::filesystem::path& path, const Instance& inst);

/// Loads either a binary cache (detected by magic) or a text edge list,
/// which is preprocessed on the fly.
Instance load_instance(const std::filesystem::path& path);

bool is_binary_instance(const std::filesystem::path& path);

}  // namespace tss
