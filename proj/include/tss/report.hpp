#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tss/engine.hpp"
#include "tss/exact.hpp"
#include "tss/instance_io.hpp"

namespace tss {

enum class SolveMode { Ga, Exact, Both };

SolveMode parse_solve_mode(std::string_view text);
std::string_view solve_mode_name(SolveMode mode) noexcept;

/// Accepts "random:SEED", "cap:K", "file:PATH" or a bare path. An empty
/// source falls back to the requirements stored in the instance.
RequirementVector resolve_requirements(const Instance& inst, std::string_view source);

struct SolveOptions {
  SolveMode mode = SolveMode::Ga;
  GaParams ga;
  ExactOptions exact;
  std::string requirement_source;
  /// Wall times and per-generation timestamps are left out when false, so
  /// that equal inputs give byte-identical reports.
  bool include_timing = true;
};

/// Runs the requested solvers on the instance after removing pre-activated
/// vertices and returns one report object. Solutions are listed in external
/// ids and re-checked against the original instance.
nlohmann::json solve(const Instance& inst, const RequirementVector& r, const SolveOptions& options,
                     GeneticAlgorithm::Observer observer = {});

/// One key=value line per scalar; nested keys are joined with '.', arrays of
/// scalars are space separated.
void write_key_values(std::ostream& out, const nlohmann::json& doc);

/// "gen=.. best=.. delta=.. ct=.. elapsed_ms=.."
std::string progress_line(const GenerationRecord& rec);

struct BenchDefaults {
  GaParams ga;
  ExactOptions exact;
};

inline constexpr std::string_view kBenchHeader =
    "instance,n,q,seed,exact_size,ga_size,ga_generations,ga_ms,exact_ms,error";

/// Each non-comment line of `spec` is a whitespace separated list of
/// key=value settings describing one benchmark row (see README). Writes the
/// header and one CSV row per trial; a failing row is reported in the error
/// column and the run continues. Returns the number of failed rows.
std::size_t run_bench(std::istream& spec, std::ostream& csv, const BenchDefaults& defaults);

}  // namespace tss
