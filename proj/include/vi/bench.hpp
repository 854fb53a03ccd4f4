// Method-vs-method sweeps over the random affine benchmark family.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vi/solvers.hpp"

#include <json.hpp>

namespace vi {

enum class OutputFormat { Table, Csv, Json };

std::optional<OutputFormat> parse_format(std::string_view name) noexcept;

struct BenchSpec {
  std::vector<int> sizes{5, 10, 20, 30, 40, 50, 60, 70, 80};
  int l = 100;
  std::vector<std::uint64_t> seeds{1};
  std::vector<Algorithm> algos{Algorithm::ProjectionContraction, Algorithm::Subgradient,
                               Algorithm::ModifiedSubgradient};
  /// stop_rule is overridden to NormX by run_bench.
  SolverConfig cfg;
  OutputFormat format = OutputFormat::Table;
  std::optional<std::string> output_path;
  /// Run cells concurrently; wall times are then not comparable.
  bool parallel = false;
  PolyhedralMethod projector = PolyhedralMethod::ActiveSet;

  /// Throws std::invalid_argument for empty lists or bad sizes.
  void validate() const;
};

/// Solver configuration for the benchmark sweep:
/// σ = 7.55, ρ = 0.5, μ = 0.85, γ = 1.99, ε = 0.005, stop on ‖x‖ ≤ ε.
SolverConfig benchmark_config();

struct BenchRow {
  int m = 0;
  std::uint64_t seed = 0;
  Algorithm algo = Algorithm::ModifiedSubgradient;
  int iterations = 0;
  long inner_trials = 0;
  double wall_seconds = 0.0;
  bool converged = false;
  /// Set when the solve threw; not part of the serialized formats.
  std::string error;

  /// Field-wise equality of the serialized columns.
  bool same_record(const BenchRow& other) const noexcept;
};

/// One row per (m, seed, algo), ordered by m, then seed, then algo as listed.
/// All algorithms of a given (m, seed) see the same instance and start.
/// Solver failures are recorded in the row and never abort the sweep.
std::vector<BenchRow> run_bench(const BenchSpec& spec);

inline constexpr const char* kCsvHeader = "m,seed,algo,iterations,inner_trials,wall_seconds,converged";

/// Medians across seeds per (m, algo); "--" where most runs did not converge.
std::string render_table(const std::vector<BenchRow>& rows, bool timing_unreliable = false);
std::string render_csv(const std::vector<BenchRow>& rows);
std::string render_json(const std::vector<BenchRow>& rows);
std::string render(const std::vector<BenchRow>& rows, OutputFormat format,
                   bool timing_unreliable = false);

nlohmann::json rows_to_json(const std::vector<BenchRow>& rows);
std::vector<BenchRow> rows_from_json(const nlohmann::json& j);

/// Median of a nonempty sample; mean of the middle pair for even sizes.
double median(std::vector<double> values);

}  // namespace vi
