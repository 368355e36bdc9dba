#pragma once

#include "sms/baselines.hpp"
#include "sms/search.hpp"
#include "sms/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sms::harness {

inline constexpr const char* kVersion = "0.1.0";

struct BenchmarkEntry {
    int id = 1;
    std::size_t n = 30;
    std::uint64_t instance_seed = 1;
    std::optional<std::size_t> gen;
};

enum class Algorithm { sms, pso, de };

/// One optimizer column. `np`/`gen` inside the param structs are overwritten
/// per benchmark from the resolved budget unless overridden here.
struct OptimizerEntry {
    Algorithm algorithm = Algorithm::sms;
    std::string label;
    SmsParams sms;
    PsoParams pso;
    DeParams de;
    std::optional<std::size_t> np;
    std::optional<std::size_t> gen;
};

/// Builds the problem for a benchmark entry and instance seed. Empty means
/// the built-in benchmark suite.
using ProblemFactory = std::function<ObjectiveSpec(const BenchmarkEntry&, std::uint64_t)>;

struct ExperimentConfig {
    std::vector<BenchmarkEntry> benchmarks;
    std::vector<OptimizerEntry> optimizers;
    std::size_t runs = 30;
    std::optional<std::size_t> gen;
    std::size_t np = 50;
    std::uint64_t base_seed = 1;
    std::filesystem::path output_dir;
    bool traces = false;
    /// false: run r of a benchmark uses instance_seed + r instead of one shared instance.
    bool shared_instance = true;
    /// OpenMP worker count; 0 keeps the runtime default.
    int threads = 0;
    /// Not part of the JSON config.
    ProblemFactory problem_factory;
};

std::string algorithm_name(Algorithm a);

/// 1000 iterations, or 500 for the fixed-dimension functions f12..f14.
std::size_t default_gen(int benchmark_id);

/// Iteration budget for one (optimizer, benchmark) cell.
std::size_t resolve_gen(const ExperimentConfig& cfg, const BenchmarkEntry& b,
                        const OptimizerEntry& o);
std::size_t resolve_np(const ExperimentConfig& cfg, const OptimizerEntry& o);

/// Seed of run `run_index`: base_seed + run_index, shared across optimizers.
inline std::uint64_t run_seed(const ExperimentConfig& cfg, std::size_t run_index) {
    return cfg.base_seed + run_index;
}

/// Parses and validates a JSON config. All problems are collected and
/// reported together in one ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct CellReport {
    std::string optimizer;
    std::string benchmark;
    std::size_t gen = 0;
    std::vector<double> finals;
    std::vector<std::uint64_t> seeds;
    std::vector<std::uint64_t> evaluations;
    std::vector<bool> failed;
    std::vector<std::string> errors;
    /// Over the runs that did not fail; absent when every run failed.
    std::optional<stats::SummaryStats> summary;
    /// Per-iteration mean and median of best-so-far (only with traces on).
    Vector trace_mean;
    Vector trace_median;

    std::vector<double> successful_finals() const;
};

struct Comparison {
    std::string benchmark;
    std::string reference;
    std::string baseline;
    stats::WilcoxonResult result;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<CellReport> cells;
    std::vector<Comparison> comparisons;
    std::size_t failed_runs = 0;

    const CellReport* find(const std::string& optimizer, const std::string& benchmark) const;
};

enum class Execution { serial, parallel };

/// Runs the whole grid. Every run writes into its own preallocated slot, so
/// serial and parallel execution produce identical reports. Outputs are
/// written when cfg.output_dir is set.
ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                Execution execution = Execution::parallel);

/// Report body as JSON (config echo, seeds, finals, summaries, tests, version).
nlohmann::json report_to_json(const ExperimentReport& report);

/// AB/MB/SD rows per benchmark, one column per optimizer, and a `best`
/// column naming the optimizer with the smallest value in that row.
void export_summary(const ExperimentReport& report, const std::filesystem::path& file);

/// One CSV per (optimizer, benchmark): k, mean, median.
void export_traces(const ExperimentReport& report, const std::filesystem::path& dir);

/// report.json, summary.csv and (with traces on) traces/*.csv.
void write_outputs(const ExperimentReport& report, const std::filesystem::path& dir);

/// Parsed summary.csv, cells kept as text.
struct SummaryTable {
    std::vector<std::string> optimizers;
    struct Row {
        std::string benchmark;
        std::string stat;
        std::vector<std::string> cells;
        std::string best;
    };
    std::vector<Row> rows;
};

SummaryTable read_summary(const std::filesystem::path& file);

/// 17 significant digits.
std::string format_value(double v);

/// First numeric column of a text file; blank lines and '#' comments skipped.
std::vector<double> read_column(const std::filesystem::path& file);

} // namespace sms::harness
