#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "privopt/evolution.hpp"
#include "privopt/metrics.hpp"
#include "privopt/privacy.hpp"

namespace privopt {

/// Average seconds to evaluate one population, per obfuscation family.
struct EvaluationTimes {
    double none = 0.27;
    double buckets = 2.45;
    double threshold = 0.74;
    double order = 0.78;
    double quantiles = 1.22;
    double top = 0.79;

    [[nodiscard]] double for_method(const ObfuscationMethod& method) const;
    friend bool operator==(const EvaluationTimes&, const EvaluationTimes&) = default;
};

/// The fourteen configurations of the performance study.
std::vector<ObfuscationMethod> default_obfuscations();

struct ExperimentSpec {
    std::string name = "experiment";
    /// Instance files (.json or .tsp), relative paths resolve against the spec file.
    std::vector<std::string> instances;
    std::string preset;
    EAConfig algorithm = EAConfig::ga_assignment();
    std::vector<ObfuscationMethod> obfuscations = default_obfuscations();
    /// Objectives that receive the configuration's method (MOAP: one or both).
    std::vector<std::size_t> obfuscated_objectives{0};
    std::vector<std::uint64_t> seeds;
    EvaluationTimes eval_times;
    double budget = 135.27;
    /// Empty means the problem-kind default.
    std::vector<MetricKind> metrics;
    std::size_t workers = 1;
    GenomeRecording genomes = GenomeRecording::Endpoints;

    /// Throws std::invalid_argument on empty or duplicate seeds and similar.
    void validate() const;
};

std::vector<std::uint64_t> default_seeds();

/// Parses the JSON spec document; `algorithm` may be a preset name
/// ("ga-ap", "ga-tsp", "nsga2-moap") or an explicit object.
ExperimentSpec parse_experiment_spec(std::string_view text);
std::string serialize_experiment_spec(const ExperimentSpec& spec);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

/// Default metrics for a problem kind.
std::vector<MetricKind> default_metrics(ProblemKind kind);

ObfuscationPlan make_plan(const ObfuscationMethod& method, std::span<const std::size_t> obfuscated_objectives,
                          std::size_t objective_count);

/// Directory-safe configuration label ("none", "B5", "A80", ...).
std::string config_label(const ObfuscationMethod& method);

std::string serialize_trace(const RunTrace& trace);
RunTrace deserialize_trace(std::string_view text);

struct RunFailure {
    std::string instance;
    std::string config;
    std::uint64_t seed = 0;
    std::string message;
};

struct ExperimentReport {
    std::size_t runs_completed = 0;
    std::vector<RunFailure> failures;
    [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
};

/// Executes instance x configuration x seed and persists the results store:
///   <out>/experiment.json
///   <out>/<instance>/instance.json
///   <out>/<instance>/<config>/seed_<s>.json
///   <out>/<instance>/<config>/metrics.csv
/// `spec_dir` resolves relative instance paths. Completed runs are kept on failure.
ExperimentReport run_experiment(const ExperimentSpec& spec, const std::filesystem::path& spec_dir,
                                const std::filesystem::path& out_dir);

/// Problem instances generated into `out_dir`, with exact optima (AP) or
/// ground truth (MOAP) attached. Instance i uses seed + i.
std::vector<std::filesystem::path> generate_instances(std::uint64_t seed, std::size_t count, ProblemKind kind,
                                                      std::size_t size, const std::filesystem::path& out_dir,
                                                      Weight lo = 0, Weight hi = 1000);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Human-readable leakage report.
std::string leakage_report(const ObfuscationMethod& method, std::uint64_t iterations, std::uint64_t pop_size);

} // namespace privopt
