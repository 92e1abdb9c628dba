#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "privopt/metrics.hpp"
#include "privopt/operators.hpp"
#include "privopt/privacy.hpp"
#include "privopt/problem.hpp"
#include "privopt/selection.hpp"

namespace privopt {

enum class Algorithm { GA, NSGA2 };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view s);

struct EAConfig {
    Algorithm algorithm = Algorithm::GA;
    std::size_t mu = 300;
    std::size_t kappa = 15;
    /// The loop stops once t > generations.
    std::size_t generations = 500;
    std::size_t tournament_size = 18;
    CrossoverOp crossover = CrossoverOp::Cycle;
    double crossover_prob = 95;
    MutationOp mutation = MutationOp::Swap;
    double mutation_prob = 100;
    bool reevaluate_parents = false;

    void validate() const;

    /// Tuned parameter sets for the three problem classes.
    static EAConfig ga_assignment();
    static EAConfig ga_tsp();
    static EAConfig nsga2_moap();

    friend bool operator==(const EAConfig&, const EAConfig&) = default;
};

enum class GenomeRecording { None, Endpoints, All };

struct TraceOptions {
    GenomeRecording genomes = GenomeRecording::Endpoints;
};

struct GenerationRecord {
    std::size_t generation = 0;
    /// Individuals evaluated in this generation's batch.
    std::size_t evaluated = 0;
    /// Actual fitness of the estimated-optimal (or estimated non-dominated) set.
    std::vector<ObjectiveVector> result_fitness;
    /// Genomes aligned with result_fitness; empty when not recorded.
    std::vector<Permutation> result_genomes;
    /// Best actual value per objective among the survivors.
    ObjectiveVector best_actual;
    std::vector<MetricValue> metrics;

    [[nodiscard]] const MetricValue* metric(MetricKind kind, bool normalized = false) const;
};

struct RunTrace {
    std::uint64_t seed = 0;
    std::string instance_name;
    EAConfig config;
    ObfuscationPlan plan;
    std::vector<Permutation> initial_population;
    std::vector<GenerationRecord> records;
};

/// Parents drawn per generation: mu - kappa rounded up to an even count.
std::size_t parent_count(const EAConfig& config);

/// Evaluates a batch through one simulated privacy engine per objective and
/// fills actual and estimated fitness.
void evaluate_batch(const ProblemInstance& instance, const ObfuscationPlan& plan, Population& batch);

/// Metrics of a result set: mean fitness (plus relative error when the optimum
/// is known) for single-objective problems, GD+/IGD+ raw and normalized when a
/// ground truth is available.
std::vector<MetricValue> result_metrics(const ProblemInstance& instance, const std::vector<ObjectiveVector>& fitness);

/// Runs the evolutionary loop; deterministic in (instance, config, plan, seed).
RunTrace run(const ProblemInstance& instance, const EAConfig& config, const ObfuscationPlan& plan, std::uint64_t seed,
             const TraceOptions& options = {});

} // namespace privopt
