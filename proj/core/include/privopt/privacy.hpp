#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "privopt/problem.hpp"

namespace privopt {

enum class ObfuscationKind { None, Order, OrderQuantiles, FitnessBuckets, TopIndividuals, AboveThreshold };

/// One obfuscation configuration. `param` is k for quantiles, buckets and top
/// individuals, the percentage for the threshold, unused otherwise.
struct ObfuscationMethod {
    ObfuscationKind kind = ObfuscationKind::None;
    double param = 0;

    static ObfuscationMethod none() { return {}; }
    static ObfuscationMethod order() { return {ObfuscationKind::Order, 0}; }
    static ObfuscationMethod quantiles(std::size_t k) { return {ObfuscationKind::OrderQuantiles, double(k)}; }
    static ObfuscationMethod buckets(std::size_t k) { return {ObfuscationKind::FitnessBuckets, double(k)}; }
    static ObfuscationMethod top(std::size_t k) { return {ObfuscationKind::TopIndividuals, double(k)}; }
    static ObfuscationMethod threshold(double percent) { return {ObfuscationKind::AboveThreshold, percent}; }

    [[nodiscard]] std::size_t k() const noexcept { return static_cast<std::size_t>(param); }

    /// Throws std::invalid_argument on out-of-range parameters.
    void validate() const;

    friend bool operator==(const ObfuscationMethod&, const ObfuscationMethod&) = default;
};

/// Short label: "none", "O", "Q10", "B5", "T15", "A80".
std::string to_string(const ObfuscationMethod& method);
ObfuscationMethod parse_obfuscation(std::string_view token);

/// Per-objective method; objectives beyond the list are not obfuscated.
struct ObfuscationPlan {
    std::vector<ObfuscationMethod> methods;

    [[nodiscard]] const ObfuscationMethod& method(std::size_t objective) const;
    [[nodiscard]] bool any_obfuscated() const;

    static ObfuscationPlan uniform(std::size_t objectives, ObfuscationMethod method);
};

/// What the engine reveals about one individual for one objective.
using Label = std::variant<double, std::size_t, bool>;

struct ObfuscatedEvaluation {
    std::vector<Label> labels;
    double max_fitness = 0;
    /// Number of distinct label levels u.
    std::size_t levels = 0;
};

// Each takes fitness in maximization orientation and returns one label per input.
std::vector<std::size_t> obfuscate_order(std::span<const double> fitness);
std::vector<std::size_t> obfuscate_quantiles(std::span<const double> fitness, std::size_t k);
std::vector<std::size_t> obfuscate_buckets(std::span<const double> fitness, std::size_t k);
std::vector<bool> obfuscate_top(std::span<const double> fitness, std::size_t k);
std::vector<bool> obfuscate_threshold(std::span<const double> fitness, double percent);

/// Applies `method` to already-computed fitness (maximization orientation).
ObfuscatedEvaluation obfuscate(std::span<const double> fitness, const ObfuscationMethod& method);

/// Optimizer-side reconstruction: f_min = f_max - 2|f_max|, d = (f_max - f_min)/(u - 1),
/// estimate = f_max - m(label) * d. Pass-through labels are returned unchanged.
std::vector<double> estimate_fitness(std::span<const Label> labels, double max_fitness, std::size_t levels);

/// Actual fitness of a batch, visible only to the trusted metrics channel.
struct TrustedFitness {
    std::vector<double> values;
};

/// Simulated privacy engine for one confidential objective. Fitness of minimized
/// objectives is negated before obfuscation so all labels read "larger is better".
class PrivacyEngine {
public:
    PrivacyEngine(const ProblemInstance& instance, std::size_t objective_index, ObfuscationMethod method);

    [[nodiscard]] ObfuscatedEvaluation evaluate_population(std::span<const Permutation> genomes) const;

    /// Same batch, also handing back actual (un-negated) fitness for the trusted record.
    [[nodiscard]] std::pair<ObfuscatedEvaluation, TrustedFitness>
    evaluate_with_trusted_record(std::span<const Permutation> genomes) const;

    [[nodiscard]] const ObfuscationMethod& method() const noexcept { return method_; }

private:
    const ProblemInstance* instance_;
    std::size_t objective_;
    ObfuscationMethod method_;
};

ObfuscatedEvaluation evaluate_population(const ProblemInstance& instance, std::size_t objective_index,
                                         std::span<const Permutation> genomes, const ObfuscationMethod& method);

/// Upper bounds on relations an honest-but-curious provider could derive,
/// assuming no duplicate solutions.
struct LeakageEstimate {
    std::uint64_t equations = 0;
    /// Inequations inside each population.
    std::uint64_t inequations_within = 0;
    /// Inequations between best solutions and worse-ranked populations (order only).
    std::uint64_t inequations_across = 0;
    bool closed_form = true;
    bool approximate = false;
    std::string assumptions = "no duplicate solutions are generated";

    [[nodiscard]] std::uint64_t inequations() const noexcept { return inequations_within + inequations_across; }
};

LeakageEstimate leakage_estimate(std::uint64_t iterations, std::uint64_t pop_size, const ObfuscationMethod& method);

} // namespace privopt
