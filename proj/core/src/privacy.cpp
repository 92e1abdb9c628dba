#include "privopt/privacy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace privopt {

void ObfuscationMethod::validate() const
{
    switch (kind) {
    case ObfuscationKind::None:
    case ObfuscationKind::Order:
        return;
    case ObfuscationKind::OrderQuantiles:
    case ObfuscationKind::FitnessBuckets:
    case ObfuscationKind::TopIndividuals:
        if (param < 1 || param != std::floor(param))
            throw std::invalid_argument(fmt::format("{} needs an integer k >= 1", to_string(*this)));
        return;
    case ObfuscationKind::AboveThreshold:
        if (!(param >= 0 && param <= 100))
            throw std::invalid_argument(fmt::format("threshold percentage {} outside [0, 100]", param));
        return;
    }
}

std::string to_string(const ObfuscationMethod& method)
{
    switch (method.kind) {
    case ObfuscationKind::None: return "none";
    case ObfuscationKind::Order: return "O";
    case ObfuscationKind::OrderQuantiles: return fmt::format("Q{}", method.k());
    case ObfuscationKind::FitnessBuckets: return fmt::format("B{}", method.k());
    case ObfuscationKind::TopIndividuals: return fmt::format("T{}", method.k());
    case ObfuscationKind::AboveThreshold: return fmt::format("A{}", method.param);
    }
    return "?";
}

ObfuscationMethod parse_obfuscation(std::string_view token)
{
    if (token == "none" || token == "-") return ObfuscationMethod::none();
    if (token == "O" || token == "order") return ObfuscationMethod::order();
    if (token.size() < 2) throw std::invalid_argument(fmt::format("unknown obfuscation '{}'", token));
    double value = 0;
    const auto digits = token.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument(fmt::format("unknown obfuscation '{}'", token));
    }
    ObfuscationMethod m;
    switch (token.front()) {
    case 'Q': m = {ObfuscationKind::OrderQuantiles, value}; break;
    case 'B': m = {ObfuscationKind::FitnessBuckets, value}; break;
    case 'T': m = {ObfuscationKind::TopIndividuals, value}; break;
    case 'A': m = {ObfuscationKind::AboveThreshold, value}; break;
    default: throw std::invalid_argument(fmt::format("unknown obfuscation '{}'", token));
    }
    m.validate();
    return m;
}

const ObfuscationMethod& ObfuscationPlan::method(std::size_t objective) const
{
    static const ObfuscationMethod plain{};
    return objective < methods.size() ? methods[objective] : plain;
}

bool ObfuscationPlan::any_obfuscated() const
{
    return std::any_of(methods.begin(), methods.end(),
                       [](const ObfuscationMethod& m) { return m.kind != ObfuscationKind::None; });
}

ObfuscationPlan ObfuscationPlan::uniform(std::size_t objectives, ObfuscationMethod method)
{
    return ObfuscationPlan{std::vector<ObfuscationMethod>(objectives, method)};
}

namespace {

// Indices sorted best-first; equal fitness keeps input order.
std::vector<std::size_t> descending_order(std::span<const double> fitness)
{
    std::vector<std::size_t> order(fitness.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
    return order;
}

} // namespace

std::vector<std::size_t> obfuscate_order(std::span<const double> fitness)
{
    const auto order = descending_order(fitness);
    std::vector<std::size_t> rank(fitness.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    return rank;
}

std::vector<std::size_t> obfuscate_quantiles(std::span<const double> fitness, std::size_t k)
{
    const auto n = fitness.size();
    if (k < 1 || k > n) throw std::invalid_argument(fmt::format("quantiles: k = {} with {} individuals", k, n));
    const auto order = descending_order(fitness);
    // k - n%k groups of size n/k come first, then the larger groups.
    const auto base = n / k;
    const auto larger = n % k;
    std::vector<std::size_t> label(n);
    std::size_t pos = 0;
    for (std::size_t g = 0; g < k; ++g) {
        const auto size = base + (g >= k - larger ? 1 : 0);
        for (std::size_t s = 0; s < size; ++s) label[order[pos++]] = g;
    }
    return label;
}

std::vector<std::size_t> obfuscate_buckets(std::span<const double> fitness, std::size_t k)
{
    if (k < 1) throw std::invalid_argument("buckets: k must be >= 1");
    std::vector<std::size_t> label(fitness.size(), 0);
    if (fitness.empty()) return label;
    const auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
    const double f_max = *hi;
    const double range = f_max - *lo;
    if (range <= 0) return label;
    const auto kd = static_cast<double>(k);
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        const auto idx = static_cast<std::size_t>(std::floor((f_max - fitness[i]) * kd / range));
        label[i] = std::min(k - 1, idx);
    }
    return label;
}

std::vector<bool> obfuscate_top(std::span<const double> fitness, std::size_t k)
{
    const auto n = fitness.size();
    if (k < 1 || k > n) throw std::invalid_argument(fmt::format("top individuals: k = {} with {} individuals", k, n));
    const auto order = descending_order(fitness);
    std::vector<bool> label(n, false);
    for (std::size_t r = 0; r < k; ++r) label[order[r]] = true;
    return label;
}

std::vector<bool> obfuscate_threshold(std::span<const double> fitness, double percent)
{
    constexpr std::size_t minimum_returned = 3;
    if (!(percent >= 0 && percent <= 100)) throw std::invalid_argument("threshold percentage outside [0, 100]");
    const auto n = fitness.size();
    if (n <= minimum_returned) return std::vector<bool>(n, true);
    const auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
    const double tau = *lo + percent * (*hi - *lo) / 100.0;
    std::vector<bool> label(n, false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (fitness[i] >= tau) {
            label[i] = true;
            ++count;
        }
    }
    if (count < minimum_returned) {
        for (auto idx : descending_order(fitness)) {
            if (count == minimum_returned) break;
            if (!label[idx]) {
                label[idx] = true;
                ++count;
            }
        }
    }
    return label;
}

namespace {

template <typename T>
std::vector<Label> to_labels(const std::vector<T>& values)
{
    std::vector<Label> out;
    out.reserve(values.size());
    for (const auto& v : values) out.emplace_back(static_cast<T>(v));
    return out;
}

} // namespace

ObfuscatedEvaluation obfuscate(std::span<const double> fitness, const ObfuscationMethod& method)
{
    if (fitness.empty()) throw std::invalid_argument("cannot obfuscate an empty population");
    method.validate();
    ObfuscatedEvaluation out;
    out.max_fitness = *std::max_element(fitness.begin(), fitness.end());
    switch (method.kind) {
    case ObfuscationKind::None:
        out.labels.assign(fitness.begin(), fitness.end());
        out.levels = fitness.size();
        break;
    case ObfuscationKind::Order:
        out.labels = to_labels(obfuscate_order(fitness));
        out.levels = fitness.size();
        break;
    case ObfuscationKind::OrderQuantiles:
        out.labels = to_labels(obfuscate_quantiles(fitness, method.k()));
        out.levels = method.k();
        break;
    case ObfuscationKind::FitnessBuckets:
        out.labels = to_labels(obfuscate_buckets(fitness, method.k()));
        out.levels = method.k();
        break;
    case ObfuscationKind::TopIndividuals: {
        const auto flags = obfuscate_top(fitness, method.k());
        out.labels.assign(flags.begin(), flags.end());
        out.levels = 2;
        break;
    }
    case ObfuscationKind::AboveThreshold: {
        const auto flags = obfuscate_threshold(fitness, method.param);
        out.labels.assign(flags.begin(), flags.end());
        out.levels = 2;
        break;
    }
    }
    return out;
}

std::vector<double> estimate_fitness(std::span<const Label> labels, double max_fitness, std::size_t levels)
{
    if (levels < 1) throw std::invalid_argument("estimate_fitness: at least one label level");
    const double f_min = max_fitness - 2.0 * std::abs(max_fitness);
    const double range = max_fitness - f_min;
    const double steps = levels > 1 ? static_cast<double>(levels - 1) : 1.0;
    std::vector<double> out;
    out.reserve(labels.size());
    for (const auto& label : labels) {
        if (const auto* raw = std::get_if<double>(&label)) {
            out.push_back(*raw);
            continue;
        }
        double m = 0;
        if (const auto* flag = std::get_if<bool>(&label)) m = *flag ? 0.0 : 1.0;
        else m = static_cast<double>(std::get<std::size_t>(label));
        // m * d with the division last, so integral inputs land on exact grid points.
        out.push_back(levels > 1 ? max_fitness - m * range / steps : max_fitness);
    }
    return out;
}

PrivacyEngine::PrivacyEngine(const ProblemInstance& instance, std::size_t objective_index, ObfuscationMethod method)
    : instance_(&instance), objective_(objective_index), method_(method)
{
    if (objective_index >= instance.objective_count()) throw std::invalid_argument("objective index out of range");
    method_.validate();
}

std::pair<ObfuscatedEvaluation, TrustedFitness>
PrivacyEngine::evaluate_with_trusted_record(std::span<const Permutation> genomes) const
{
    const bool negate = instance_->direction(objective_) == Direction::Minimize;
    TrustedFitness trusted;
    trusted.values.reserve(genomes.size());
    std::vector<double> oriented;
    oriented.reserve(genomes.size());
    for (const auto& g : genomes) {
        const double f = evaluate(*instance_, objective_, g);
        trusted.values.push_back(f);
        oriented.push_back(negate ? -f : f);
    }
    return {obfuscate(oriented, method_), std::move(trusted)};
}

ObfuscatedEvaluation PrivacyEngine::evaluate_population(std::span<const Permutation> genomes) const
{
    return evaluate_with_trusted_record(genomes).first;
}

ObfuscatedEvaluation evaluate_population(const ProblemInstance& instance, std::size_t objective_index,
                                         std::span<const Permutation> genomes, const ObfuscationMethod& method)
{
    return PrivacyEngine(instance, objective_index, method).evaluate_population(genomes);
}

namespace {

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

} // namespace

LeakageEstimate leakage_estimate(std::uint64_t iterations, std::uint64_t pop_size, const ObfuscationMethod& method)
{
    if (iterations < 1 || pop_size < 1) throw std::invalid_argument("leakage: iterations and pop_size must be >= 1");
    method.validate();
    LeakageEstimate est;
    switch (method.kind) {
    case ObfuscationKind::None:
        est.equations = choose2(iterations * pop_size);
        break;
    case ObfuscationKind::Order:
        est.equations = choose2(iterations);
        est.inequations_within = choose2(pop_size) * iterations;
        // sum_{i=1}^{I} (n - 1)(I - i) = (n - 1) * C(I, 2)
        est.inequations_across = (pop_size - 1) * choose2(iterations);
        break;
    case ObfuscationKind::OrderQuantiles: {
        const auto k = static_cast<std::uint64_t>(method.k());
        if (k > pop_size) throw std::invalid_argument("leakage: more quantiles than individuals");
        if (pop_size % k == 0) {
            const auto g = pop_size / k;
            std::uint64_t per_population = 0;
            for (std::uint64_t i = 1; i <= k; ++i) per_population += g * (pop_size - g * i);
            est.inequations_within = per_population * iterations;
        } else {
            // Uneven groups: count cross-group pairs with the actual group sizes.
            est.approximate = true;
            const auto base = pop_size / k;
            const auto larger = pop_size % k;
            std::uint64_t sum_sq = (k - larger) * base * base + larger * (base + 1) * (base + 1);
            est.inequations_within = (pop_size * pop_size - sum_sq) / 2 * iterations;
        }
        break;
    }
    case ObfuscationKind::TopIndividuals: {
        const auto k = static_cast<std::uint64_t>(method.k());
        if (k > pop_size) throw std::invalid_argument("leakage: k exceeds population size");
        est.inequations_within = k * (pop_size - k) * iterations;
        break;
    }
    case ObfuscationKind::FitnessBuckets:
    case ObfuscationKind::AboveThreshold:
        est.closed_form = false;
        break;
    }
    return est;
}

} // namespace privopt
