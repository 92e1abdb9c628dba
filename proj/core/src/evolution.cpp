#include "privopt/evolution.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/core.h>

namespace privopt {

std::string_view to_string(Algorithm a)
{
    return a == Algorithm::GA ? "ga" : "nsga2";
}

Algorithm parse_algorithm(std::string_view s)
{
    if (s == "ga" || s == "GA") return Algorithm::GA;
    if (s == "nsga2" || s == "NSGA2" || s == "NSGA-II") return Algorithm::NSGA2;
    throw std::invalid_argument(fmt::format("unknown algorithm '{}'", s));
}

void EAConfig::validate() const
{
    if (mu < 2) throw std::invalid_argument("population size must be at least 2");
    if (kappa >= mu) throw std::invalid_argument("elite count must be below the population size");
    if (!(crossover_prob >= 0 && crossover_prob <= 100) || !(mutation_prob >= 0 && mutation_prob <= 100))
        throw std::invalid_argument("probabilities are percentages in [0, 100]");
    if (algorithm == Algorithm::GA && tournament_size < 1) throw std::invalid_argument("tournament size must be >= 1");
    if (algorithm == Algorithm::NSGA2 && (kappa != 0 || !reevaluate_parents))
        throw std::invalid_argument("NSGA-II runs without elites and re-evaluates the parent population");
}

// Table values from the tuning study; not re-tuned here.
EAConfig EAConfig::ga_assignment()
{
    return EAConfig{Algorithm::GA, 300, 15, 500, 18, CrossoverOp::Cycle, 95, MutationOp::Swap, 100, false};
}

EAConfig EAConfig::ga_tsp()
{
    return EAConfig{Algorithm::GA, 300, 15, 500, 20, CrossoverOp::Edge, 75, MutationOp::Inversion, 100, false};
}

EAConfig EAConfig::nsga2_moap()
{
    return EAConfig{Algorithm::NSGA2, 150, 0, 500, 2, CrossoverOp::Cycle, 100, MutationOp::Swap, 75, true};
}

const MetricValue* GenerationRecord::metric(MetricKind kind, bool normalized) const
{
    for (const auto& m : metrics) {
        if (m.kind == kind && m.normalized == normalized) return &m;
    }
    return nullptr;
}

std::size_t parent_count(const EAConfig& config)
{
    const auto offspring = config.mu - config.kappa;
    return offspring + offspring % 2;
}

void evaluate_batch(const ProblemInstance& instance, const ObfuscationPlan& plan, Population& batch)
{
    std::vector<Permutation> genomes;
    genomes.reserve(batch.size());
    for (const auto& ind : batch) genomes.push_back(ind.genome);
    const auto objectives = instance.objective_count();
    for (auto& ind : batch) {
        ind.actual.assign(objectives, 0.0);
        ind.estimated.assign(objectives, 0.0);
        ind.labels.assign(objectives, Label{0.0});
    }
    for (std::size_t obj = 0; obj < objectives; ++obj) {
        const PrivacyEngine engine(instance, obj, plan.method(obj));
        auto [obfuscated, trusted] = engine.evaluate_with_trusted_record(genomes);
        const auto estimates = estimate_fitness(obfuscated.labels, obfuscated.max_fitness, obfuscated.levels);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            batch[i].actual[obj] = trusted.values[i];
            batch[i].estimated[obj] = estimates[i];
            batch[i].labels[obj] = obfuscated.labels[i];
        }
    }
}

std::vector<MetricValue> result_metrics(const ProblemInstance& instance, const std::vector<ObjectiveVector>& fitness)
{
    std::vector<MetricValue> out;
    if (fitness.empty()) return out;
    if (instance.objective_count() == 1) {
        std::vector<double> values;
        values.reserve(fitness.size());
        for (const auto& f : fitness) values.push_back(f[0]);
        const double m = mean(values);
        out.push_back({MetricKind::MeanFitness, m, false});
        if (instance.known_optimum && (*instance.known_optimum)[0] != 0) {
            out.push_back({MetricKind::RelativeError,
                           relative_error(m, (*instance.known_optimum)[0], instance.direction(0)), false});
        }
        return out;
    }
    if (!instance.ground_truth || instance.ground_truth->points.empty()) return out;
    const auto& truth = *instance.ground_truth;
    out.push_back({MetricKind::GDPlus, gd_plus(fitness, truth, false), false});
    out.push_back({MetricKind::IGDPlus, igd_plus(fitness, truth, false), false});
    bool can_normalize = true;
    for (std::size_t i = 0; i < truth.ideal.size(); ++i) can_normalize = can_normalize && truth.ideal[i] != truth.nadir[i];
    if (can_normalize) {
        out.push_back({MetricKind::GDPlus, gd_plus(fitness, truth, true), true});
        out.push_back({MetricKind::IGDPlus, igd_plus(fitness, truth, true), true});
    }
    return out;
}

namespace {

void check_compatible(const ProblemInstance& instance, const EAConfig& config, const ObfuscationPlan& plan)
{
    config.validate();
    instance.validate();
    const bool single = instance.objective_count() == 1;
    if (single && config.algorithm != Algorithm::GA)
        throw std::invalid_argument("single-objective instances run with the GA");
    if (!single && config.algorithm != Algorithm::NSGA2)
        throw std::invalid_argument("multi-objective instances run with NSGA-II");
    if (instance.rows() != instance.cols()) throw std::invalid_argument("only balanced instances are supported");
    if (plan.methods.size() > instance.objective_count())
        throw std::invalid_argument("obfuscation plan names more objectives than the instance has");
    for (const auto& m : plan.methods) {
        m.validate();
        if ((m.kind == ObfuscationKind::TopIndividuals || m.kind == ObfuscationKind::OrderQuantiles) &&
            m.k() > config.mu) {
            throw std::invalid_argument(fmt::format("{} exceeds the population size", to_string(m)));
        }
    }
}

Population select_survivors(Population population, std::size_t count, Algorithm algorithm)
{
    if (count == 0) return {};
    if (algorithm == Algorithm::GA) return truncation_survivors(std::move(population), count);
    return nsga2_survivors(std::move(population), count);
}

GenerationRecord make_record(const ProblemInstance& instance, std::size_t generation, std::size_t evaluated,
                             const Population& survivors, bool keep_genomes)
{
    GenerationRecord rec;
    rec.generation = generation;
    rec.evaluated = evaluated;
    const auto objectives = instance.objective_count();
    rec.best_actual.resize(objectives);
    for (std::size_t obj = 0; obj < objectives; ++obj) {
        const bool maximize = instance.direction(obj) == Direction::Maximize;
        double best = survivors.front().actual[obj];
        for (const auto& ind : survivors) best = maximize ? std::max(best, ind.actual[obj]) : std::min(best, ind.actual[obj]);
        rec.best_actual[obj] = best;
    }
    for (auto& ind : result_set(survivors)) {
        rec.result_fitness.push_back(ind.actual);
        if (keep_genomes) rec.result_genomes.push_back(std::move(ind.genome));
    }
    rec.metrics = result_metrics(instance, rec.result_fitness);
    return rec;
}

} // namespace

RunTrace run(const ProblemInstance& instance, const EAConfig& config, const ObfuscationPlan& plan, std::uint64_t seed,
             const TraceOptions& options)
{
    check_compatible(instance, config, plan);
    Rng rng(seed);
    const auto n = instance.rows();
    auto keep = [&](std::size_t t) {
        return options.genomes == GenomeRecording::All ||
               (options.genomes == GenomeRecording::Endpoints && (t == 0 || t == config.generations));
    };

    RunTrace trace;
    trace.seed = seed;
    trace.instance_name = instance.name;
    trace.config = config;
    trace.plan = plan;
    trace.records.reserve(config.generations + 1);

    Population batch(config.mu);
    for (auto& ind : batch) ind.genome = random_permutation(n, rng);
    for (const auto& ind : batch) trace.initial_population.push_back(ind.genome);
    evaluate_batch(instance, plan, batch);
    Population parents = select_survivors(std::move(batch), config.mu, config.algorithm);
    trace.records.push_back(make_record(instance, 0, config.mu, parents, keep(0)));

    const auto offspring_count = config.mu - config.kappa;
    const auto parents_needed = parent_count(config);
    for (std::size_t t = 1; t <= config.generations; ++t) {
        std::vector<std::size_t> chosen(parents_needed);
        for (auto& c : chosen) {
            c = config.algorithm == Algorithm::GA ? tournament_select(parents, config.tournament_size, rng)
                                                  : crowded_tournament_select(parents, rng);
        }
        Population next;
        next.reserve(offspring_count + config.kappa + (config.reevaluate_parents ? parents.size() : 0));
        for (std::size_t p = 0; p + 1 < chosen.size(); p += 2) {
            auto [a, b] = crossover(parents[chosen[p]].genome, parents[chosen[p + 1]].genome, config.crossover,
                                    config.crossover_prob, rng);
            next.push_back(Individual{std::move(a), {}, {}, {}, 0, 0});
            if (next.size() < offspring_count) next.push_back(Individual{std::move(b), {}, {}, {}, 0, 0});
        }
        for (auto& child : next) mutate(child.genome, config.mutation, config.mutation_prob, rng);
        for (auto& elite : select_survivors(parents, config.kappa, config.algorithm)) next.push_back(std::move(elite));
        if (config.reevaluate_parents) {
            for (auto& parent : parents) next.push_back(std::move(parent));
        }
        const auto evaluated = next.size();
        evaluate_batch(instance, plan, next);
        parents = select_survivors(std::move(next), config.mu, config.algorithm);
        trace.records.push_back(make_record(instance, t, evaluated, parents, keep(t)));
    }
    return trace;
}

} // namespace privopt
