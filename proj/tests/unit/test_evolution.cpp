#include <doctest.h>

#include <stdexcept>

#include "privopt/evolution.hpp"
#include "privopt/exact.hpp"
#include "privopt/experiment.hpp"
#include "privopt/instances.hpp"

using namespace privopt;

namespace {

EAConfig small_ga(std::size_t generations)
{
    auto c = EAConfig::ga_assignment();
    c.mu = 40;
    c.kappa = 4;
    c.tournament_size = 4;
    c.generations = generations;
    return c;
}

} // namespace

TEST_CASE("parent count rounds up to even")
{
    auto c = EAConfig::ga_assignment();
    CHECK(parent_count(c) == 286);
    c.kappa = 14;
    CHECK(parent_count(c) == 286);
    CHECK(parent_count(EAConfig::nsga2_moap()) == 150);
}

TEST_CASE("presets")
{
    const auto ap = EAConfig::ga_assignment();
    CHECK(ap.mu == 300);
    CHECK(ap.kappa == 15);
    CHECK(ap.tournament_size == 18);
    CHECK(ap.crossover == CrossoverOp::Cycle);
    CHECK(ap.crossover_prob == 95);
    CHECK(ap.mutation == MutationOp::Swap);
    const auto tsp = EAConfig::ga_tsp();
    CHECK(tsp.tournament_size == 20);
    CHECK(tsp.crossover == CrossoverOp::Edge);
    CHECK(tsp.crossover_prob == 75);
    CHECK(tsp.mutation == MutationOp::Inversion);
    const auto mo = EAConfig::nsga2_moap();
    CHECK(mo.mu == 150);
    CHECK(mo.mutation_prob == 75);
    CHECK(mo.reevaluate_parents);
    for (const auto& c : {ap, tsp, mo}) CHECK_NOTHROW(c.validate());
}

TEST_CASE("GA evaluates 300 individuals per generation")
{
    const auto inst = generate_ap_instance(1, 20, 20, 1, 0, 100);
    auto config = EAConfig::ga_assignment();
    config.generations = 3;
    const auto trace = run(inst, config, ObfuscationPlan::uniform(1, ObfuscationMethod::none()), 5);
    REQUIRE(trace.records.size() == 4);
    CHECK(trace.records[0].evaluated == 300);
    for (std::size_t t = 1; t < trace.records.size(); ++t) CHECK(trace.records[t].evaluated == 300);
}

TEST_CASE("NSGA-II evaluates offspring plus parents")
{
    const auto inst = generate_ap_instance(2, 12, 12, 2, 0, 100);
    auto config = EAConfig::nsga2_moap();
    config.generations = 3;
    const auto trace = run(inst, config, ObfuscationPlan::uniform(2, ObfuscationMethod::none()), 5);
    CHECK(trace.records[0].evaluated == 150);
    for (std::size_t t = 1; t < trace.records.size(); ++t) CHECK(trace.records[t].evaluated == 300);
}

TEST_CASE("zero generations give a single record")
{
    const auto inst = generate_ap_instance(3, 10, 10, 1, 0, 100);
    const auto trace = run(inst, small_ga(0), ObfuscationPlan::uniform(1, ObfuscationMethod::none()), 1);
    REQUIRE(trace.records.size() == 1);
    CHECK(trace.records[0].generation == 0);
    CHECK(trace.initial_population.size() == 40);
}

TEST_CASE("runs are deterministic and seeds pair initial populations")
{
    const auto inst = generate_ap_instance(4, 15, 15, 1, 0, 100);
    const auto plan = ObfuscationPlan::uniform(1, ObfuscationMethod::top(5));
    const auto a = run(inst, small_ga(15), plan, 9);
    const auto b = run(inst, small_ga(15), plan, 9);
    CHECK(serialize_trace(a) == serialize_trace(b));
    const auto c = run(inst, small_ga(15), ObfuscationPlan::uniform(1, ObfuscationMethod::buckets(5)), 9);
    CHECK(c.initial_population == a.initial_population);
    const auto d = run(inst, small_ga(15), plan, 10);
    CHECK(d.initial_population != a.initial_population);
}

TEST_CASE("elitism keeps the best actual fitness without obfuscation")
{
    const auto inst = generate_ap_instance(5, 25, 25, 1, 0, 1000);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto trace = run(inst, small_ga(40), ObfuscationPlan::uniform(1, ObfuscationMethod::none()), seed);
        for (std::size_t t = 1; t < trace.records.size(); ++t) {
            CHECK(trace.records[t].best_actual[0] >= trace.records[t - 1].best_actual[0]);
            CHECK(trace.records[t].metric(MetricKind::MeanFitness)->value >=
                  trace.records[t - 1].metric(MetricKind::MeanFitness)->value);
        }
    }
}

TEST_CASE("GA improves on a small assignment problem")
{
    auto inst = generate_ap_instance(6, 12, 12, 1, 0, 100);
    const double best = solve_ap_exact(inst.objectives[0]).value;
    inst.known_optimum = std::vector<double>{best};
    auto config = small_ga(150);
    const auto trace = run(inst, config, ObfuscationPlan::uniform(1, ObfuscationMethod::none()), 3);
    const auto& last = trace.records.back();
    CHECK(last.metric(MetricKind::MeanFitness)->value >= 0.9 * best);
    CHECK(last.metric(MetricKind::RelativeError)->value <= 0.1);
    CHECK(last.metric(MetricKind::MeanFitness)->value <= best);
}

TEST_CASE("TSP runs minimize the tour")
{
    const auto inst = generate_euclidean_tsp(7, 15);
    auto config = EAConfig::ga_tsp();
    config.mu = 60;
    config.kappa = 4;
    config.generations = 60;
    const auto trace = run(inst, config, ObfuscationPlan::uniform(1, ObfuscationMethod::order()), 2);
    CHECK(trace.records.back().best_actual[0] < trace.records.front().best_actual[0]);
    for (const auto& g : trace.records.back().result_genomes) CHECK(g.is_valid());
}

TEST_CASE("MOAP records indicators against the ground truth")
{
    auto inst = generate_ap_instance(8, 8, 8, 2, 0, 100);
    inst.ground_truth = compute_ground_truth(inst);
    auto config = EAConfig::nsga2_moap();
    config.mu = 30;
    config.generations = 20;
    ObfuscationPlan plan{{ObfuscationMethod::buckets(5), ObfuscationMethod::none()}};
    const auto trace = run(inst, config, plan, 4);
    const auto& last = trace.records.back();
    REQUIRE(last.metric(MetricKind::GDPlus) != nullptr);
    REQUIRE(last.metric(MetricKind::IGDPlus, true) != nullptr);
    CHECK(last.metric(MetricKind::GDPlus)->value >= 0);
}

TEST_CASE("configuration mismatches are rejected")
{
    const auto ap = generate_ap_instance(9, 10, 10, 1, 0, 100);
    const auto moap = generate_ap_instance(9, 10, 10, 2, 0, 100);
    const auto none1 = ObfuscationPlan::uniform(1, ObfuscationMethod::none());
    CHECK_THROWS_AS(run(ap, EAConfig::nsga2_moap(), none1, 1), std::invalid_argument);
    CHECK_THROWS_AS(run(moap, small_ga(1), none1, 1), std::invalid_argument);
    CHECK_THROWS_AS(run(ap, small_ga(1), ObfuscationPlan::uniform(1, ObfuscationMethod::top(41)), 1),
                    std::invalid_argument);
    auto bad = EAConfig::nsga2_moap();
    bad.reevaluate_parents = false;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
