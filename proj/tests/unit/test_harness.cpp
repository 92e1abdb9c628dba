#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>

#include "privopt/analysis.hpp"
#include "privopt/exact.hpp"
#include "privopt/experiment.hpp"
#include "privopt/instances.hpp"
#include "privopt/plot.hpp"

using namespace privopt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path = fs::temp_directory_path() / fmt::format("privopt_{}_{:x}", tag, rd());
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::size_t count_files(const fs::path& dir, const std::string& prefix)
{
    std::size_t n = 0;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().filename().string().rfind(prefix, 0) == 0) ++n;
    return n;
}

ExperimentSpec small_spec(const fs::path& instance)
{
    ExperimentSpec spec;
    spec.name = "small";
    spec.instances = {instance.string()};
    spec.algorithm = EAConfig::ga_assignment();
    spec.algorithm.mu = 30;
    spec.algorithm.kappa = 2;
    spec.algorithm.tournament_size = 4;
    spec.algorithm.generations = 12;
    spec.obfuscations = {ObfuscationMethod::none(), ObfuscationMethod::buckets(5), ObfuscationMethod::top(15)};
    spec.seeds = {0, 1, 2, 3, 4};
    spec.budget = 12 * 0.27 + 0.27;
    return spec;
}

} // namespace

TEST_CASE("generated AP instances carry their exact optimum")
{
    TempDir dir("gen");
    const auto files = generate_instances(7, 3, ProblemKind::AP, 12, dir.path);
    REQUIRE(files.size() == 3);
    for (const auto& f : files) {
        const auto inst = load_instance(f);
        REQUIRE(inst.known_optimum.has_value());
        CHECK((*inst.known_optimum)[0] == solve_ap_exact(inst.objectives[0]).value);
    }
    CHECK(load_instance(files[1]).objectives == generate_ap_instance(8, 12, 12, 1, 0, 1000).objectives);
    CHECK(generate_instances(7, 0, ProblemKind::AP, 12, dir.path / "none").empty());
    CHECK_FALSE(fs::exists(dir.path / "none"));
}

TEST_CASE("generated MOAP ground truth lies on the exact front")
{
    TempDir dir("moap");
    const auto files = generate_instances(3, 2, ProblemKind::MOAP, 6, dir.path);
    for (const auto& f : files) {
        const auto inst = load_instance(f);
        REQUIRE(inst.ground_truth.has_value());
        const auto front = std::get<std::vector<ObjectiveVector>>(brute_force_optimum(inst));
        for (const auto& p : inst.ground_truth->points) CHECK(std::find(front.begin(), front.end(), p) != front.end());
    }
}

TEST_CASE("spec parsing")
{
    const auto spec = parse_experiment_spec(R"({
        "name": "demo", "instances": ["a.json"], "algorithm": "ga-tsp",
        "obfuscations": ["none", "O", "Q10", "A95"], "seeds": {"from": 3, "count": 4},
        "eval_times": {"order": 1.5}, "budget": 20, "workers": 2, "metrics": ["mean_fitness", "relative_error"]
    })");
    CHECK(spec.algorithm == EAConfig::ga_tsp());
    CHECK(spec.seeds == std::vector<std::uint64_t>{3, 4, 5, 6});
    CHECK(spec.eval_times.order == 1.5);
    CHECK(spec.eval_times.none == 0.27);
    CHECK(spec.obfuscations.size() == 4);
    CHECK(parse_experiment_spec(serialize_experiment_spec(spec)).obfuscations == spec.obfuscations);
    CHECK(serialize_experiment_spec(parse_experiment_spec(serialize_experiment_spec(spec))) ==
          serialize_experiment_spec(spec));

    const auto defaults = parse_experiment_spec(R"({"instances": ["a.json"]})");
    CHECK(defaults.seeds.size() == 31);
    CHECK(defaults.obfuscations.size() == 14);
    CHECK(defaults.budget == 135.27);

    CHECK_THROWS_AS(parse_experiment_spec(R"({"instances": [], "seeds": []})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec(R"({"instances": [], "seeds": [1, 1]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec(R"({"instances": [], "obfuscations": ["X4"]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec(R"({"instances": [], "obfuscations": ["B0"]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_experiment_spec("{not json"), std::invalid_argument);
}

TEST_CASE("experiment run, rerun, analysis and plots")
{
    TempDir dir("exp");
    const auto inst_file = generate_instances(11, 1, ProblemKind::AP, 14, dir.path / "inst").front();
    auto spec = small_spec(inst_file);
    spec.workers = 3;
    const auto out = dir.path / "results";
    const auto report = run_experiment(spec, dir.path, out);
    CHECK(report.ok());
    CHECK(report.runs_completed == 15);
    CHECK(count_files(out, "seed_") == 15);

    const auto instance_dir = out / load_instance(inst_file).name;
    const auto csv_a = read_text_file(instance_dir / "B5" / "metrics.csv");
    const auto trace_a = read_text_file(instance_dir / "T15" / "seed_3.json");

    // Same spec on one worker: identical bytes.
    spec.workers = 1;
    run_experiment(spec, dir.path, out);
    CHECK(read_text_file(instance_dir / "B5" / "metrics.csv") == csv_a);
    CHECK(read_text_file(instance_dir / "T15" / "seed_3.json") == trace_a);

    // Seed pairing across configurations.
    const auto none_trace = deserialize_trace(read_text_file(instance_dir / "none" / "seed_2.json"));
    const auto b5_trace = deserialize_trace(read_text_file(instance_dir / "B5" / "seed_2.json"));
    CHECK(none_trace.initial_population == b5_trace.initial_population);
    CHECK(none_trace.records.size() == 13);
    CHECK(serialize_trace(none_trace) == read_text_file(instance_dir / "none" / "seed_2.json"));
    CHECK(none_trace.records.back().result_genomes.size() == none_trace.records.back().result_fitness.size());

    const auto samples = parse_metrics_csv(csv_a);
    CHECK(samples.size() == 5 * 13 * 2);

    const auto results = analyze_results(out);
    REQUIRE(results.size() == 1);
    const auto& ia = results[0];
    CHECK(ia.configs == std::vector<std::string>{"none", "B5", "T15"});
    CHECK(ia.comparison_generations[0] == 12);
    CHECK(ia.comparison_generations[1] == 0);
    CHECK(ia.comparison_generations[2] == 3);
    const auto analysis_dir = out / "analysis" / ia.instance;
    CHECK(fs::exists(analysis_dir / "comparison_generations.csv"));
    const auto wins = read_text_file(analysis_dir / "mean_fitness_wins.csv");
    // Header names every column except the last config; the diagonal and above stay empty.
    CHECK(wins.rfind("config,wins,none,B5\n", 0) == 0);
    CHECK(wins.find("\nnone,") != std::string::npos);
    CHECK(read_text_file(analysis_dir / "mean_fitness_summary.csv").rfind("config,comparison_generation", 0) == 0);

    // Comparison-generation overrides.
    AnalysisOptions opts;
    opts.budget = 100;
    CHECK(analyze_results(out, opts)[0].comparison_generations[1] == 12);

    const auto plots = plot_results(out);
    CHECK(plots.warnings.empty());
    CHECK(plots.files.size() == 3);
    const auto svg = read_text_file(plots.files[0]);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("sans-serif") != std::string::npos);
    CHECK(svg.find("@font-face") == std::string::npos);

    // A configuration without data is named in the error.
    fs::remove(instance_dir / "T15" / "metrics.csv");
    CHECK_THROWS_WITH_AS(plot_results(out), doctest::Contains("T15"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(analyze_results(out), doctest::Contains("T15"), std::invalid_argument);
}

TEST_CASE("analysis rejects inconsistent seed sets")
{
    TempDir dir("seeds");
    const auto inst_file = generate_instances(12, 1, ProblemKind::AP, 10, dir.path / "inst").front();
    auto spec = small_spec(inst_file);
    spec.obfuscations = {ObfuscationMethod::none(), ObfuscationMethod::order()};
    const auto out = dir.path / "results";
    run_experiment(spec, dir.path, out);
    const auto csv = out / load_instance(inst_file).name / "O" / "metrics.csv";
    std::string text = read_text_file(csv);
    std::string kept;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
        if (line.find(",4,mean_fitness") == std::string::npos) kept += line + "\n";
    }
    write_text_file(csv, kept);
    CHECK_THROWS_AS(analyze_results(out), std::invalid_argument);
}

TEST_CASE("failed runs are recorded and completed runs kept")
{
    TempDir dir("fail");
    const auto inst_file = generate_instances(13, 1, ProblemKind::AP, 10, dir.path / "inst").front();
    auto spec = small_spec(inst_file);
    spec.obfuscations = {ObfuscationMethod::none(), ObfuscationMethod::top(31)};
    const auto out = dir.path / "results";
    const auto report = run_experiment(spec, dir.path, out);
    CHECK_FALSE(report.ok());
    CHECK(report.failures.size() == 5);
    CHECK(report.runs_completed == 5);
    CHECK(fs::exists(out / "errors.csv"));
    CHECK(fs::exists(out / load_instance(inst_file).name / "none" / "seed_0.json"));
}

TEST_CASE("MOAP experiment with both objectives obfuscated produces scatter plots")
{
    TempDir dir("mo");
    const auto inst_file = generate_instances(21, 1, ProblemKind::MOAP, 8, dir.path / "inst").front();
    ExperimentSpec spec;
    spec.instances = {inst_file.string()};
    spec.algorithm = EAConfig::nsga2_moap();
    spec.algorithm.mu = 20;
    spec.algorithm.generations = 5;
    spec.obfuscations = {ObfuscationMethod::none(), ObfuscationMethod::quantiles(5)};
    spec.obfuscated_objectives = {0, 1};
    spec.seeds = {0, 1, 2};
    const auto out = dir.path / "results";
    CHECK(run_experiment(spec, dir.path, out).ok());
    const auto trace =
        deserialize_trace(read_text_file(out / load_instance(inst_file).name / "Q5" / "seed_1.json"));
    CHECK(trace.plan.methods == std::vector<ObfuscationMethod>{ObfuscationMethod::quantiles(5),
                                                               ObfuscationMethod::quantiles(5)});
    const auto a = analyze_results(out);
    CHECK(a[0].metrics.size() == 2);
    const auto plots = plot_results(out);
    CHECK(count_files(out / "plots", "scatter_") == 2);
    CHECK(count_files(out / "plots", "convergence_") == 4);
}

TEST_CASE("plotting an empty directory warns and writes nothing")
{
    TempDir dir("empty");
    const auto report = plot_results(dir.path);
    CHECK(report.files.empty());
    CHECK(report.warnings.size() == 1);
    CHECK(fs::is_empty(dir.path));
}

TEST_CASE("leakage report states the assumption")
{
    const auto text = leakage_report(ObfuscationMethod::order(), 500, 300);
    CHECK(text.find("equations: 124750") != std::string::npos);
    CHECK(text.find("no duplicate solutions") != std::string::npos);
    CHECK(leakage_report(ObfuscationMethod::buckets(5), 500, 300).find("no closed-form") != std::string::npos);
}
