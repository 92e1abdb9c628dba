// privopt: instance generation, experiment runs, analysis, plots and leakage bounds.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "privopt/analysis.hpp"
#include "privopt/experiment.hpp"
#include "privopt/plot.hpp"

namespace fs = std::filesystem;
using namespace privopt;

namespace {

fs::path output_root()
{
    if (const char* env = std::getenv("PRIVOPT_OUTPUT_ROOT"); env && *env) return env;
    return "results";
}

ObfuscationMethod leakage_method(const std::string& name, std::optional<double> param)
{
    const auto need = [&] {
        if (!param) throw CLI::ValidationError(fmt::format("method '{}' needs --k", name));
        return *param;
    };
    if (name == "none") return ObfuscationMethod::none();
    if (name == "order") return ObfuscationMethod::order();
    if (name == "quantiles") return ObfuscationMethod::quantiles(static_cast<std::size_t>(need()));
    if (name == "buckets") return ObfuscationMethod::buckets(static_cast<std::size_t>(need()));
    if (name == "top") return ObfuscationMethod::top(static_cast<std::size_t>(need()));
    if (name == "threshold") return ObfuscationMethod::threshold(need());
    return parse_obfuscation(name);
}

AnalysisOptions analysis_options(const std::string& config, std::optional<double> budget)
{
    AnalysisOptions options;
    if (!config.empty()) {
        const auto j = nlohmann::json::parse(read_text_file(config));
        if (j.contains("budget")) options.budget = j["budget"].get<double>();
        if (j.contains("eval_times")) {
            // Reuse the spec parser's field handling through a minimal document.
            nlohmann::json doc{{"instances", nlohmann::json::array()}, {"eval_times", j["eval_times"]}};
            options.eval_times = parse_experiment_spec(doc.dump()).eval_times;
        }
    }
    if (budget) options.budget = budget;
    return options;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Evolutionary optimization over obfuscated fitness: experiments and analysis"};
    app.require_subcommand(1);

    // gen-instances
    auto* gen = app.add_subcommand("gen-instances", "Generate random problem instances");
    std::uint64_t gen_seed = 0;
    std::size_t gen_count = 1;
    std::string gen_kind = "AP";
    std::size_t gen_size = 100;
    std::string gen_out;
    Weight gen_lo = 0, gen_hi = 1000;
    gen->add_option("--seed", gen_seed, "Seed of the first instance; instance i uses seed + i");
    gen->add_option("--count", gen_count, "Number of instances");
    gen->add_option("--kind", gen_kind, "AP, MOAP or TSP");
    gen->add_option("--size", gen_size, "Rows and columns (AP, MOAP) or cities (TSP)");
    gen->add_option("--lo", gen_lo, "Smallest weight");
    gen->add_option("--hi", gen_hi, "Largest weight");
    gen->add_option("--out", gen_out, "Output directory (default $PRIVOPT_OUTPUT_ROOT/instances)");

    // run-experiment
    auto* runx = app.add_subcommand("run-experiment", "Run every instance x configuration x seed of a spec");
    std::string run_config;
    std::string run_out;
    std::size_t run_workers = 0;
    runx->add_option("--config", run_config, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);
    runx->add_option("--out", run_out, "Results directory (default $PRIVOPT_OUTPUT_ROOT/<spec name>)");
    runx->add_option("--workers", run_workers, "Concurrent runs (overrides the spec)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "Win matrices and summaries at the comparison generations");
    std::string ana_dir;
    std::string ana_config;
    std::optional<double> ana_budget;
    ana->add_option("results", ana_dir, "Results directory")->required();
    ana->add_option("--config", ana_config, "JSON with budget and/or eval_times overrides")->check(CLI::ExistingFile);
    ana->add_option("--budget", ana_budget, "Time budget in seconds");

    // plot
    auto* plt = app.add_subcommand("plot", "Convergence and result-set SVG plots");
    std::string plot_dir;
    plt->add_option("results", plot_dir, "Results directory")->required();

    // leakage
    auto* leak = app.add_subcommand("leakage", "Upper bound of equations and inequations an observer can form");
    std::string leak_method;
    std::uint64_t leak_iterations = 0, leak_pop = 0;
    std::optional<double> leak_k;
    leak->add_option("method", leak_method, "none, order, quantiles, buckets, top, threshold or a label like Q10")
        ->required();
    leak->add_option("iterations", leak_iterations, "Generations observed")->required();
    leak->add_option("pop-size", leak_pop, "Population size")->required();
    leak->add_option("--k,--param", leak_k, "k for quantiles/buckets/top, percentage for threshold");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const auto out = gen_out.empty() ? output_root() / "instances" : fs::path(gen_out);
            const auto files = generate_instances(gen_seed, gen_count, parse_problem_kind(gen_kind), gen_size, out,
                                                  gen_lo, gen_hi);
            for (const auto& f : files) std::cout << f.string() << '\n';
            return 0;
        }
        if (*runx) {
            auto spec = load_experiment_spec(run_config);
            if (run_workers > 0) spec.workers = run_workers;
            const auto out = run_out.empty() ? output_root() / spec.name : fs::path(run_out);
            const auto report = run_experiment(spec, fs::path(run_config).parent_path(), out);
            std::cout << fmt::format("{} runs completed, {} failed; results in {}\n", report.runs_completed,
                                     report.failures.size(), out.string());
            for (const auto& f : report.failures)
                std::cerr << fmt::format("run failed: {} {} seed {}: {}\n", f.instance, f.config, f.seed, f.message);
            return report.ok() ? 0 : 2;
        }
        if (*ana) {
            const auto results = analyze_results(ana_dir, analysis_options(ana_config, ana_budget));
            for (const auto& ia : results) {
                std::cout << "instance " << ia.instance << '\n';
                for (const auto& ma : ia.metrics) {
                    std::cout << "  " << to_string(ma.kind) << " wins:";
                    for (std::size_t c = 0; c < ia.configs.size(); ++c)
                        std::cout << ' ' << ia.configs[c] << '=' << ma.matrix.wins[c];
                    std::cout << '\n';
                }
            }
            std::cout << "tables written to " << (fs::path(ana_dir) / "analysis").string() << '\n';
            return 0;
        }
        if (*plt) {
            const auto report = plot_results(plot_dir);
            for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
            std::cout << report.files.size() << " plot files written\n";
            return 0;
        }
        if (*leak) {
            std::cout << leakage_report(leakage_method(leak_method, leak_k), leak_iterations, leak_pop);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
