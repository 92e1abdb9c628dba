#include "privopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "privopt/exact.hpp"
#include "privopt/instances.hpp"

namespace privopt {

using nlohmann::json;
namespace fs = std::filesystem;

double EvaluationTimes::for_method(const ObfuscationMethod& method) const
{
    switch (method.kind) {
    case ObfuscationKind::None: return none;
    case ObfuscationKind::Order: return order;
    case ObfuscationKind::OrderQuantiles: return quantiles;
    case ObfuscationKind::FitnessBuckets: return buckets;
    case ObfuscationKind::TopIndividuals: return top;
    case ObfuscationKind::AboveThreshold: return threshold;
    }
    return none;
}

std::vector<ObfuscationMethod> default_obfuscations()
{
    return {
        ObfuscationMethod::none(),        ObfuscationMethod::buckets(20),   ObfuscationMethod::buckets(10),
        ObfuscationMethod::buckets(5),    ObfuscationMethod::threshold(95), ObfuscationMethod::threshold(90),
        ObfuscationMethod::threshold(80), ObfuscationMethod::order(),       ObfuscationMethod::quantiles(20),
        ObfuscationMethod::quantiles(10), ObfuscationMethod::quantiles(5),  ObfuscationMethod::top(15),
        ObfuscationMethod::top(30),       ObfuscationMethod::top(60),
    };
}

std::vector<std::uint64_t> default_seeds()
{
    std::vector<std::uint64_t> seeds(31);
    for (std::uint64_t s = 0; s < seeds.size(); ++s) seeds[s] = s;
    return seeds;
}

void ExperimentSpec::validate() const
{
    if (seeds.empty()) throw std::invalid_argument("experiment needs at least one seed");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
        throw std::invalid_argument("experiment seeds must be distinct");
    if (obfuscations.empty()) throw std::invalid_argument("experiment needs at least one obfuscation configuration");
    std::set<std::string> labels;
    for (const auto& m : obfuscations) {
        m.validate();
        if (!labels.insert(config_label(m)).second)
            throw std::invalid_argument(fmt::format("duplicate configuration {}", config_label(m)));
    }
    if (obfuscated_objectives.empty()) throw std::invalid_argument("no obfuscated objective selected");
    if (!(budget > 0)) throw std::invalid_argument("time budget must be positive");
    if (workers < 1) throw std::invalid_argument("at least one worker");
    algorithm.validate();
}

std::vector<MetricKind> default_metrics(ProblemKind kind)
{
    if (kind == ProblemKind::MOAP) return {MetricKind::GDPlus, MetricKind::IGDPlus};
    return {MetricKind::MeanFitness};
}

ObfuscationPlan make_plan(const ObfuscationMethod& method, std::span<const std::size_t> obfuscated_objectives,
                          std::size_t objective_count)
{
    ObfuscationPlan plan{std::vector<ObfuscationMethod>(objective_count)};
    for (auto obj : obfuscated_objectives) {
        if (obj >= objective_count) throw std::invalid_argument(fmt::format("objective {} does not exist", obj));
        plan.methods[obj] = method;
    }
    return plan;
}

std::string config_label(const ObfuscationMethod& method)
{
    return to_string(method);
}

namespace {

json config_to_json(const EAConfig& c)
{
    return json{{"algorithm", to_string(c.algorithm)},
                {"mu", c.mu},
                {"kappa", c.kappa},
                {"generations", c.generations},
                {"tournament_size", c.tournament_size},
                {"crossover", to_string(c.crossover)},
                {"crossover_prob", c.crossover_prob},
                {"mutation", to_string(c.mutation)},
                {"mutation_prob", c.mutation_prob},
                {"reevaluate_parents", c.reevaluate_parents}};
}

EAConfig config_from_json(const json& j, EAConfig base)
{
    if (j.contains("algorithm")) base.algorithm = parse_algorithm(j["algorithm"].get<std::string>());
    if (j.contains("mu")) base.mu = j["mu"].get<std::size_t>();
    if (j.contains("kappa")) base.kappa = j["kappa"].get<std::size_t>();
    if (j.contains("generations")) base.generations = j["generations"].get<std::size_t>();
    if (j.contains("tournament_size")) base.tournament_size = j["tournament_size"].get<std::size_t>();
    if (j.contains("crossover")) base.crossover = parse_crossover(j["crossover"].get<std::string>());
    if (j.contains("crossover_prob")) base.crossover_prob = j["crossover_prob"].get<double>();
    if (j.contains("mutation")) base.mutation = parse_mutation(j["mutation"].get<std::string>());
    if (j.contains("mutation_prob")) base.mutation_prob = j["mutation_prob"].get<double>();
    if (j.contains("reevaluate_parents")) base.reevaluate_parents = j["reevaluate_parents"].get<bool>();
    return base;
}

EAConfig preset(std::string_view name)
{
    if (name == "ga-ap") return EAConfig::ga_assignment();
    if (name == "ga-tsp") return EAConfig::ga_tsp();
    if (name == "nsga2-moap") return EAConfig::nsga2_moap();
    throw std::invalid_argument(fmt::format("unknown preset '{}'", name));
}

std::string_view genome_recording_name(GenomeRecording g)
{
    switch (g) {
    case GenomeRecording::None: return "none";
    case GenomeRecording::Endpoints: return "endpoints";
    case GenomeRecording::All: return "all";
    }
    return "endpoints";
}

GenomeRecording parse_genome_recording(std::string_view s)
{
    if (s == "none") return GenomeRecording::None;
    if (s == "endpoints") return GenomeRecording::Endpoints;
    if (s == "all") return GenomeRecording::All;
    throw std::invalid_argument(fmt::format("unknown genome recording '{}'", s));
}

json times_to_json(const EvaluationTimes& t)
{
    return json{{"none", t.none},   {"buckets", t.buckets},     {"threshold", t.threshold},
                {"order", t.order}, {"quantiles", t.quantiles}, {"top", t.top}};
}

EvaluationTimes times_from_json(const json& j)
{
    EvaluationTimes t;
    if (j.contains("none")) t.none = j["none"].get<double>();
    if (j.contains("buckets")) t.buckets = j["buckets"].get<double>();
    if (j.contains("threshold")) t.threshold = j["threshold"].get<double>();
    if (j.contains("order")) t.order = j["order"].get<double>();
    if (j.contains("quantiles")) t.quantiles = j["quantiles"].get<double>();
    if (j.contains("top")) t.top = j["top"].get<double>();
    return t;
}

std::vector<std::vector<Gene>> genomes_to_arrays(const std::vector<Permutation>& genomes)
{
    std::vector<std::vector<Gene>> out;
    out.reserve(genomes.size());
    for (const auto& g : genomes) out.push_back(g.values());
    return out;
}

std::vector<Permutation> arrays_to_genomes(const json& j)
{
    std::vector<Permutation> out;
    for (const auto& a : j) out.emplace_back(a.get<std::vector<Gene>>());
    return out;
}

} // namespace

ExperimentSpec parse_experiment_spec(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(fmt::format("experiment spec: {}", e.what()));
    }
    try {
        ExperimentSpec spec;
        spec.seeds = default_seeds();
        if (j.contains("name")) spec.name = j["name"].get<std::string>();
        spec.instances = j.at("instances").get<std::vector<std::string>>();
        if (j.contains("algorithm")) {
            const auto& a = j["algorithm"];
            if (a.is_string()) {
                spec.preset = a.get<std::string>();
                spec.algorithm = preset(spec.preset);
            } else {
                if (a.contains("preset")) spec.preset = a["preset"].get<std::string>();
                spec.algorithm = config_from_json(a, spec.preset.empty() ? EAConfig{} : preset(spec.preset));
            }
        }
        if (j.contains("generations")) spec.algorithm.generations = j["generations"].get<std::size_t>();
        if (j.contains("obfuscations")) {
            spec.obfuscations.clear();
            for (const auto& token : j["obfuscations"]) spec.obfuscations.push_back(parse_obfuscation(token.get<std::string>()));
        }
        if (j.contains("obfuscated_objectives"))
            spec.obfuscated_objectives = j["obfuscated_objectives"].get<std::vector<std::size_t>>();
        if (j.contains("seeds")) {
            const auto& s = j["seeds"];
            if (s.is_object()) {
                const auto from = s.value("from", std::uint64_t{0});
                const auto count = s.at("count").get<std::uint64_t>();
                spec.seeds.clear();
                for (std::uint64_t i = 0; i < count; ++i) spec.seeds.push_back(from + i);
            } else {
                spec.seeds = s.get<std::vector<std::uint64_t>>();
            }
        }
        if (j.contains("eval_times")) spec.eval_times = times_from_json(j["eval_times"]);
        if (j.contains("budget")) spec.budget = j["budget"].get<double>();
        if (j.contains("metrics")) {
            for (const auto& m : j["metrics"]) spec.metrics.push_back(parse_metric_kind(m.get<std::string>()));
        }
        if (j.contains("workers")) spec.workers = j["workers"].get<std::size_t>();
        if (j.contains("genomes")) spec.genomes = parse_genome_recording(j["genomes"].get<std::string>());
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        throw std::invalid_argument(fmt::format("experiment spec: {}", e.what()));
    }
}

std::string serialize_experiment_spec(const ExperimentSpec& spec)
{
    json j;
    j["name"] = spec.name;
    j["instances"] = spec.instances;
    auto algo = config_to_json(spec.algorithm);
    if (!spec.preset.empty()) algo["preset"] = spec.preset;
    j["algorithm"] = algo;
    j["obfuscations"] = json::array();
    for (const auto& m : spec.obfuscations) j["obfuscations"].push_back(config_label(m));
    j["obfuscated_objectives"] = spec.obfuscated_objectives;
    j["seeds"] = spec.seeds;
    j["eval_times"] = times_to_json(spec.eval_times);
    j["budget"] = spec.budget;
    j["metrics"] = json::array();
    for (auto m : spec.metrics) j["metrics"].push_back(to_string(m));
    j["workers"] = spec.workers;
    j["genomes"] = genome_recording_name(spec.genomes);
    return j.dump(2) + "\n";
}

std::string read_text_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const fs::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

ExperimentSpec load_experiment_spec(const fs::path& path)
{
    return parse_experiment_spec(read_text_file(path));
}

std::string serialize_trace(const RunTrace& trace)
{
    json j;
    j["seed"] = trace.seed;
    j["instance"] = trace.instance_name;
    j["config"] = config_to_json(trace.config);
    j["plan"] = json::array();
    for (const auto& m : trace.plan.methods) j["plan"].push_back(config_label(m));
    j["initial_population"] = genomes_to_arrays(trace.initial_population);
    j["records"] = json::array();
    for (const auto& r : trace.records) {
        json rec{{"generation", r.generation},
                 {"evaluated", r.evaluated},
                 {"best_actual", r.best_actual},
                 {"result_fitness", r.result_fitness}};
        if (!r.result_genomes.empty()) rec["result_genomes"] = genomes_to_arrays(r.result_genomes);
        rec["metrics"] = json::array();
        for (const auto& m : r.metrics) {
            rec["metrics"].push_back({{"kind", to_string(m.kind)}, {"value", m.value}, {"normalized", m.normalized}});
        }
        j["records"].push_back(std::move(rec));
    }
    return j.dump() + "\n";
}

RunTrace deserialize_trace(std::string_view text)
{
    try {
        const auto j = json::parse(text);
        RunTrace t;
        t.seed = j.at("seed").get<std::uint64_t>();
        t.instance_name = j.at("instance").get<std::string>();
        t.config = config_from_json(j.at("config"), EAConfig{});
        for (const auto& m : j.at("plan")) t.plan.methods.push_back(parse_obfuscation(m.get<std::string>()));
        t.initial_population = arrays_to_genomes(j.at("initial_population"));
        for (const auto& rj : j.at("records")) {
            GenerationRecord r;
            r.generation = rj.at("generation").get<std::size_t>();
            r.evaluated = rj.at("evaluated").get<std::size_t>();
            r.best_actual = rj.at("best_actual").get<ObjectiveVector>();
            r.result_fitness = rj.at("result_fitness").get<std::vector<ObjectiveVector>>();
            if (rj.contains("result_genomes")) r.result_genomes = arrays_to_genomes(rj["result_genomes"]);
            for (const auto& mj : rj.at("metrics")) {
                r.metrics.push_back({parse_metric_kind(mj.at("kind").get<std::string>()), mj.at("value").get<double>(),
                                     mj.at("normalized").get<bool>()});
            }
            t.records.push_back(std::move(r));
        }
        return t;
    } catch (const json::exception& e) {
        throw std::invalid_argument(fmt::format("trace document: {}", e.what()));
    }
}

namespace {

struct Job {
    std::size_t instance;
    std::size_t config;
    std::uint64_t seed;
};

std::string metric_rows(const RunTrace& trace)
{
    std::string out;
    for (const auto& r : trace.records) {
        for (const auto& m : r.metrics) {
            out += fmt::format("{},{},{},{},{}\n", r.generation, trace.seed, to_string(m.kind), m.value,
                               m.normalized ? 1 : 0);
        }
    }
    return out;
}

} // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec, const fs::path& spec_dir, const fs::path& out_dir)
{
    spec.validate();
    fs::create_directories(out_dir);

    std::vector<ProblemInstance> instances;
    std::vector<std::string> instance_dirs;
    for (const auto& ref : spec.instances) {
        fs::path p(ref);
        if (p.is_relative()) p = spec_dir / p;
        instances.push_back(load_instance(p));
        instance_dirs.push_back(instances.back().name);
    }
    if (std::set<std::string>(instance_dirs.begin(), instance_dirs.end()).size() != instance_dirs.size())
        throw std::invalid_argument("instance names must be unique within an experiment");

    write_text_file(out_dir / "experiment.json", serialize_experiment_spec(spec));
    for (std::size_t i = 0; i < instances.size(); ++i) {
        fs::create_directories(out_dir / instance_dirs[i]);
        save_instance(instances[i], out_dir / instance_dirs[i] / "instance.json");
        for (const auto& m : spec.obfuscations) fs::create_directories(out_dir / instance_dirs[i] / config_label(m));
    }

    std::vector<Job> jobs;
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (std::size_t c = 0; c < spec.obfuscations.size(); ++c)
            for (auto seed : spec.seeds) jobs.push_back({i, c, seed});

    std::vector<std::string> rows(jobs.size());
    std::vector<char> done(jobs.size(), 0);
    ExperimentReport report;
    std::mutex failures_mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (auto k = next++; k < jobs.size(); k = next++) {
            const auto& job = jobs[k];
            const auto& inst = instances[job.instance];
            const auto& method = spec.obfuscations[job.config];
            try {
                const auto plan = make_plan(method, spec.obfuscated_objectives, inst.objective_count());
                const auto trace = run(inst, spec.algorithm, plan, job.seed, TraceOptions{spec.genomes});
                const auto dir = out_dir / instance_dirs[job.instance] / config_label(method);
                write_text_file(dir / fmt::format("seed_{}.json", job.seed), serialize_trace(trace));
                rows[k] = metric_rows(trace);
                done[k] = 1;
            } catch (const std::exception& e) {
                std::lock_guard lock(failures_mutex);
                report.failures.push_back({instance_dirs[job.instance], config_label(method), job.seed, e.what()});
            }
        }
    };
    const auto thread_count = std::min(spec.workers, std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < thread_count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // Per (instance, config) CSV, seeds in spec order.
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (std::size_t c = 0; c < spec.obfuscations.size(); ++c) {
            std::string csv = "generation,seed,metric,value,normalized\n";
            for (std::size_t k = 0; k < jobs.size(); ++k) {
                if (jobs[k].instance == i && jobs[k].config == c && done[k]) csv += rows[k];
            }
            write_text_file(out_dir / instance_dirs[i] / config_label(spec.obfuscations[c]) / "metrics.csv", csv);
        }
    }
    report.runs_completed = static_cast<std::size_t>(std::count(done.begin(), done.end(), 1));
    const auto errors_path = out_dir / "errors.csv";
    if (!report.failures.empty()) {
        std::sort(report.failures.begin(), report.failures.end(), [](const RunFailure& a, const RunFailure& b) {
            return std::tie(a.instance, a.config, a.seed) < std::tie(b.instance, b.config, b.seed);
        });
        std::string csv = "instance,config,seed,message\n";
        for (const auto& f : report.failures) {
            std::string msg = f.message;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            csv += fmt::format("{},{},{},{}\n", f.instance, f.config, f.seed, msg);
        }
        write_text_file(errors_path, csv);
    } else if (fs::exists(errors_path)) {
        fs::remove(errors_path);
    }
    return report;
}

std::vector<fs::path> generate_instances(std::uint64_t seed, std::size_t count, ProblemKind kind, std::size_t size,
                                         const fs::path& out_dir, Weight lo, Weight hi)
{
    if (size < 2) throw std::invalid_argument("instance size must be at least 2");
    std::vector<fs::path> written;
    if (count == 0) return written;
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < count; ++i) {
        const auto s = seed + i;
        ProblemInstance inst;
        switch (kind) {
        case ProblemKind::AP:
            inst = generate_ap_instance(s, size, size, 1, lo, hi);
            inst.known_optimum = std::vector<double>{solve_ap_exact(inst.objectives[0]).value};
            break;
        case ProblemKind::MOAP:
            inst = generate_ap_instance(s, size, size, 2, lo, hi);
            inst.ground_truth = compute_ground_truth(inst);
            break;
        case ProblemKind::TSP:
            inst = generate_euclidean_tsp(s, size);
            if (size <= kBruteForceLimit) {
                inst.known_optimum = std::vector<double>{std::get<Assignment>(brute_force_optimum(inst)).value};
            }
            break;
        }
        inst.name = fmt::format("{}{}_{:03}", kind == ProblemKind::TSP ? "tsp" : (kind == ProblemKind::AP ? "ap" : "moap"),
                                size, i);
        const auto path = out_dir / (inst.name + ".json");
        save_instance(inst, path);
        written.push_back(path);
    }
    return written;
}

std::string leakage_report(const ObfuscationMethod& method, std::uint64_t iterations, std::uint64_t pop_size)
{
    const auto est = leakage_estimate(iterations, pop_size, method);
    std::string out = fmt::format("method: {}\niterations: {}\npopulation size: {}\n", config_label(method), iterations,
                                  pop_size);
    if (!est.closed_form) {
        out += "no closed-form bound: group sizes vary from population to population\n";
    } else {
        out += fmt::format("equations: {}\n", est.equations);
        out += fmt::format("inequations within populations: {}\n", est.inequations_within);
        if (method.kind == ObfuscationKind::Order)
            out += fmt::format("inequations across populations: {}\n", est.inequations_across);
        out += fmt::format("inequations total: {}\n", est.inequations());
        if (est.approximate) out += "note: population size not divisible by k; groups are uneven\n";
    }
    out += fmt::format("assumption: {}\n", est.assumptions);
    return out;
}

} // namespace privopt
