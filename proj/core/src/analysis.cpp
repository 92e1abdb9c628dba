#include "privopt/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include <fmt/core.h>

#include "privopt/instances.hpp"

namespace privopt {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

template <class T>
T parse_number(std::string_view s, std::size_t line)
{
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument(fmt::format("metrics.csv line {}: bad number '{}'", line, s));
    return value;
}

} // namespace

std::vector<MetricSample> parse_metrics_csv(std::string_view text)
{
    std::vector<MetricSample> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "generation,seed,metric,value,normalized")
                throw std::invalid_argument("metrics.csv: unexpected header");
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 5) throw std::invalid_argument(fmt::format("metrics.csv line {}: expected 5 fields", line_no));
        MetricSample s;
        s.generation = parse_number<std::size_t>(fields[0], line_no);
        s.seed = parse_number<std::uint64_t>(fields[1], line_no);
        s.kind = parse_metric_kind(fields[2]);
        s.value = parse_number<double>(fields[3], line_no);
        s.normalized = parse_number<int>(fields[4], line_no) != 0;
        out.push_back(s);
    }
    return out;
}

MetricSeries select_series(std::span<const MetricSample> samples, MetricKind kind, bool normalized)
{
    MetricSeries out;
    for (const auto& s : samples) {
        if (s.kind == kind && s.normalized == normalized) out[s.seed][s.generation] = s.value;
    }
    return out;
}

std::string format_win_table(const WinMatrix& matrix)
{
    const auto k = matrix.configs.size();
    std::string out = "config,wins";
    for (std::size_t y = 0; y + 1 < k; ++y) out += "," + matrix.configs[y];
    out += "\n";
    for (std::size_t x = 0; x < k; ++x) {
        out += fmt::format("{},{}", matrix.configs[x], matrix.wins[x]);
        for (std::size_t y = 0; y + 1 < k; ++y) {
            out += ",";
            if (y < x && matrix.cells[x][y]) {
                const auto& c = *matrix.cells[x][y];
                out += fmt::format("{:.3f}{}", c.rank_biserial, c.significant ? "*" : "");
            }
        }
        out += "\n";
    }
    return out;
}

namespace {

double value_at(const std::map<std::size_t, double>& run, std::size_t generation, const std::string& config,
                std::uint64_t seed)
{
    const auto it = run.find(generation);
    if (it == run.end())
        throw std::invalid_argument(
            fmt::format("config '{}' seed {} has no value at generation {}", config, seed, generation));
    return it->second;
}

std::vector<double> column(const MetricSeries& series, std::size_t generation, const std::string& config)
{
    std::vector<double> out;
    for (const auto& [seed, run] : series) out.push_back(value_at(run, generation, config, seed));
    return out;
}

std::string cells_csv(const WinMatrix& m)
{
    std::string out = "row,column,n_pairs,p_value,rank_biserial,significant\n";
    for (std::size_t x = 0; x < m.configs.size(); ++x) {
        for (std::size_t y = 0; y < m.configs.size(); ++y) {
            if (!m.cells[x][y]) continue;
            const auto& c = *m.cells[x][y];
            out += fmt::format("{},{},{},{},{},{}\n", m.configs[x], m.configs[y], c.n_pairs, c.p_value, c.rank_biserial,
                               c.significant ? 1 : 0);
        }
    }
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows)
{
    std::string out = "config,comparison_generation,initial_median,initial_iqr,final_median,final_iqr,"
                      "comparison_median,comparison_iqr\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", r.config, r.comparison_generation, r.initial_median,
                           r.initial_iqr, r.final_median, r.final_iqr, r.comparison_median, r.comparison_iqr);
    }
    return out;
}

} // namespace

std::vector<InstanceAnalysis> analyze_results(const fs::path& results_dir, const AnalysisOptions& options)
{
    const auto spec = load_experiment_spec(results_dir / "experiment.json");
    const double budget = options.budget.value_or(spec.budget);
    const auto times = options.eval_times.value_or(spec.eval_times);
    const auto max_generation = spec.algorithm.generations;

    std::vector<InstanceAnalysis> out;
    std::set<std::string> seen;
    for (const auto& entry : fs::directory_iterator(results_dir)) {
        if (entry.is_directory() && fs::exists(entry.path() / "instance.json")) seen.insert(entry.path().filename().string());
    }
    for (const auto& instance_name : seen) {
        const auto instance_dir = results_dir / instance_name;
        const auto instance = load_instance(instance_dir / "instance.json");
        InstanceAnalysis ia;
        ia.instance = instance_name;
        std::vector<std::vector<MetricSample>> samples;
        std::vector<std::string> missing;
        for (const auto& method : spec.obfuscations) {
            const auto label = config_label(method);
            const auto csv = instance_dir / label / "metrics.csv";
            if (!fs::exists(csv)) {
                missing.push_back(label);
                continue;
            }
            ia.configs.push_back(label);
            ia.comparison_generations.push_back(comparison_generation(times.for_method(method), budget, max_generation));
            samples.push_back(parse_metrics_csv(read_text_file(csv)));
        }
        if (!missing.empty()) {
            std::string list;
            for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
            throw std::invalid_argument(fmt::format("instance '{}' is missing results for: {}", instance_name, list));
        }

        const auto metrics = spec.metrics.empty() ? default_metrics(instance.kind) : spec.metrics;
        const auto analysis_dir = results_dir / "analysis" / instance_name;
        fs::create_directories(analysis_dir);
        std::string gens = "config,eval_time,comparison_generation\n";
        for (std::size_t c = 0; c < ia.configs.size(); ++c) {
            gens += fmt::format("{},{},{}\n", ia.configs[c], times.for_method(spec.obfuscations[c]),
                                ia.comparison_generations[c]);
        }
        write_text_file(analysis_dir / "comparison_generations.csv", gens);

        for (auto kind : metrics) {
            MetricAnalysis ma;
            ma.kind = kind;
            ma.better = metric_direction(kind, instance.direction(0));
            std::vector<ConfigSamples> at_comparison;
            for (std::size_t c = 0; c < ia.configs.size(); ++c) {
                const auto series = select_series(samples[c], kind, false);
                if (series.empty())
                    throw std::invalid_argument(
                        fmt::format("config '{}' has no {} values", ia.configs[c], to_string(kind)));
                ConfigSamples cs{ia.configs[c], {}};
                for (const auto& [seed, run] : series)
                    cs.by_seed.emplace_back(seed, value_at(run, ia.comparison_generations[c], ia.configs[c], seed));
                at_comparison.push_back(std::move(cs));

                const auto initial = column(series, 0, ia.configs[c]);
                const auto final_values = column(series, max_generation, ia.configs[c]);
                std::vector<double> comparison;
                for (const auto& [seed, v] : at_comparison.back().by_seed) comparison.push_back(v);
                ma.summary.push_back({ia.configs[c], ia.comparison_generations[c], median(initial),
                                      interquartile_range(initial), median(final_values),
                                      interquartile_range(final_values), median(comparison),
                                      interquartile_range(comparison)});
            }
            ma.matrix = win_matrix(at_comparison, ma.better);
            const std::string name(to_string(kind));
            write_text_file(analysis_dir / (name + "_wins.csv"), format_win_table(ma.matrix));
            write_text_file(analysis_dir / (name + "_cells.csv"), cells_csv(ma.matrix));
            write_text_file(analysis_dir / (name + "_summary.csv"), summary_csv(ma.summary));
            ia.metrics.push_back(std::move(ma));
        }
        out.push_back(std::move(ia));
    }
    return out;
}

} // namespace privopt
