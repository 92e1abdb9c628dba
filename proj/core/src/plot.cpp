#include "privopt/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <fmt/core.h>

#include "privopt/analysis.hpp"
#include "privopt/experiment.hpp"
#include "privopt/instances.hpp"
#include "privopt/stats.hpp"

namespace privopt {

namespace fs = std::filesystem;

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 80;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v)
    {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void settle()
    {
        if (!(lo <= hi)) lo = 0, hi = 1;
        if (lo == hi) lo -= 0.5, hi += 0.5;
        const double pad = (hi - lo) * 0.04;
        lo -= pad;
        hi += pad;
    }
};

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

class Canvas {
public:
    Canvas(Range x, Range y) : x_(x), y_(y) {}

    double px(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
    double py(double v) const { return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

    std::string frame(const std::string& title, const std::string& x_label, const std::string& y_label) const
    {
        std::string s = fmt::format(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
            "font-family=\"sans-serif\" font-size=\"11\">\n"
            "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
            kWidth, kHeight);
        s += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n", kWidth / 2,
                         escape(title));
        s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                         kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);
        for (int i = 0; i <= 4; ++i) {
            const double xv = x_.lo + (x_.hi - x_.lo) * i / 4.0;
            const double yv = y_.lo + (y_.hi - y_.lo) * i / 4.0;
            s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.4g}</text>\n", px(xv),
                             kHeight - kBottom + 15, xv);
            s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 5,
                             py(yv) + 4, yv);
        }
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", (kLeft + kWidth - kRight) / 2,
                         kHeight - 12, escape(x_label));
        s += fmt::format("<text x=\"14\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {0})\">{1}</text>\n",
                         (kTop + kHeight - kBottom) / 2, escape(y_label));
        return s;
    }

    std::string polyline(const Curve& c, const char* stroke, double width, double opacity) const
    {
        std::string points;
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (!std::isfinite(c.y[i])) continue;
            points += fmt::format("{}{:.2f},{:.2f}", points.empty() ? "" : " ", px(c.x[i]), py(c.y[i]));
        }
        return fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-opacity=\"{}\" "
                           "points=\"{}\"/>\n",
                           stroke, width, opacity, points);
    }

private:
    Range x_;
    Range y_;
};

} // namespace

std::string convergence_svg(const std::string& title, const std::string& y_label, const std::vector<Curve>& runs,
                            const Curve& median_curve)
{
    Range x, y;
    for (const auto* c : {&median_curve}) {
        for (double v : c->x) x.add(v);
        for (double v : c->y) y.add(v);
    }
    for (const auto& c : runs) {
        for (double v : c.x) x.add(v);
        for (double v : c.y) y.add(v);
    }
    x.settle();
    y.settle();
    const Canvas canvas(x, y);
    std::string s = canvas.frame(title, "generation", y_label);
    for (const auto& c : runs) s += canvas.polyline(c, "#888888", 0.6, 0.5);
    s += canvas.polyline(median_curve, "#c0392b", 2, 1);
    s += "</svg>\n";
    return s;
}

std::string scatter_svg(const std::string& title, const std::vector<ObjectiveVector>& result,
                        const std::vector<ObjectiveVector>& truth)
{
    Range x, y;
    for (const auto* set : {&result, &truth}) {
        for (const auto& p : *set) {
            if (p.size() < 2) throw std::invalid_argument("scatter plots need two objectives");
            x.add(p[0]);
            y.add(p[1]);
        }
    }
    x.settle();
    y.settle();
    const Canvas canvas(x, y);
    std::string s = canvas.frame(title, "objective 1", "objective 2");
    for (const auto& p : truth) {
        s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"none\" stroke=\"#2c7fb8\"/>\n",
                         canvas.px(p[0]), canvas.py(p[1]));
    }
    for (const auto& p : result) {
        s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"#c0392b\"/>\n", canvas.px(p[0]),
                         canvas.py(p[1]));
    }
    s += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"#2c7fb8\">o ground truth</text>\n", kLeft + 8, kTop + 14);
    s += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"#c0392b\">&#8226; result set</text>\n", kLeft + 8, kTop + 28);
    s += "</svg>\n";
    return s;
}

namespace {

Curve median_of(const MetricSeries& series)
{
    std::map<std::size_t, std::vector<double>> by_generation;
    for (const auto& [seed, run] : series) {
        for (const auto& [g, v] : run) by_generation[g].push_back(v);
    }
    Curve c;
    for (auto& [g, values] : by_generation) {
        c.x.push_back(static_cast<double>(g));
        c.y.push_back(median(std::move(values)));
    }
    return c;
}

// Seed whose final value is the lower median of the final values.
std::uint64_t median_seed(const MetricSeries& series)
{
    std::vector<std::pair<double, std::uint64_t>> finals;
    for (const auto& [seed, run] : series) {
        if (!run.empty()) finals.emplace_back(run.rbegin()->second, seed);
    }
    if (finals.empty()) throw std::invalid_argument("no runs to choose a median from");
    std::sort(finals.begin(), finals.end());
    return finals[(finals.size() - 1) / 2].second;
}

} // namespace

PlotReport plot_results(const fs::path& results_dir)
{
    PlotReport report;
    if (!fs::exists(results_dir / "experiment.json")) {
        if (!fs::exists(results_dir) || fs::is_empty(results_dir)) {
            report.warnings.push_back(fmt::format("'{}' holds no results; nothing plotted", results_dir.string()));
            return report;
        }
        throw std::invalid_argument(fmt::format("'{}' has no experiment.json", results_dir.string()));
    }
    const auto spec = load_experiment_spec(results_dir / "experiment.json");
    std::set<std::string> instance_dirs;
    for (const auto& entry : fs::directory_iterator(results_dir)) {
        if (entry.is_directory() && fs::exists(entry.path() / "instance.json"))
            instance_dirs.insert(entry.path().filename().string());
    }
    if (instance_dirs.empty()) {
        report.warnings.push_back("experiment has no instance results; nothing plotted");
        return report;
    }

    std::vector<std::string> missing;
    for (const auto& name : instance_dirs) {
        for (const auto& m : spec.obfuscations) {
            const auto csv = results_dir / name / config_label(m) / "metrics.csv";
            if (!fs::exists(csv) || parse_metrics_csv(read_text_file(csv)).empty())
                missing.push_back(name + "/" + config_label(m));
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw std::invalid_argument(fmt::format("no data for: {}", list));
    }

    for (const auto& name : instance_dirs) {
        const auto instance = load_instance(results_dir / name / "instance.json");
        const auto out_dir = results_dir / "plots" / name;
        fs::create_directories(out_dir);
        const auto metrics = spec.metrics.empty() ? default_metrics(instance.kind) : spec.metrics;
        for (const auto& m : spec.obfuscations) {
            const auto label = config_label(m);
            const auto samples = parse_metrics_csv(read_text_file(results_dir / name / label / "metrics.csv"));
            for (auto kind : metrics) {
                const auto series = select_series(samples, kind, false);
                if (series.empty()) continue;
                std::vector<Curve> runs;
                for (const auto& [seed, run] : series) {
                    Curve c;
                    for (const auto& [g, v] : run) {
                        c.x.push_back(static_cast<double>(g));
                        c.y.push_back(v);
                    }
                    runs.push_back(std::move(c));
                }
                const auto path = out_dir / fmt::format("convergence_{}_{}.svg", to_string(kind), label);
                write_text_file(path, convergence_svg(fmt::format("{} {}: {}", name, label, to_string(kind)),
                                                      std::string(to_string(kind)), runs, median_of(series)));
                report.files.push_back(path);
            }
            if (instance.objective_count() == 2 && instance.ground_truth) {
                const auto series = select_series(samples, MetricKind::IGDPlus, false);
                if (series.empty()) continue;
                const auto seed = median_seed(series);
                const auto trace =
                    deserialize_trace(read_text_file(results_dir / name / label / fmt::format("seed_{}.json", seed)));
                const auto path = out_dir / fmt::format("scatter_{}.svg", label);
                write_text_file(path, scatter_svg(fmt::format("{} {}: seed {} generation {}", name, label, seed,
                                                              trace.records.back().generation),
                                                  trace.records.back().result_fitness, instance.ground_truth->points));
                report.files.push_back(path);
            }
        }
    }
    return report;
}

} // namespace privopt
