#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "privopt/experiment.hpp"
#include "privopt/stats.hpp"

namespace privopt {

/// One row of a metrics.csv file.
struct MetricSample {
    std::size_t generation = 0;
    std::uint64_t seed = 0;
    MetricKind kind = MetricKind::MeanFitness;
    double value = 0;
    bool normalized = false;
};

std::vector<MetricSample> parse_metrics_csv(std::string_view text);

/// Values of one metric series: series[seed][generation].
using MetricSeries = std::map<std::uint64_t, std::map<std::size_t, double>>;

MetricSeries select_series(std::span<const MetricSample> samples, MetricKind kind, bool normalized);

struct SummaryRow {
    std::string config;
    std::size_t comparison_generation = 0;
    double initial_median = 0;
    double initial_iqr = 0;
    double final_median = 0;
    double final_iqr = 0;
    double comparison_median = 0;
    double comparison_iqr = 0;
};

struct MetricAnalysis {
    MetricKind kind = MetricKind::MeanFitness;
    Direction better = Direction::Maximize;
    WinMatrix matrix;
    std::vector<SummaryRow> summary;
};

struct InstanceAnalysis {
    std::string instance;
    std::vector<std::string> configs;
    std::vector<std::size_t> comparison_generations;
    std::vector<MetricAnalysis> metrics;
};

struct AnalysisOptions {
    std::optional<double> budget;
    std::optional<EvaluationTimes> eval_times;
};

/// Compares configurations at their comparison generations and writes, per
/// instance, into <results>/analysis/<instance>/:
///   comparison_generations.csv
///   <metric>_wins.csv      lower-triangular rank-biserial table, '*' marks significance
///   <metric>_cells.csv     every ordered pair
///   <metric>_summary.csv   median/IQR at generation 0, the final and the comparison generation
/// Throws std::invalid_argument when configurations were run on different seeds.
std::vector<InstanceAnalysis> analyze_results(const std::filesystem::path& results_dir,
                                              const AnalysisOptions& options = {});

/// Rendering of the lower-triangular table.
std::string format_win_table(const WinMatrix& matrix);

} // namespace privopt
