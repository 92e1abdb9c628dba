#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "privopt/problem.hpp"

namespace privopt {

inline constexpr double kSignificanceLevel = 0.05;

struct WilcoxonResult {
    double p_value = 1.0;
    /// Rank sums of positive and negative differences (mid-ranks on ties).
    double w_plus = 0;
    double w_minus = 0;
    /// Non-zero differences used.
    std::size_t n = 0;
    bool exact = false;
    /// All differences were zero.
    bool degenerate = false;
};

/// Two-sided signed-rank test. Zero differences are dropped; ties get mid-ranks.
/// Exact null distribution below 20 pairs, otherwise the normal approximation
/// with tie and continuity corrections.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs);

/// Mid-ranks of |diffs| for the non-zero entries, in input order.
std::vector<double> signed_rank_magnitudes(std::span<const double> diffs);

/// Matched-pairs rank-biserial correlation (R+ - R-)/(R+ + R-); 0 when all diffs are zero.
double rank_biserial(std::span<const double> diffs);

double median(std::vector<double> values);
/// Q3 - Q1 with linear interpolation between order statistics.
double interquartile_range(std::vector<double> values);
double quantile(std::vector<double> values, double q);

/// Last generation whose evaluations fit the time budget: floor(budget / t) - 1,
/// clamped to [0, max_generation].
std::size_t comparison_generation(double avg_eval_time, double budget, std::size_t max_generation);

struct ComparisonCell {
    double p_value = 1.0;
    double rank_biserial = 0;
    bool significant = false;
    std::size_t n_pairs = 0;
};

/// Metric values of one configuration keyed by seed.
struct ConfigSamples {
    std::string name;
    std::vector<std::pair<std::uint64_t, double>> by_seed;
};

struct WinMatrix {
    std::vector<std::string> configs;
    /// cells[x][y] compares row x against column y (diffs x - y); empty on the diagonal.
    std::vector<std::vector<std::optional<ComparisonCell>>> cells;
    std::vector<std::size_t> wins;
};

/// Pairs runs by seed, tests every ordered pair and counts significant wins in
/// the metric's better direction.
WinMatrix win_matrix(std::span<const ConfigSamples> samples, Direction better);

} // namespace privopt
