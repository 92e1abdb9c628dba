#include "privopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace privopt {

std::string_view to_string(MetricKind kind)
{
    switch (kind) {
    case MetricKind::RelativeError: return "relative_error";
    case MetricKind::MeanFitness: return "mean_fitness";
    case MetricKind::GDPlus: return "gd_plus";
    case MetricKind::IGDPlus: return "igd_plus";
    }
    return "?";
}

MetricKind parse_metric_kind(std::string_view s)
{
    for (auto k : {MetricKind::RelativeError, MetricKind::MeanFitness, MetricKind::GDPlus, MetricKind::IGDPlus}) {
        if (s == to_string(k)) return k;
    }
    throw std::invalid_argument(fmt::format("unknown metric '{}'", s));
}

Direction metric_direction(MetricKind kind, Direction problem_direction)
{
    if (kind == MetricKind::MeanFitness) return problem_direction;
    return Direction::Minimize;
}

double relative_error(double f, double f_star, Direction direction)
{
    if (f_star == 0) throw std::invalid_argument("relative error undefined for f* = 0");
    return direction == Direction::Maximize ? (f_star - f) / f_star : (f - f_star) / f_star;
}

double normalize(double f, double ideal, double nadir)
{
    if (ideal == nadir) throw std::invalid_argument("normalize: ideal equals nadir");
    return (ideal - f) / (ideal - nadir);
}

double mean(std::span<const double> values)
{
    if (values.empty()) throw std::invalid_argument("mean of an empty set");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double modified_distance(std::span<const double> a, std::span<const double> z)
{
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double gap = std::max(z[i] - a[i], 0.0);
        sum += gap * gap;
    }
    return std::sqrt(sum);
}

namespace {

// Normalized points are mapped to 1 - f~ so that larger stays better.
std::vector<ObjectiveVector> oriented(std::span<const ObjectiveVector> points, const GroundTruthSet& truth,
                                      bool normalized)
{
    std::vector<ObjectiveVector> out(points.begin(), points.end());
    if (!normalized) return out;
    for (auto& p : out) {
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = 1.0 - normalize(p[i], truth.ideal[i], truth.nadir[i]);
    }
    return out;
}

double mean_nearest(const std::vector<ObjectiveVector>& from, const std::vector<ObjectiveVector>& to,
                    bool from_is_solution)
{
    double total = 0;
    for (const auto& x : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& y : to) {
            best = std::min(best, from_is_solution ? modified_distance(x, y) : modified_distance(y, x));
        }
        total += best;
    }
    return total / static_cast<double>(from.size());
}

void check_inputs(std::span<const ObjectiveVector> found, const GroundTruthSet& truth)
{
    if (found.empty()) throw std::invalid_argument("no solutions to measure");
    if (truth.points.empty()) throw std::invalid_argument("empty ground truth");
}

} // namespace

double gd_plus(std::span<const ObjectiveVector> found, const GroundTruthSet& truth, bool normalized)
{
    check_inputs(found, truth);
    return mean_nearest(oriented(found, truth, normalized), oriented(truth.points, truth, normalized), true);
}

double igd_plus(std::span<const ObjectiveVector> found, const GroundTruthSet& truth, bool normalized)
{
    check_inputs(found, truth);
    return mean_nearest(oriented(truth.points, truth, normalized), oriented(found, truth, normalized), false);
}

} // namespace privopt
