#pragma once

#include <span>
#include <string_view>

#include "privopt/problem.hpp"

namespace privopt {

enum class MetricKind { RelativeError, MeanFitness, GDPlus, IGDPlus };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view s);

/// Smaller is better for every kind except MeanFitness on maximized problems.
Direction metric_direction(MetricKind kind, Direction problem_direction);

struct MetricValue {
    MetricKind kind = MetricKind::MeanFitness;
    double value = 0;
    bool normalized = false;
};

/// (f* - f)/f* when maximizing, (f - f*)/f* when minimizing.
double relative_error(double f, double f_star, Direction direction);

/// 0 at the ideal value, 1 at the nadir value, linear in between.
double normalize(double f, double ideal, double nadir);

double mean(std::span<const double> values);

/// Dominance-aware distance from solution `a` to reference `z` with all objectives
/// maximized: sqrt(sum_i max(z_i - a_i, 0)^2).
double modified_distance(std::span<const double> a, std::span<const double> z);

/// Mean over found points of the distance to the nearest ground-truth point.
double gd_plus(std::span<const ObjectiveVector> found, const GroundTruthSet& truth, bool normalized);

/// Mean over ground-truth points of the distance to the nearest found point.
double igd_plus(std::span<const ObjectiveVector> found, const GroundTruthSet& truth, bool normalized);

} // namespace privopt
