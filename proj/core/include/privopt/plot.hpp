#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "privopt/metrics.hpp"
#include "privopt/problem.hpp"

namespace privopt {

struct Curve {
    std::vector<double> x;
    std::vector<double> y;
};

/// Line chart: thin grey individual curves with the median curve on top.
std::string convergence_svg(const std::string& title, const std::string& y_label, const std::vector<Curve>& runs,
                            const Curve& median_curve);

/// Scatter of a result set over the ground-truth front.
std::string scatter_svg(const std::string& title, const std::vector<ObjectiveVector>& result,
                        const std::vector<ObjectiveVector>& truth);

struct PlotReport {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
};

/// Writes <results>/plots/<instance>/convergence_<metric>_<config>.svg for every
/// configuration, plus scatter_<config>.svg (final-generation result set of the
/// median-IGD+ run) for multi-objective instances. An empty results directory
/// yields a warning and no files; configurations without data raise an error
/// naming all of them.
PlotReport plot_results(const std::filesystem::path& results_dir);

} // namespace privopt
