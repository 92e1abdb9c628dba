#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "privopt/problem.hpp"

namespace privopt {

/// Uniform integer weights in [lo, hi]; n_obj == 1 gives an AP, 2 a MOAP.
/// Deterministic in `seed`.
ProblemInstance generate_ap_instance(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t n_obj,
                                     Weight lo, Weight hi);

struct Point2 {
    double x = 0;
    double y = 0;
};

/// TSPLIB EUC_2D distance: nint(sqrt(dx^2 + dy^2)).
Weight euc2d_distance(Point2 a, Point2 b);

ProblemInstance tsp_from_coordinates(std::string name, std::span<const Point2> nodes);

/// Random integer coordinates in [0, extent]^2.
ProblemInstance generate_euclidean_tsp(std::uint64_t seed, std::size_t n, double extent = 1000.0);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// TYPE: TSP with EDGE_WEIGHT_TYPE: EUC_2D and a NODE_COORD_SECTION, terminated by EOF.
/// The known optimum is attached when the NAME is in the bundled registry.
ProblemInstance parse_tsplib(std::string_view text);

/// Optimal tour lengths of well-known symmetric TSPLIB instances.
std::optional<double> tsplib_known_optimum(std::string_view name);

std::string serialize_instance(const ProblemInstance& instance);
ProblemInstance deserialize_instance(std::string_view text);

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path);

/// Loads `.json` instance documents and `.tsp` TSPLIB files.
ProblemInstance load_instance(const std::filesystem::path& path);

} // namespace privopt
