#pragma once

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "privopt/problem.hpp"

namespace privopt {

struct Assignment {
    Permutation solution;
    double value = 0;
};

/// Maximum-weight perfect assignment on a dense n x n real matrix (row-major),
/// Kuhn-Munkres with potentials, O(n^3).
Assignment solve_assignment(std::span<const double> weights, std::size_t n);

/// Exact AP optimum. Requires a square, maximized matrix.
Assignment solve_ap_exact(const WeightMatrix& matrix);

inline constexpr std::size_t kBruteForceLimit = 10;

using BruteForceResult = std::variant<Assignment, std::vector<ObjectiveVector>>;

/// Enumerates all n! permutations (n <= 10). Single-objective instances yield the
/// optimum (first found on ties); MOAP yields the exact Pareto front.
BruteForceResult brute_force_optimum(const ProblemInstance& instance);

/// Min-max scaling of a matrix to [0, 1]; a constant matrix maps to all zeros.
std::vector<double> min_max_normalized(const WeightMatrix& matrix);

/// Supported Pareto points of a MOAP from 101 weighted scalarizations.
GroundTruthSet compute_ground_truth(const ProblemInstance& instance);

} // namespace privopt
