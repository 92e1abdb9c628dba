#include "privopt/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace privopt {

Assignment solve_assignment(std::span<const double> weights, std::size_t n)
{
    if (n == 0 || weights.size() != n * n) throw std::invalid_argument("solve_assignment: expected a square matrix");
    constexpr double inf = std::numeric_limits<double>::infinity();

    // Shortest augmenting path on costs -w; 1-based with a virtual column 0.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = -weights[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<Gene> mapping(n);
    for (std::size_t j = 1; j <= n; ++j) mapping[p[j] - 1] = static_cast<Gene>(j - 1);
    Assignment out{Permutation(std::move(mapping)), 0.0};
    for (std::size_t i = 0; i < n; ++i) out.value += weights[i * n + out.solution[i]];
    return out;
}

Assignment solve_ap_exact(const WeightMatrix& matrix)
{
    if (!matrix.square()) {
        throw std::invalid_argument(fmt::format("solve_ap_exact: matrix is {}x{}", matrix.rows(), matrix.cols()));
    }
    if (matrix.direction() != Direction::Maximize) throw std::invalid_argument("solve_ap_exact: expects maximization");
    const auto n = matrix.rows();
    std::vector<double> w(matrix.entries().begin(), matrix.entries().end());
    auto result = solve_assignment(w, n);
    result.value = static_cast<double>(assignment_value(matrix, result.solution));
    return result;
}

BruteForceResult brute_force_optimum(const ProblemInstance& instance)
{
    const auto n = instance.rows();
    if (n > kBruteForceLimit) {
        throw std::length_error(fmt::format("brute force refuses n = {} (limit {})", n, kBruteForceLimit));
    }
    if (instance.cols() != n) throw std::invalid_argument("brute force needs a square instance");
    auto perm = Permutation::identity(n);

    if (instance.objective_count() == 1) {
        const bool maximize = instance.direction(0) == Direction::Maximize;
        Assignment best{perm, evaluate(instance, 0, perm)};
        while (std::next_permutation(perm.begin(), perm.end())) {
            const double f = evaluate(instance, 0, perm);
            if (maximize ? f > best.value : f < best.value) best = Assignment{perm, f};
        }
        return best;
    }

    std::vector<ObjectiveVector> front;
    do {
        auto f = evaluate_all(instance, perm);
        bool dominated = false;
        for (const auto& g : front) {
            if (dominates(g, f) || g == f) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        std::erase_if(front, [&](const ObjectiveVector& g) { return dominates(f, g); });
        front.push_back(std::move(f));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(front.begin(), front.end());
    return front;
}

std::vector<double> min_max_normalized(const WeightMatrix& matrix)
{
    const auto entries = matrix.entries();
    const auto [lo_it, hi_it] = std::minmax_element(entries.begin(), entries.end());
    const double lo = static_cast<double>(*lo_it);
    const double range = static_cast<double>(*hi_it) - lo;
    std::vector<double> out(entries.size(), 0.0);
    if (range == 0) return out;
    for (std::size_t k = 0; k < entries.size(); ++k) out[k] = (static_cast<double>(entries[k]) - lo) / range;
    return out;
}

GroundTruthSet compute_ground_truth(const ProblemInstance& instance)
{
    if (instance.kind != ProblemKind::MOAP) throw std::invalid_argument("ground truth is defined for MOAP instances");
    instance.validate();
    const auto n = instance.rows();
    if (instance.cols() != n) throw std::invalid_argument("ground truth needs square matrices");

    const auto first = min_max_normalized(instance.objectives[0]);
    const auto second = min_max_normalized(instance.objectives[1]);
    std::vector<double> combined(first.size());
    std::vector<ObjectiveVector> points;
    points.reserve(101);
    for (int i = 0; i <= 100; ++i) {
        const double w1 = i / 100.0;
        const double w2 = 1.0 - w1;
        for (std::size_t k = 0; k < combined.size(); ++k) combined[k] = w1 * first[k] + w2 * second[k];
        const auto solved = solve_assignment(combined, n);
        points.push_back(evaluate_all(instance, solved.solution));
    }
    GroundTruthSet gt;
    gt.points = pareto_filter(std::move(points));
    gt.refresh_bounds();
    return gt;
}

} // namespace privopt
