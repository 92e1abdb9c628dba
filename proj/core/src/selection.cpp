#include "privopt/selection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace privopt {

std::size_t tournament_select(std::span<const Individual> population, std::size_t k, Rng& rng)
{
    if (population.empty()) throw std::invalid_argument("tournament on empty population");
    if (k < 1) throw std::invalid_argument("tournament size must be >= 1");
    std::size_t best = uniform_index(rng, 0, population.size() - 1);
    for (std::size_t draw = 1; draw < k; ++draw) {
        const auto c = uniform_index(rng, 0, population.size() - 1);
        if (population[c].estimated[0] > population[best].estimated[0]) best = c;
    }
    return best;
}

std::size_t crowded_tournament_select(std::span<const Individual> population, Rng& rng)
{
    if (population.empty()) throw std::invalid_argument("tournament on empty population");
    const auto a = uniform_index(rng, 0, population.size() - 1);
    const auto b = uniform_index(rng, 0, population.size() - 1);
    const auto& x = population[a];
    const auto& y = population[b];
    if (y.rank < x.rank) return b;
    if (y.rank == x.rank && y.crowding > x.crowding) return b;
    return a;
}

Population truncation_survivors(Population population, std::size_t mu)
{
    if (population.size() < mu) throw std::invalid_argument("truncation: fewer individuals than survivors");
    std::stable_sort(population.begin(), population.end(),
                     [](const Individual& a, const Individual& b) { return a.estimated[0] > b.estimated[0]; });
    population.resize(mu);
    return population;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveVector> points)
{
    const auto n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(points[p], points[q])) {
                dominated_by[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(points[q], points[p])) {
                dominated_by[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto p : current) {
            for (auto q : dominated_by[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> points, std::span<const std::size_t> front)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto size = front.size();
    std::vector<double> distance(size, 0.0);
    if (size <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    const auto objectives = points[front[0]].size();
    std::vector<std::size_t> order(size);
    for (std::size_t m = 0; m < objectives; ++m) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return points[front[a]][m] < points[front[b]][m]; });
        const double lo = points[front[order.front()]][m];
        const double hi = points[front[order.back()]][m];
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        if (hi == lo) continue;
        for (std::size_t r = 1; r + 1 < size; ++r) {
            if (distance[order[r]] == inf) continue;
            distance[order[r]] +=
                (points[front[order[r + 1]]][m] - points[front[order[r - 1]]][m]) / (hi - lo);
        }
    }
    return distance;
}

namespace {

std::vector<ObjectiveVector> estimated_of(std::span<const Individual> population)
{
    std::vector<ObjectiveVector> points;
    points.reserve(population.size());
    for (const auto& ind : population) points.push_back(ind.estimated);
    return points;
}

} // namespace

Population nsga2_survivors(Population population, std::size_t mu)
{
    if (population.size() < mu) throw std::invalid_argument("NSGA-II: fewer individuals than survivors");
    const auto points = estimated_of(population);
    const auto fronts = non_dominated_sort(points);
    Population survivors;
    survivors.reserve(mu);
    for (std::size_t f = 0; f < fronts.size() && survivors.size() < mu; ++f) {
        const auto& front = fronts[f];
        const auto distance = crowding_distance(points, front);
        for (std::size_t i = 0; i < front.size(); ++i) {
            population[front[i]].rank = f;
            population[front[i]].crowding = distance[i];
        }
        if (survivors.size() + front.size() <= mu) {
            for (auto idx : front) survivors.push_back(std::move(population[idx]));
            continue;
        }
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return distance[a] > distance[b]; });
        for (std::size_t i = 0; survivors.size() < mu; ++i) survivors.push_back(std::move(population[front[order[i]]]));
    }
    return survivors;
}

Population result_set(std::span<const Individual> population)
{
    Population out;
    if (population.empty()) return out;
    if (population.front().estimated.size() == 1) {
        double best = population.front().estimated[0];
        for (const auto& ind : population) best = std::max(best, ind.estimated[0]);
        for (const auto& ind : population) {
            if (ind.estimated[0] == best) out.push_back(ind);
        }
        return out;
    }
    const auto points = estimated_of(population);
    for (std::size_t i = 0; i < population.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < population.size() && !dominated; ++j) {
            dominated = j != i && dominates(points[j], points[i]);
        }
        if (!dominated) out.push_back(population[i]);
    }
    return out;
}

} // namespace privopt
