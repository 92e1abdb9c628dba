#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "privopt/operators.hpp"
#include "privopt/privacy.hpp"
#include "privopt/problem.hpp"

namespace privopt {

struct Individual {
    Permutation genome;
    /// Actual objective values, in the instance's own orientation.
    ObjectiveVector actual;
    /// Estimated values in maximization orientation; only comparable within
    /// the batch that produced them.
    ObjectiveVector estimated;
    std::vector<Label> labels;
    /// NSGA-II front index (0 = non-dominated) and crowding distance.
    std::size_t rank = 0;
    double crowding = 0;
};

using Population = std::vector<Individual>;

/// k draws with replacement; best estimated fitness wins, ties go to the first draw.
std::size_t tournament_select(std::span<const Individual> population, std::size_t k, Rng& rng);

/// Binary tournament on (rank ascending, crowding descending); ties go to the first draw.
std::size_t crowded_tournament_select(std::span<const Individual> population, Rng& rng);

/// The mu best by estimated fitness, stable on ties.
Population truncation_survivors(Population population, std::size_t mu);

/// Fronts of indices in input order, maximization on every component.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveVector> points);

/// Crowding distance of each member of `front`, aligned with `front`.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> points, std::span<const std::size_t> front);

/// Fills by whole fronts, then breaks the last front by descending crowding distance.
/// Survivors carry their rank and crowding distance.
Population nsga2_survivors(Population population, std::size_t mu);

/// Single objective: every individual at the maximum estimated fitness.
/// Multi-objective: the non-dominated set under estimated fitness.
Population result_set(std::span<const Individual> population);

} // namespace privopt
