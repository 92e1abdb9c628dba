#pragma once

#include <cstddef>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "privopt/problem.hpp"

namespace privopt {

using Rng = std::mt19937_64;

enum class CrossoverOp { Cycle, Edge, Order, PartiallyMapped, UniformOrderBased };
enum class MutationOp { Swap, Insert, Scramble, Inversion };

std::string_view to_string(CrossoverOp op);
std::string_view to_string(MutationOp op);
CrossoverOp parse_crossover(std::string_view s);
MutationOp parse_mutation(std::string_view s);

/// Uniform integer in [lo, hi].
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);

/// True with probability percent / 100.
bool chance(Rng& rng, double percent);

Permutation random_permutation(std::size_t n, Rng& rng);

// Crossover operators (Eiben & Smith). All return valid permutations.
std::pair<Permutation, Permutation> cycle_crossover(const Permutation& a, const Permutation& b);
std::pair<Permutation, Permutation> order_crossover(const Permutation& a, const Permutation& b, Rng& rng);
std::pair<Permutation, Permutation> partially_mapped_crossover(const Permutation& a, const Permutation& b, Rng& rng);
std::pair<Permutation, Permutation> uniform_order_based_crossover(const Permutation& a, const Permutation& b,
                                                                  Rng& rng);
/// Edge recombination yields a single child.
Permutation edge_crossover(const Permutation& a, const Permutation& b, Rng& rng);

// Segment-explicit variants, exposed for testing.
std::pair<Permutation, Permutation> order_crossover(const Permutation& a, const Permutation& b, std::size_t first,
                                                    std::size_t last);
std::pair<Permutation, Permutation> partially_mapped_crossover(const Permutation& a, const Permutation& b,
                                                               std::size_t first, std::size_t last);

/// With probability prob% applies `op`, otherwise returns copies of the parents.
std::pair<Permutation, Permutation> crossover(const Permutation& a, const Permutation& b, CrossoverOp op, double prob,
                                              Rng& rng);

// Mutation primitives on explicit positions (inclusive segments).
void swap_positions(Permutation& p, std::size_t i, std::size_t j);
void move_element(Permutation& p, std::size_t from, std::size_t to);
void reverse_segment(Permutation& p, std::size_t first, std::size_t last);
void scramble_segment(Permutation& p, std::size_t first, std::size_t last, Rng& rng);

/// With probability prob% applies `op` in place.
void mutate(Permutation& genome, MutationOp op, double prob, Rng& rng);

} // namespace privopt
