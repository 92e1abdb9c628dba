#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "privopt/instances.hpp"
#include "privopt/operators.hpp"
#include "privopt/problem.hpp"

using namespace privopt;

namespace {

ProblemInstance ap_from(std::size_t n, std::vector<Weight> entries)
{
    ProblemInstance inst;
    inst.kind = ProblemKind::AP;
    inst.name = "fixture";
    inst.objectives.emplace_back(n, n, std::move(entries), Direction::Maximize);
    inst.party_partition = single_party(n);
    return inst;
}

// Straight-line tour length without the instance's distance matrix (no rounding).
double raw_tour(const std::vector<Point2>& pts, const Permutation& p)
{
    double total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto a = pts[p[i]];
        const auto b = pts[p[(i + 1) % p.size()]];
        total += std::floor(std::hypot(a.x - b.x, a.y - b.y) + 0.5);
    }
    return total;
}

} // namespace

TEST_CASE("diagonal assignment sums the diagonal")
{
    const auto inst = ap_from(3, {5, 0, 0, 0, 5, 0, 0, 0, 5});
    CHECK(evaluate(inst, 0, Permutation({0, 1, 2})) == 15);
    CHECK(evaluate(inst, 0, Permutation({1, 0, 2})) == 5);
}

TEST_CASE("two solutions differing in two positions give a linear relation")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Weight> dist(0, 100);
    std::vector<Weight> w(25);
    for (auto& x : w) x = dist(rng);
    // Force f(a) - f(b) = 10 for a = identity, b = identity with 1 and 2 swapped.
    w[1 * 5 + 1] = 40;
    w[2 * 5 + 2] = 30;
    w[1 * 5 + 2] = 35;
    w[2 * 5 + 1] = 25;
    const auto inst = ap_from(5, w);
    const Permutation a({0, 1, 2, 3, 4});
    const Permutation b({0, 2, 1, 3, 4});
    const auto& c = inst.objectives[0];
    CHECK(evaluate(inst, 0, a) - evaluate(inst, 0, b) == 10);
    CHECK(c(1, 1) + c(2, 2) == c(1, 2) + c(2, 1) + 10);
}

TEST_CASE("evaluate rejects mismatched genomes")
{
    const auto inst = ap_from(3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK_THROWS_AS(evaluate(inst, 0, Permutation({0, 1})), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(inst, 1, Permutation({0, 1, 2})), std::invalid_argument);
}

TEST_CASE("assignment value is the exact integer sum")
{
    Rng rng(5);
    const auto inst = generate_ap_instance(3, 50, 50, 1, 0, 1000);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_permutation(50, rng);
        Weight sum = 0;
        for (std::size_t i = 0; i < 50; ++i) sum += inst.objectives[0](i, p[i]);
        CHECK(evaluate(inst, 0, p) == static_cast<double>(sum));
    }
}

TEST_CASE("tour length matches an independent straight-line computation")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> coord(0, 1000);
    std::vector<Point2> pts(5);
    for (auto& p : pts) p = {std::round(coord(rng)), std::round(coord(rng))};
    const auto inst = tsp_from_coordinates("five", pts);
    Rng prng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_permutation(5, prng);
        CHECK(evaluate(inst, 0, p) == raw_tour(pts, p));
    }
}

TEST_CASE("tour length is invariant under rotation and reversal")
{
    const auto inst = generate_euclidean_tsp(8, 12);
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = random_permutation(12, rng);
        const double base = evaluate(inst, 0, p);
        for (std::size_t k = 0; k < 12; ++k) {
            auto v = p.values();
            std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
            CHECK(evaluate(inst, 0, Permutation(v)) == base);
        }
        auto r = p.values();
        std::reverse(r.begin(), r.end());
        CHECK(evaluate(inst, 0, Permutation(r)) == base);
    }
}

TEST_CASE("dominance and pareto filter")
{
    const std::vector<double> a{2, 2}, b{1, 2}, c{2, 2};
    CHECK(dominates(a, b));
    CHECK_FALSE(dominates(b, a));
    CHECK_FALSE(dominates(a, c));

    const auto front = pareto_filter({{1, 5}, {2, 2}, {5, 1}, {1, 5}, {1, 1}, {3, 3}});
    const std::vector<ObjectiveVector> expected{{1, 5}, {5, 1}, {3, 3}};
    CHECK(front == expected);
}

TEST_CASE("permutation validity")
{
    CHECK(Permutation::identity(4).is_valid());
    CHECK_FALSE(Permutation({0, 2, 2}).is_valid());
    CHECK_FALSE(Permutation({0, 3, 1}).is_valid());
    CHECK(Permutation({0, 3, 1}).is_valid(4));
}

TEST_CASE("instance validation")
{
    auto inst = ap_from(2, {1, 2, 3, 4});
    CHECK_NOTHROW(inst.validate());
    inst.party_partition = {{0}};
    CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
    CHECK_THROWS_AS(WeightMatrix(2, 2, {1, 2, 3}, Direction::Maximize), std::invalid_argument);
}
