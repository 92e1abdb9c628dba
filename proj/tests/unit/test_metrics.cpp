#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "privopt/metrics.hpp"

using namespace privopt;

namespace {

GroundTruthSet truth_of(std::vector<ObjectiveVector> pts)
{
    GroundTruthSet t;
    t.points = std::move(pts);
    t.refresh_bounds();
    return t;
}

// Reference double loop written out per coordinate, no shared helpers.
double reference_gd(const std::vector<ObjectiveVector>& from, const std::vector<ObjectiveVector>& to, bool from_is_found)
{
    double total = 0;
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : to) {
            const auto& a = from_is_found ? p : q;
            const auto& z = from_is_found ? q : p;
            double dx = z[0] - a[0] > 0 ? z[0] - a[0] : 0;
            double dy = z[1] - a[1] > 0 ? z[1] - a[1] : 0;
            best = std::min(best, std::sqrt(dx * dx + dy * dy));
        }
        total += best;
    }
    return total / static_cast<double>(from.size());
}

std::vector<ObjectiveVector> random_set(std::mt19937_64& rng, std::size_t max_size)
{
    std::uniform_int_distribution<std::size_t> size(1, max_size);
    std::uniform_real_distribution<double> coord(0, 100);
    std::vector<ObjectiveVector> out(size(rng));
    for (auto& p : out) p = {coord(rng), coord(rng)};
    return out;
}

} // namespace

TEST_CASE("relative error")
{
    CHECK(relative_error(100, 100, Direction::Maximize) == 0);
    CHECK(relative_error(0, 100, Direction::Maximize) == 1.0);
    CHECK(relative_error(22579, 21294, Direction::Minimize) == doctest::Approx(0.0603).epsilon(0.001));
    CHECK(relative_error(90, 100, Direction::Maximize) > relative_error(95, 100, Direction::Maximize));
    CHECK_THROWS_AS(relative_error(1, 0, Direction::Maximize), std::invalid_argument);
}

TEST_CASE("normalize")
{
    CHECK(normalize(10, 10, 2) == 0);
    CHECK(normalize(2, 10, 2) == 1);
    CHECK(normalize(6, 10, 2) == 0.5);
    CHECK_THROWS_AS(normalize(1, 3, 3), std::invalid_argument);
}

TEST_CASE("modified distance clamps dimensions where the solution is better")
{
    CHECK(modified_distance(std::vector<double>{5, 5}, std::vector<double>{4, 5}) == 0);
    CHECK(modified_distance(std::vector<double>{0, 10}, std::vector<double>{10, 0}) == 10);
    CHECK(modified_distance(std::vector<double>{0, 0}, std::vector<double>{3, 4}) == 5);
}

TEST_CASE("GD+ and IGD+ trivial cases")
{
    const auto truth = truth_of({{10, 0}, {0, 10}, {5, 5}});
    CHECK(gd_plus(truth.points, truth, false) == 0);
    CHECK(igd_plus(truth.points, truth, false) == 0);
    const auto single = truth_of({{3, 3}});
    CHECK(gd_plus(std::vector<ObjectiveVector>{{4, 5}}, single, false) == 0);

    const auto pair = truth_of({{10, 0}, {0, 10}});
    CHECK(igd_plus(std::vector<ObjectiveVector>{{10, 0}}, pair, false) == 5);
    CHECK_THROWS_AS(gd_plus(std::vector<ObjectiveVector>{}, pair, false), std::invalid_argument);
    CHECK_THROWS_AS(igd_plus(std::vector<ObjectiveVector>{}, pair, false), std::invalid_argument);
}

TEST_CASE("GD+ and IGD+ agree with a reference double loop")
{
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 100; ++trial) {
        const auto found = random_set(rng, 6);
        const auto truth = truth_of(random_set(rng, 6));
        CHECK(std::abs(gd_plus(found, truth, false) - reference_gd(found, truth.points, true)) <= 1e-9);
        CHECK(std::abs(igd_plus(found, truth, false) - reference_gd(truth.points, found, false)) <= 1e-9);
    }
}

TEST_CASE("normalized variants map values through the truth bounds")
{
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 50; ++trial) {
        const auto found = random_set(rng, 6);
        auto truth = truth_of(random_set(rng, 6));
        if (truth.ideal[0] == truth.nadir[0] || truth.ideal[1] == truth.nadir[1]) continue;
        auto map = [&](const std::vector<ObjectiveVector>& pts) {
            std::vector<ObjectiveVector> out;
            for (const auto& p : pts)
                out.push_back({1 - (truth.ideal[0] - p[0]) / (truth.ideal[0] - truth.nadir[0]),
                               1 - (truth.ideal[1] - p[1]) / (truth.ideal[1] - truth.nadir[1])});
            return out;
        };
        CHECK(std::abs(gd_plus(found, truth, true) - reference_gd(map(found), map(truth.points), true)) <= 1e-9);
        CHECK(std::abs(igd_plus(found, truth, true) - reference_gd(map(truth.points), map(found), false)) <= 1e-9);
    }
}

TEST_CASE("duplicating counterpart points leaves the indicators unchanged")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const auto found = random_set(rng, 5);
        const auto truth = truth_of(random_set(rng, 5));
        auto doubled_truth = truth;
        doubled_truth.points.insert(doubled_truth.points.end(), truth.points.begin(), truth.points.end());
        CHECK(gd_plus(found, truth, false) == gd_plus(found, doubled_truth, false));
        auto doubled_found = found;
        doubled_found.insert(doubled_found.end(), found.begin(), found.end());
        CHECK(igd_plus(found, truth, false) == igd_plus(doubled_found, truth, false));
        CHECK(gd_plus(found, truth, false) >= 0);
    }
}

TEST_CASE("metric names and directions")
{
    for (auto k : {MetricKind::RelativeError, MetricKind::MeanFitness, MetricKind::GDPlus, MetricKind::IGDPlus})
        CHECK(parse_metric_kind(to_string(k)) == k);
    CHECK(metric_direction(MetricKind::MeanFitness, Direction::Maximize) == Direction::Maximize);
    CHECK(metric_direction(MetricKind::MeanFitness, Direction::Minimize) == Direction::Minimize);
    CHECK(metric_direction(MetricKind::IGDPlus, Direction::Maximize) == Direction::Minimize);
}
