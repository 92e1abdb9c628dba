#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace privopt {

enum class Direction { Maximize, Minimize };
enum class ProblemKind { AP, MOAP, TSP };

std::string_view to_string(Direction d);
std::string_view to_string(ProblemKind k);
Direction parse_direction(std::string_view s);
ProblemKind parse_problem_kind(std::string_view s);

using Weight = std::int64_t;
using Gene = std::uint32_t;

/// Dense row-major matrix of integer weights with an optimization direction.
class WeightMatrix {
public:
    WeightMatrix() = default;
    WeightMatrix(std::size_t rows, std::size_t cols, Direction direction);
    WeightMatrix(std::size_t rows, std::size_t cols, std::vector<Weight> entries, Direction direction);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] Direction direction() const noexcept { return direction_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    [[nodiscard]] Weight operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }
    Weight& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }

    [[nodiscard]] std::span<const Weight> entries() const noexcept { return entries_; }
    [[nodiscard]] std::span<const Weight> row(std::size_t i) const noexcept
    {
        return std::span<const Weight>(entries_).subspan(i * cols_, cols_);
    }

    [[nodiscard]] bool symmetric_zero_diagonal() const noexcept;

    friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Weight> entries_;
    Direction direction_ = Direction::Maximize;
};

/// A candidate solution. Row i is assigned to column `mapping[i]` (AP/MOAP),
/// or `mapping` is the visiting order of a closed tour (TSP).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<Gene> values) : values_(std::move(values)) {}

    static Permutation identity(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] Gene operator[](std::size_t i) const noexcept { return values_[i]; }
    Gene& operator[](std::size_t i) noexcept { return values_[i]; }

    [[nodiscard]] const std::vector<Gene>& values() const noexcept { return values_; }
    std::vector<Gene>& values() noexcept { return values_; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }
    auto begin() noexcept { return values_.begin(); }
    auto end() noexcept { return values_.end(); }

    /// Distinct values, all below `range` (range defaults to size()).
    [[nodiscard]] bool is_valid(std::size_t range = 0) const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<Gene> values_;
};

using ObjectiveVector = std::vector<double>;

/// Reference set of Pareto-optimal objective vectors (all objectives maximized).
struct GroundTruthSet {
    std::vector<ObjectiveVector> points;
    ObjectiveVector ideal;
    ObjectiveVector nadir;

    /// Recomputes ideal/nadir from `points`.
    void refresh_bounds();
};

struct ProblemInstance {
    ProblemKind kind = ProblemKind::AP;
    std::string name;
    std::vector<WeightMatrix> objectives;
    std::vector<std::vector<std::size_t>> party_partition;
    std::optional<std::vector<double>> known_optimum;
    std::optional<GroundTruthSet> ground_truth;

    [[nodiscard]] std::size_t objective_count() const noexcept { return objectives.size(); }
    [[nodiscard]] std::size_t rows() const noexcept { return objectives.empty() ? 0 : objectives.front().rows(); }
    [[nodiscard]] std::size_t cols() const noexcept { return objectives.empty() ? 0 : objectives.front().cols(); }
    [[nodiscard]] Direction direction(std::size_t objective) const { return objectives.at(objective).direction(); }

    /// Throws std::invalid_argument when a structural invariant is violated.
    void validate() const;
};

/// Single party holding every row.
std::vector<std::vector<std::size_t>> single_party(std::size_t rows);

/// Objective value of `solution`. AP/MOAP sum c[i][pi(i)]; TSP sums the closed tour.
double evaluate(const ProblemInstance& instance, std::size_t objective_index, const Permutation& solution);

/// Objective vector over all objectives.
ObjectiveVector evaluate_all(const ProblemInstance& instance, const Permutation& solution);

/// Raw sums on a matrix, no instance wrapper.
Weight assignment_value(const WeightMatrix& matrix, const Permutation& solution);
Weight tour_length(const WeightMatrix& matrix, const Permutation& solution);

/// True when `a` Pareto-dominates `b` with every objective maximized.
bool dominates(std::span<const double> a, std::span<const double> b) noexcept;

/// Removes dominated and duplicate vectors; survivors keep their first-seen order.
std::vector<ObjectiveVector> pareto_filter(std::vector<ObjectiveVector> points);

} // namespace privopt
