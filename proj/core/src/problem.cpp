#include "privopt/problem.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace privopt {

std::string_view to_string(Direction d)
{
    return d == Direction::Maximize ? "maximize" : "minimize";
}

std::string_view to_string(ProblemKind k)
{
    switch (k) {
    case ProblemKind::AP: return "AP";
    case ProblemKind::MOAP: return "MOAP";
    case ProblemKind::TSP: return "TSP";
    }
    return "?";
}

Direction parse_direction(std::string_view s)
{
    if (s == "maximize" || s == "max") return Direction::Maximize;
    if (s == "minimize" || s == "min") return Direction::Minimize;
    throw std::invalid_argument(fmt::format("unknown direction '{}'", s));
}

ProblemKind parse_problem_kind(std::string_view s)
{
    if (s == "AP" || s == "ap") return ProblemKind::AP;
    if (s == "MOAP" || s == "moap") return ProblemKind::MOAP;
    if (s == "TSP" || s == "tsp") return ProblemKind::TSP;
    throw std::invalid_argument(fmt::format("unknown problem kind '{}'", s));
}

WeightMatrix::WeightMatrix(std::size_t rows, std::size_t cols, Direction direction)
    : WeightMatrix(rows, cols, std::vector<Weight>(rows * cols, 0), direction)
{
}

WeightMatrix::WeightMatrix(std::size_t rows, std::size_t cols, std::vector<Weight> entries, Direction direction)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), direction_(direction)
{
    if (rows_ == 0 || cols_ == 0) {
        throw std::invalid_argument("weight matrix needs at least one row and one column");
    }
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument(fmt::format("weight matrix {}x{} given {} entries", rows_, cols_, entries_.size()));
    }
}

bool WeightMatrix::symmetric_zero_diagonal() const noexcept
{
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        if ((*this)(i, i) != 0) return false;
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if ((*this)(i, j) != (*this)(j, i)) return false;
        }
    }
    return true;
}

Permutation Permutation::identity(std::size_t n)
{
    std::vector<Gene> v(n);
    std::iota(v.begin(), v.end(), Gene{0});
    return Permutation(std::move(v));
}

bool Permutation::is_valid(std::size_t range) const
{
    if (range == 0) range = values_.size();
    if (values_.size() > range) return false;
    std::vector<char> seen(range, 0);
    for (Gene g : values_) {
        if (g >= range || seen[g]) return false;
        seen[g] = 1;
    }
    return true;
}

void GroundTruthSet::refresh_bounds()
{
    ideal.clear();
    nadir.clear();
    if (points.empty()) return;
    ideal = points.front();
    nadir = points.front();
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            ideal[i] = std::max(ideal[i], p[i]);
            nadir[i] = std::min(nadir[i], p[i]);
        }
    }
}

std::vector<std::vector<std::size_t>> single_party(std::size_t rows)
{
    std::vector<std::size_t> all(rows);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return {std::move(all)};
}

void ProblemInstance::validate() const
{
    if (objectives.empty()) throw std::invalid_argument("instance has no objectives");
    const auto m = rows();
    const auto n = cols();
    for (const auto& w : objectives) {
        if (w.rows() != m || w.cols() != n) {
            throw std::invalid_argument("objective matrices differ in shape");
        }
    }
    switch (kind) {
    case ProblemKind::AP:
        if (objectives.size() != 1 || objectives[0].direction() != Direction::Maximize)
            throw std::invalid_argument("AP instances have one maximized objective");
        break;
    case ProblemKind::MOAP:
        if (objectives.size() != 2)
            throw std::invalid_argument("MOAP instances have two objectives");
        for (const auto& w : objectives)
            if (w.direction() != Direction::Maximize)
                throw std::invalid_argument("MOAP objectives are maximized");
        break;
    case ProblemKind::TSP:
        if (objectives.size() != 1 || objectives[0].direction() != Direction::Minimize)
            throw std::invalid_argument("TSP instances have one minimized objective");
        if (!objectives[0].symmetric_zero_diagonal())
            throw std::invalid_argument("TSP matrix must be symmetric with zero diagonal");
        break;
    }
    std::vector<char> covered(m, 0);
    std::size_t count = 0;
    for (const auto& party : party_partition) {
        for (auto row : party) {
            if (row >= m || covered[row]) throw std::invalid_argument("party partition must cover each row exactly once");
            covered[row] = 1;
            ++count;
        }
    }
    if (count != m) throw std::invalid_argument("party partition must cover each row exactly once");
    if (known_optimum && known_optimum->size() != objectives.size())
        throw std::invalid_argument("known optimum length differs from objective count");
}

Weight assignment_value(const WeightMatrix& matrix, const Permutation& solution)
{
    Weight sum = 0;
    for (std::size_t i = 0; i < solution.size(); ++i) sum += matrix(i, solution[i]);
    return sum;
}

Weight tour_length(const WeightMatrix& matrix, const Permutation& solution)
{
    const auto n = solution.size();
    if (n == 0) return 0;
    Weight sum = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) sum += matrix(solution[i], solution[i + 1]);
    return sum + matrix(solution[n - 1], solution[0]);
}

double evaluate(const ProblemInstance& instance, std::size_t objective_index, const Permutation& solution)
{
    if (objective_index >= instance.objective_count()) {
        throw std::invalid_argument(fmt::format("objective index {} out of range", objective_index));
    }
    const auto& matrix = instance.objectives[objective_index];
    if (solution.size() != matrix.rows()) {
        throw std::invalid_argument(
            fmt::format("solution length {} does not match {} rows", solution.size(), matrix.rows()));
    }
    for (Gene g : solution) {
        if (g >= matrix.cols()) throw std::invalid_argument("solution value out of column range");
    }
    if (instance.kind == ProblemKind::TSP) return static_cast<double>(tour_length(matrix, solution));
    return static_cast<double>(assignment_value(matrix, solution));
}

ObjectiveVector evaluate_all(const ProblemInstance& instance, const Permutation& solution)
{
    ObjectiveVector out(instance.objective_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = evaluate(instance, i, solution);
    return out;
}

bool dominates(std::span<const double> a, std::span<const double> b) noexcept
{
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strictly = true;
    }
    return strictly;
}

std::vector<ObjectiveVector> pareto_filter(std::vector<ObjectiveVector> points)
{
    std::vector<ObjectiveVector> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < points.size() && !drop; ++j) {
            if (j == i) continue;
            if (dominates(points[j], points[i])) drop = true;
            else if (j < i && points[j] == points[i]) drop = true;
        }
        if (!drop) kept.push_back(points[i]);
    }
    return kept;
}

} // namespace privopt
