#include "privopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace privopt {

std::vector<double> signed_rank_magnitudes(std::span<const double> diffs)
{
    std::vector<double> magnitude;
    for (double d : diffs) {
        if (d != 0) magnitude.push_back(std::abs(d));
    }
    const auto n = magnitude.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return magnitude[a] < magnitude[b]; });
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && magnitude[order[j + 1]] == magnitude[order[i]]) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t) rank[order[t]] = mid;
        i = j + 1;
    }
    return rank;
}

namespace {

struct RankSums {
    std::vector<double> ranks;
    std::vector<bool> positive;
    double plus = 0;
    double minus = 0;
};

RankSums rank_sums(std::span<const double> diffs)
{
    RankSums out;
    out.ranks = signed_rank_magnitudes(diffs);
    std::size_t k = 0;
    for (double d : diffs) {
        if (d == 0) continue;
        out.positive.push_back(d > 0);
        (d > 0 ? out.plus : out.minus) += out.ranks[k++];
    }
    return out;
}

// Exact null distribution of the doubled positive rank sum; each of the 2^n sign
// patterns is equally likely.
double exact_two_sided(const std::vector<double>& ranks, double w_plus)
{
    std::vector<std::size_t> doubled(ranks.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        doubled[i] = static_cast<std::size_t>(std::lround(ranks[i] * 2));
        total += doubled[i];
    }
    std::vector<double> count(total + 1, 0.0);
    count[0] = 1;
    std::size_t reach = 0;
    for (auto r : doubled) {
        for (std::size_t s = reach + 1; s-- > 0;) {
            if (count[s] != 0) count[s + r] += count[s];
        }
        reach += r;
    }
    const double centre = static_cast<double>(total) / 2.0;
    const double observed = std::abs(std::round(w_plus * 2) - centre);
    double extreme = 0;
    double all = 0;
    for (std::size_t s = 0; s <= total; ++s) {
        all += count[s];
        if (std::abs(static_cast<double>(s) - centre) >= observed - 1e-9) extreme += count[s];
    }
    return std::min(1.0, extreme / all);
}

} // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs)
{
    WilcoxonResult result;
    const auto sums = rank_sums(diffs);
    result.n = sums.ranks.size();
    result.w_plus = sums.plus;
    result.w_minus = sums.minus;
    if (result.n == 0) {
        result.degenerate = true;
        result.p_value = 1.0;
        return result;
    }
    const auto n = static_cast<double>(result.n);
    if (result.n < 20) {
        result.exact = true;
        result.p_value = exact_two_sided(sums.ranks, sums.plus);
        return result;
    }
    // Tie correction from the groups of equal mid-ranks.
    std::map<double, std::size_t> groups;
    for (double r : sums.ranks) ++groups[r];
    double tie_term = 0;
    for (const auto& [rank, t] : groups) {
        const auto td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double mu = n * (n + 1) / 4.0;
    const double variance = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term / 48.0;
    const double deviation = std::abs(sums.plus - mu);
    const double z = std::max(0.0, deviation - 0.5) / std::sqrt(variance);
    result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return result;
}

double rank_biserial(std::span<const double> diffs)
{
    const auto sums = rank_sums(diffs);
    const double total = sums.plus + sums.minus;
    if (total == 0) return 0.0;
    return (sums.plus - sums.minus) / total;
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty()) throw std::invalid_argument("quantile of an empty set");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double median(std::vector<double> values)
{
    return quantile(std::move(values), 0.5);
}

double interquartile_range(std::vector<double> values)
{
    return quantile(values, 0.75) - quantile(values, 0.25);
}

std::size_t comparison_generation(double avg_eval_time, double budget, std::size_t max_generation)
{
    if (!(avg_eval_time > 0)) throw std::invalid_argument("average evaluation time must be positive");
    // The slack absorbs decimal inputs like 135.27 / 0.27 landing just below 501.
    const double evaluations = std::floor(budget / avg_eval_time + 1e-9);
    if (evaluations < 1) return 0;
    const auto generation = static_cast<std::size_t>(evaluations) - 1;
    return std::min(generation, max_generation);
}

WinMatrix win_matrix(std::span<const ConfigSamples> samples, Direction better)
{
    WinMatrix out;
    const auto k = samples.size();
    std::vector<std::map<std::uint64_t, double>> keyed(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.configs.push_back(samples[i].name);
        for (const auto& [seed, value] : samples[i].by_seed) {
            if (!keyed[i].emplace(seed, value).second) {
                throw std::invalid_argument(fmt::format("config '{}' has seed {} twice", samples[i].name, seed));
            }
        }
        if (i > 0) {
            bool same = keyed[i].size() == keyed[0].size();
            for (auto a = keyed[i].begin(), b = keyed[0].begin(); same && a != keyed[i].end(); ++a, ++b) {
                same = a->first == b->first;
            }
            if (!same) {
                throw std::invalid_argument(fmt::format("config '{}' and '{}' have different seed sets",
                                                        samples[i].name, samples[0].name));
            }
        }
    }
    out.cells.assign(k, std::vector<std::optional<ComparisonCell>>(k));
    out.wins.assign(k, 0);
    for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < k; ++y) {
            if (x == y) continue;
            std::vector<double> diffs;
            for (const auto& [seed, value] : keyed[x]) diffs.push_back(value - keyed[y].at(seed));
            ComparisonCell cell;
            cell.n_pairs = diffs.size();
            const auto test = wilcoxon_signed_rank(diffs);
            cell.p_value = test.p_value;
            cell.rank_biserial = rank_biserial(diffs);
            cell.significant = !test.degenerate && cell.p_value < kSignificanceLevel;
            const bool favours_x = better == Direction::Maximize ? cell.rank_biserial > 0 : cell.rank_biserial < 0;
            if (cell.significant && favours_x) ++out.wins[x];
            out.cells[x][y] = cell;
        }
    }
    return out;
}

} // namespace privopt
