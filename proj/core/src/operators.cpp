#include "privopt/operators.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include <fmt/core.h>

namespace privopt {

std::string_view to_string(CrossoverOp op)
{
    switch (op) {
    case CrossoverOp::Cycle: return "cycle";
    case CrossoverOp::Edge: return "edge";
    case CrossoverOp::Order: return "order";
    case CrossoverOp::PartiallyMapped: return "partially_mapped";
    case CrossoverOp::UniformOrderBased: return "uniform_order_based";
    }
    return "?";
}

std::string_view to_string(MutationOp op)
{
    switch (op) {
    case MutationOp::Swap: return "swap";
    case MutationOp::Insert: return "insert";
    case MutationOp::Scramble: return "scramble";
    case MutationOp::Inversion: return "inversion";
    }
    return "?";
}

CrossoverOp parse_crossover(std::string_view s)
{
    for (auto op : {CrossoverOp::Cycle, CrossoverOp::Edge, CrossoverOp::Order, CrossoverOp::PartiallyMapped,
                    CrossoverOp::UniformOrderBased}) {
        if (s == to_string(op)) return op;
    }
    if (s == "pmx") return CrossoverOp::PartiallyMapped;
    if (s == "uob") return CrossoverOp::UniformOrderBased;
    throw std::invalid_argument(fmt::format("unknown crossover '{}'", s));
}

MutationOp parse_mutation(std::string_view s)
{
    for (auto op : {MutationOp::Swap, MutationOp::Insert, MutationOp::Scramble, MutationOp::Inversion}) {
        if (s == to_string(op)) return op;
    }
    throw std::invalid_argument(fmt::format("unknown mutation '{}'", s));
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double percent)
{
    if (percent >= 100) return true;
    if (percent <= 0) return false;
    return std::uniform_real_distribution<double>(0.0, 100.0)(rng) < percent;
}

Permutation random_permutation(std::size_t n, Rng& rng)
{
    auto p = Permutation::identity(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

namespace {

void require_same_length(const Permutation& a, const Permutation& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("crossover parents differ in length");
}

std::vector<std::size_t> positions_of(const Permutation& p)
{
    std::vector<std::size_t> pos(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) pos[p[i]] = i;
    return pos;
}

std::pair<std::size_t, std::size_t> random_segment(std::size_t n, Rng& rng)
{
    auto i = uniform_index(rng, 0, n - 1);
    auto j = uniform_index(rng, 0, n - 1);
    if (i > j) std::swap(i, j);
    return {i, j};
}

// Two distinct positions, first < last.
std::pair<std::size_t, std::size_t> random_proper_segment(std::size_t n, Rng& rng)
{
    const auto i = uniform_index(rng, 0, n - 1);
    auto j = uniform_index(rng, 0, n - 2);
    if (j >= i) ++j;
    return {std::min(i, j), std::max(i, j)};
}

Permutation order_child(const Permutation& donor, const Permutation& filler, std::size_t first, std::size_t last)
{
    const auto n = donor.size();
    std::vector<Gene> child(n);
    std::vector<char> used(n, 0);
    for (std::size_t i = first; i <= last; ++i) {
        child[i] = donor[i];
        used[donor[i]] = 1;
    }
    std::size_t write = (last + 1) % n;
    for (std::size_t step = 0; step < n; ++step) {
        const Gene g = filler[(last + 1 + step) % n];
        if (used[g]) continue;
        child[write] = g;
        used[g] = 1;
        write = (write + 1) % n;
    }
    return Permutation(std::move(child));
}

Permutation pmx_child(const Permutation& donor, const Permutation& other, std::size_t first, std::size_t last)
{
    const auto n = donor.size();
    constexpr Gene empty = ~Gene{0};
    std::vector<Gene> child(n, empty);
    std::vector<char> used(n, 0);
    for (std::size_t i = first; i <= last; ++i) {
        child[i] = donor[i];
        used[donor[i]] = 1;
    }
    const auto pos_other = positions_of(other);
    for (std::size_t i = first; i <= last; ++i) {
        const Gene g = other[i];
        if (used[g]) continue;
        std::size_t pos = i;
        do {
            pos = pos_other[donor[pos]];
        } while (pos >= first && pos <= last);
        child[pos] = g;
        used[g] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (child[i] == empty) child[i] = other[i];
    }
    return Permutation(std::move(child));
}

Permutation uob_child(const Permutation& keep, const Permutation& order_source, const std::vector<char>& mask)
{
    const auto n = keep.size();
    std::vector<Gene> child(n);
    std::vector<char> used(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) {
            child[i] = keep[i];
            used[keep[i]] = 1;
        }
    }
    std::size_t src = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) continue;
        while (used[order_source[src]]) ++src;
        child[i] = order_source[src];
        used[order_source[src]] = 1;
    }
    return Permutation(std::move(child));
}

} // namespace

std::pair<Permutation, Permutation> cycle_crossover(const Permutation& a, const Permutation& b)
{
    require_same_length(a, b);
    const auto n = a.size();
    const auto pos_a = positions_of(a);
    std::vector<Gene> c1(n), c2(n);
    std::vector<char> assigned(n, 0);
    bool from_a = true;
    for (std::size_t start = 0; start < n; ++start) {
        if (assigned[start]) continue;
        std::size_t pos = start;
        do {
            assigned[pos] = 1;
            c1[pos] = from_a ? a[pos] : b[pos];
            c2[pos] = from_a ? b[pos] : a[pos];
            pos = pos_a[b[pos]];
        } while (pos != start);
        from_a = !from_a;
    }
    return {Permutation(std::move(c1)), Permutation(std::move(c2))};
}

std::pair<Permutation, Permutation> order_crossover(const Permutation& a, const Permutation& b, std::size_t first,
                                                    std::size_t last)
{
    require_same_length(a, b);
    if (first > last || last >= a.size()) throw std::invalid_argument("order crossover: bad segment");
    return {order_child(a, b, first, last), order_child(b, a, first, last)};
}

std::pair<Permutation, Permutation> order_crossover(const Permutation& a, const Permutation& b, Rng& rng)
{
    require_same_length(a, b);
    if (a.size() < 2) return {a, b};
    const auto [first, last] = random_segment(a.size(), rng);
    return order_crossover(a, b, first, last);
}

std::pair<Permutation, Permutation> partially_mapped_crossover(const Permutation& a, const Permutation& b,
                                                               std::size_t first, std::size_t last)
{
    require_same_length(a, b);
    if (first > last || last >= a.size()) throw std::invalid_argument("PMX: bad segment");
    return {pmx_child(a, b, first, last), pmx_child(b, a, first, last)};
}

std::pair<Permutation, Permutation> partially_mapped_crossover(const Permutation& a, const Permutation& b, Rng& rng)
{
    require_same_length(a, b);
    if (a.size() < 2) return {a, b};
    const auto [first, last] = random_segment(a.size(), rng);
    return partially_mapped_crossover(a, b, first, last);
}

std::pair<Permutation, Permutation> uniform_order_based_crossover(const Permutation& a, const Permutation& b,
                                                                  Rng& rng)
{
    require_same_length(a, b);
    std::vector<char> mask(a.size());
    std::bernoulli_distribution coin(0.5);
    for (auto& m : mask) m = coin(rng) ? 1 : 0;
    return {uob_child(a, b, mask), uob_child(b, a, mask)};
}

Permutation edge_crossover(const Permutation& a, const Permutation& b, Rng& rng)
{
    require_same_length(a, b);
    const auto n = a.size();
    if (n < 3) return a;

    // Up to four neighbours per element; count 2 marks an edge common to both parents.
    struct Edge {
        Gene to;
        int count;
    };
    std::vector<std::vector<Edge>> table(n);
    auto add = [&](Gene from, Gene to) {
        for (auto& e : table[from]) {
            if (e.to == to) {
                ++e.count;
                return;
            }
        }
        table[from].push_back({to, 1});
    };
    for (const Permutation* p : {&a, &b}) {
        for (std::size_t i = 0; i < n; ++i) {
            const Gene g = (*p)[i];
            add(g, (*p)[(i + n - 1) % n]);
            add(g, (*p)[(i + 1) % n]);
        }
    }

    std::vector<char> visited(n, 0);
    std::vector<Gene> child;
    child.reserve(n);
    Gene current = static_cast<Gene>(uniform_index(rng, 0, n - 1));
    std::vector<Gene> candidates;
    while (true) {
        child.push_back(current);
        visited[current] = 1;
        if (child.size() == n) break;
        for (const auto& e : table[current]) {
            auto& list = table[e.to];
            std::erase_if(list, [&](const Edge& x) { return x.to == current; });
        }
        const auto& options = table[current];
        candidates.clear();
        for (const auto& e : options) {
            if (e.count > 1) candidates.push_back(e.to);
        }
        if (candidates.empty() && !options.empty()) {
            std::size_t shortest = n;
            for (const auto& e : options) shortest = std::min(shortest, table[e.to].size());
            for (const auto& e : options) {
                if (table[e.to].size() == shortest) candidates.push_back(e.to);
            }
        }
        if (candidates.empty()) {
            for (Gene g = 0; g < n; ++g) {
                if (!visited[g]) candidates.push_back(g);
            }
        }
        table[current].clear();
        current = candidates[uniform_index(rng, 0, candidates.size() - 1)];
    }
    return Permutation(std::move(child));
}

std::pair<Permutation, Permutation> crossover(const Permutation& a, const Permutation& b, CrossoverOp op, double prob,
                                              Rng& rng)
{
    require_same_length(a, b);
    if (!chance(rng, prob)) return {a, b};
    switch (op) {
    case CrossoverOp::Cycle: return cycle_crossover(a, b);
    case CrossoverOp::Order: return order_crossover(a, b, rng);
    case CrossoverOp::PartiallyMapped: return partially_mapped_crossover(a, b, rng);
    case CrossoverOp::UniformOrderBased: return uniform_order_based_crossover(a, b, rng);
    case CrossoverOp::Edge: {
        auto first = edge_crossover(a, b, rng);
        auto second = edge_crossover(a, b, rng);
        return {std::move(first), std::move(second)};
    }
    }
    return {a, b};
}

void swap_positions(Permutation& p, std::size_t i, std::size_t j)
{
    std::swap(p[i], p[j]);
}

void move_element(Permutation& p, std::size_t from, std::size_t to)
{
    auto& v = p.values();
    if (from < to) std::rotate(v.begin() + from, v.begin() + from + 1, v.begin() + to + 1);
    else if (to < from) std::rotate(v.begin() + to, v.begin() + from, v.begin() + from + 1);
}

void reverse_segment(Permutation& p, std::size_t first, std::size_t last)
{
    std::reverse(p.begin() + first, p.begin() + last + 1);
}

void scramble_segment(Permutation& p, std::size_t first, std::size_t last, Rng& rng)
{
    std::shuffle(p.begin() + first, p.begin() + last + 1, rng);
}

void mutate(Permutation& genome, MutationOp op, double prob, Rng& rng)
{
    if (!chance(rng, prob)) return;
    const auto n = genome.size();
    if (n < 2) return;
    const auto [i, j] = random_proper_segment(n, rng);
    switch (op) {
    case MutationOp::Swap: swap_positions(genome, i, j); break;
    case MutationOp::Insert:
        if (chance(rng, 50)) move_element(genome, i, j);
        else move_element(genome, j, i);
        break;
    case MutationOp::Scramble: scramble_segment(genome, i, j, rng); break;
    case MutationOp::Inversion: reverse_segment(genome, i, j); break;
    }
}

} // namespace privopt
