// Test-only oracles and generators. Everything here recomputes results by a
// route independent of the library implementation it checks: adjacency-list
// counting instead of mask popcounts, hypothesis enumeration instead of the
// factorized shattering decision, and so on.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "msyds/dynamics.hpp"
#include "msyds/graph.hpp"
#include "msyds/learner.hpp"
#include "msyds/rng.hpp"

namespace msyds_test {

using namespace msyds;

inline std::vector<LayerEdge> random_edges(int n, int k, double p, Rng& rng) {
    std::vector<LayerEdge> edges;
    for (Layer i = 0; i < k; ++i)
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rand_bernoulli(rng, p))
                    edges.push_back({i, u, v});
    return edges;
}

inline std::shared_ptr<const MultilayerNetwork> random_network(int n, int k, double p,
                                                               Rng& rng) {
    return std::make_shared<const MultilayerNetwork>(n, k, random_edges(n, k, p, rng));
}

inline Configuration random_config(int n, Rng& rng) {
    Configuration c(n);
    for (Vertex v = 0; v < n; ++v)
        if (rand_bernoulli(rng, 0.5))
            c.set_bit(v, true);
    return c;
}

inline std::vector<Configuration> random_distinct_configs(int n, int count, Rng& rng) {
    std::set<Configuration> seen;
    while (static_cast<int>(seen.size()) < count)
        seen.insert(random_config(n, rng));
    return {seen.begin(), seen.end()};
}

inline std::vector<Vertex> random_subset(int n, int size, Rng& rng) {
    std::vector<Vertex> pool(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        pool[static_cast<std::size_t>(v)] = v;
    for (int j = 0; j < size; ++j) {
        const int pick =
            j + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n - j)));
        std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick)]);
    }
    pool.resize(static_cast<std::size_t>(size));
    std::sort(pool.begin(), pool.end());
    return pool;
}

/// Score by direct adjacency counting; no masks, no popcount.
inline int naive_score(const MultilayerNetwork& net, const Configuration& c, Vertex v,
                       Layer i) {
    int total = c.bit(v) ? 1 : 0;
    for (Vertex u : net.neighbors(v, i))
        if (c.bit(u))
            ++total;
    return total;
}

/// Direct single-layer threshold evaluator: no master-function indirection.
inline Configuration naive_single_layer_successor(const MultilayerNetwork& net,
                                                  std::span<const int> tau,
                                                  const Configuration& c) {
    Configuration out(net.vertex_count());
    for (Vertex v = 0; v < net.vertex_count(); ++v)
        out.set_bit(v, naive_score(net, c, v, 0) >= tau[static_cast<std::size_t>(v)]);
    return out;
}

inline Configuration naive_successor(const MultilayerNetwork& net, MasterKind master,
                                     std::span<const int> tau, const Configuration& c) {
    const int n = net.vertex_count();
    const int k = net.layer_count();
    Configuration out(n);
    for (Vertex v = 0; v < n; ++v) {
        bool fired = master == MasterKind::And;
        for (Layer i = 0; i < k; ++i) {
            const bool layer_fires =
                naive_score(net, c, v, i) >= tau[static_cast<std::size_t>(i) * n + v];
            fired = master == MasterKind::Or ? (fired || layer_fires)
                                             : (fired && layer_fires);
        }
        out.set_bit(v, fired);
    }
    return out;
}

/// Union-graph average degree via plain vertex sets.
inline double naive_merged_average_degree(const MultilayerNetwork& net,
                                          std::span<const Vertex> vset) {
    double total = 0.0;
    for (Vertex v : vset) {
        std::set<Vertex> merged;
        for (Layer i = 0; i < net.layer_count(); ++i)
            for (Vertex u : net.neighbors(v, i))
                merged.insert(u);
        total += static_cast<double>(merged.size());
    }
    return total / static_cast<double>(vset.size());
}

/// Number of hypotheses the brute-force decision below would enumerate;
/// callers skip instances where this explodes.
inline long long hypothesis_count(const LearningProblem& problem) {
    long long count = 1;
    for (Vertex v : problem.unknown())
        for (Layer i = 0; i < problem.network().layer_count(); ++i) {
            count *= problem.network().degree(v, i) + 3;
            if (count > (1LL << 40))
                return count;
        }
    return count;
}

/// Definition-level shattering decision: enumerate every hypothesis in the
/// class, collect the achievable label tuples over R, then search for
/// associated pairs whose full product cube lies inside the achievable set.
/// Tuples are packed into an integer (n bits per coordinate), so this only
/// works for |R| * n <= 24. Exponential in everything; keep instances tiny.
inline bool brute_force_shattered(const LearningProblem& problem,
                                  std::span<const Configuration> r) {
    const MultilayerNetwork& net = problem.network();
    const int n = net.vertex_count();
    const int k = net.layer_count();
    const int entries = static_cast<int>(r.size());
    if (entries == 0)
        return true;
    if (entries * n > 24)
        throw std::invalid_argument("brute_force_shattered: instance too large to encode");

    std::vector<std::pair<Layer, Vertex>> slots;
    for (Vertex v : problem.unknown())
        for (Layer i = 0; i < k; ++i)
            slots.emplace_back(i, v);

    std::vector<int> tau(static_cast<std::size_t>(n) * k, 0);
    for (Layer i = 0; i < k; ++i)
        for (Vertex v = 0; v < n; ++v)
            if (!problem.is_unknown(v))
                tau[static_cast<std::size_t>(i) * n + v] = problem.known_threshold(v, i);

    auto encode = [n](const Configuration& c) {
        unsigned bits = 0;
        for (int v = 0; v < n; ++v)
            if (c.bit(v))
                bits |= 1u << v;
        return bits;
    };

    std::vector<char> achievable(static_cast<std::size_t>(1)
                                 << (static_cast<unsigned>(entries * n)));
    std::vector<std::set<unsigned>> coord_values(static_cast<std::size_t>(entries));
    std::vector<int> choice(slots.size(), 0);
    while (true) {
        for (std::size_t s = 0; s < slots.size(); ++s)
            tau[static_cast<std::size_t>(slots[s].first) * n + slots[s].second] = choice[s];
        unsigned key = 0;
        for (int j = 0; j < entries; ++j) {
            const unsigned succ = encode(
                naive_successor(net, problem.master(), tau, r[static_cast<std::size_t>(j)]));
            key |= succ << (static_cast<unsigned>(j) * static_cast<unsigned>(n));
            coord_values[static_cast<std::size_t>(j)].insert(succ);
        }
        achievable[key] = 1;

        std::size_t pos = 0;
        while (pos < slots.size()) {
            const int limit = net.degree(slots[pos].second, slots[pos].first) + 2;
            if (++choice[pos] <= limit)
                break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == slots.size())
            break;
    }

    std::vector<std::vector<unsigned>> values(static_cast<std::size_t>(entries));
    for (int j = 0; j < entries; ++j)
        values[static_cast<std::size_t>(j)].assign(coord_values[static_cast<std::size_t>(j)].begin(),
                                                   coord_values[static_cast<std::size_t>(j)].end());

    std::vector<std::pair<unsigned, unsigned>> pick(static_cast<std::size_t>(entries));
    auto search = [&](auto&& self, int j) -> bool {
        if (j == entries) {
            for (unsigned phi = 0; phi < (1u << entries); ++phi) {
                unsigned key = 0;
                for (int l = 0; l < entries; ++l) {
                    const auto& [a, b] = pick[static_cast<std::size_t>(l)];
                    key |= (((phi >> l) & 1u) ? a : b)
                           << (static_cast<unsigned>(l) * static_cast<unsigned>(n));
                }
                if (!achievable[key])
                    return false;
            }
            return true;
        }
        const auto& vals = values[static_cast<std::size_t>(j)];
        for (std::size_t a = 0; a < vals.size(); ++a)
            for (std::size_t b = a + 1; b < vals.size(); ++b) {
                pick[static_cast<std::size_t>(j)] = {vals[a], vals[b]};
                if (self(self, j + 1))
                    return true;
            }
        return false;
    };
    return search(search, 0);
}

}  // namespace msyds_test
