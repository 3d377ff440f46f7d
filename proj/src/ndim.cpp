#include "msyds/ndim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace msyds {

namespace {

void require_single_layer(const MultilayerNetwork& net, const char* who) {
    if (net.layer_count() != 1)
        throw std::invalid_argument(std::string(who) + ": requires a single-layer network");
}

void require_distinct_entries(std::span<const Configuration> r, const char* who) {
    for (std::size_t a = 0; a < r.size(); ++a)
        for (std::size_t b = a + 1; b < r.size(); ++b)
            if (r[a] == r[b])
                throw std::invalid_argument(std::string(who) + ": entries must be distinct");
}

void require_entry_sizes(std::span<const Configuration> r, int n, const char* who) {
    for (const Configuration& c : r)
        if (c.size() != n)
            throw std::invalid_argument(std::string(who) +
                                        ": entry length does not match the network");
}

std::vector<Vertex> checked_unknown(const MultilayerNetwork& net,
                                    std::span<const Vertex> unknown, const char* who) {
    std::vector<Vertex> sorted(unknown.begin(), unknown.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument(std::string(who) + ": duplicate unknown vertex");
    for (Vertex v : sorted)
        if (v < 0 || v >= net.vertex_count())
            throw std::invalid_argument(std::string(who) + ": unknown vertex out of range");
    return sorted;
}

}  // namespace

bool is_landmark(const MultilayerNetwork& net, std::span<const Configuration> r, int idx,
                 Vertex v) {
    require_single_layer(net, "is_landmark");
    require_entry_sizes(r, net.vertex_count(), "is_landmark");
    require_distinct_entries(r, "is_landmark");
    if (idx < 0 || idx >= static_cast<int>(r.size()))
        throw std::invalid_argument("is_landmark: entry index out of range");
    const int own = score(net, r[static_cast<std::size_t>(idx)], v, 0);
    for (std::size_t j = 0; j < r.size(); ++j)
        if (static_cast<int>(j) != idx && score(net, r[j], v, 0) == own)
            return false;
    return true;
}

std::optional<std::vector<Vertex>> is_canonical(const MultilayerNetwork& net,
                                                std::span<const Configuration> r,
                                                std::span<const Vertex> unknown) {
    require_single_layer(net, "is_canonical");
    require_entry_sizes(r, net.vertex_count(), "is_canonical");
    require_distinct_entries(r, "is_canonical");
    const std::vector<Vertex> vs = checked_unknown(net, unknown, "is_canonical");

    const int entries = static_cast<int>(r.size());
    if (entries == 0)
        return std::vector<Vertex>{};
    if (entries > static_cast<int>(vs.size()))
        return std::nullopt;  // pigeonhole

    // Landmark lists per entry: vs-index of every unknown vertex whose score
    // under this entry is unique within r.
    std::vector<std::vector<int>> landmarks(static_cast<std::size_t>(entries));
    for (std::size_t vi = 0; vi < vs.size(); ++vi) {
        std::vector<int> scores(static_cast<std::size_t>(entries));
        for (int j = 0; j < entries; ++j)
            scores[static_cast<std::size_t>(j)] = score(net, r[static_cast<std::size_t>(j)], vs[vi], 0);
        for (int j = 0; j < entries; ++j) {
            bool unique = true;
            for (int l = 0; l < entries && unique; ++l)
                if (l != j && scores[static_cast<std::size_t>(l)] == scores[static_cast<std::size_t>(j)])
                    unique = false;
            if (unique)
                landmarks[static_cast<std::size_t>(j)].push_back(static_cast<int>(vi));
        }
    }

    // Kuhn's augmenting paths, entries in order.
    std::vector<int> match_of_vertex(vs.size(), -1);
    std::vector<int> match_of_entry(static_cast<std::size_t>(entries), -1);
    std::vector<char> visited(vs.size());
    auto augment = [&](auto&& self, int entry) -> bool {
        for (int vi : landmarks[static_cast<std::size_t>(entry)]) {
            if (visited[static_cast<std::size_t>(vi)])
                continue;
            visited[static_cast<std::size_t>(vi)] = 1;
            if (match_of_vertex[static_cast<std::size_t>(vi)] == -1 ||
                self(self, match_of_vertex[static_cast<std::size_t>(vi)])) {
                match_of_vertex[static_cast<std::size_t>(vi)] = entry;
                match_of_entry[static_cast<std::size_t>(entry)] = vi;
                return true;
            }
        }
        return false;
    };
    for (int j = 0; j < entries; ++j) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, j))
            return std::nullopt;
    }

    std::vector<Vertex> mapping(static_cast<std::size_t>(entries));
    for (int j = 0; j < entries; ++j)
        mapping[static_cast<std::size_t>(j)] = vs[static_cast<std::size_t>(match_of_entry[static_cast<std::size_t>(j)])];
    return mapping;
}

std::vector<Configuration> dfs_canonical_set(const MultilayerNetwork& net,
                                             std::span<const Vertex> unknown) {
    require_single_layer(net, "dfs_canonical_set");
    const std::vector<Vertex> vs = checked_unknown(net, unknown, "dfs_canonical_set");
    if (vs.empty())
        throw std::invalid_argument("dfs_canonical_set: unknown set must be nonempty");
    const int n = net.vertex_count();

    std::vector<char> in_unknown(static_cast<std::size_t>(n), 0);
    for (Vertex v : vs)
        in_unknown[static_cast<std::size_t>(v)] = 1;
    // Induced adjacency, ascending, so traversal order is reproducible.
    std::vector<std::vector<Vertex>> induced(static_cast<std::size_t>(n));
    for (Vertex v : vs)
        for (Vertex u : net.neighbors(v, 0))
            if (in_unknown[static_cast<std::size_t>(u)])
                induced[static_cast<std::size_t>(v)].push_back(u);

    std::vector<Configuration> result;
    result.reserve(vs.size());
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    Configuration on_stack(n);

    struct Frame {
        Vertex v;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    for (Vertex start : vs) {
        if (visited[static_cast<std::size_t>(start)])
            continue;
        visited[static_cast<std::size_t>(start)] = 1;
        on_stack.set_bit(start, true);
        result.push_back(on_stack);
        stack.push_back({start});
        while (!stack.empty()) {
            Frame& top = stack.back();
            const auto& adj = induced[static_cast<std::size_t>(top.v)];
            bool descended = false;
            while (top.next < adj.size()) {
                const Vertex u = adj[top.next++];
                if (!visited[static_cast<std::size_t>(u)]) {
                    visited[static_cast<std::size_t>(u)] = 1;
                    on_stack.set_bit(u, true);
                    result.push_back(on_stack);
                    stack.push_back({u});
                    descended = true;
                    break;
                }
            }
            if (!descended && !stack.empty() && stack.back().next >= induced[static_cast<std::size_t>(stack.back().v)].size()) {
                on_stack.set_bit(stack.back().v, false);
                stack.pop_back();
            }
        }
    }
    return result;
}

namespace {

// Feasibility of one demanded labeling for one vertex, given its per-entry
// per-layer scores. OR: thresholds are forced up just past every 0-demand,
// then every 1-demand must still clear some layer. AND is the dual.
bool labeling_feasible(const std::vector<std::vector<int>>& scores,
                       const std::vector<int>& degs, bool is_or, unsigned labeling,
                       int entries, int k, std::vector<int>& tau_scratch) {
    tau_scratch.assign(static_cast<std::size_t>(k), 0);
    if (is_or) {
        for (int i = 0; i < k; ++i) {
            int hi = -1;
            for (int j = 0; j < entries; ++j)
                if (!((labeling >> j) & 1u))
                    hi = std::max(hi, scores[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            tau_scratch[static_cast<std::size_t>(i)] = hi + 1;
        }
        for (int j = 0; j < entries; ++j) {
            if (!((labeling >> j) & 1u))
                continue;
            bool fires = false;
            for (int i = 0; i < k && !fires; ++i)
                fires = scores[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] >=
                        tau_scratch[static_cast<std::size_t>(i)];
            if (!fires)
                return false;
        }
    } else {
        for (int i = 0; i < k; ++i) {
            int lo = degs[static_cast<std::size_t>(i)] + 2;
            for (int j = 0; j < entries; ++j)
                if ((labeling >> j) & 1u)
                    lo = std::min(lo, scores[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            tau_scratch[static_cast<std::size_t>(i)] = lo;
        }
        for (int j = 0; j < entries; ++j) {
            if ((labeling >> j) & 1u)
                continue;
            bool blocked = false;
            for (int i = 0; i < k && !blocked; ++i)
                blocked = scores[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] <
                          tau_scratch[static_cast<std::size_t>(i)];
            if (!blocked)
                return false;
        }
    }
    return true;
}

}  // namespace

bool shatter_oracle(const LearningProblem& problem, std::span<const Configuration> r,
                    const OracleGuard& guard) {
    const MultilayerNetwork& net = problem.network();
    const int n = net.vertex_count();
    const int k = net.layer_count();
    const int entries = static_cast<int>(r.size());
    // Hard cap regardless of the configured guard: subset enumeration packs
    // entry labelings into an unsigned and materializes 2^|R| tables.
    if (entries > std::min(guard.max_entries, 24))
        throw GuardExceededError("shatter_oracle: candidate set of size " +
                                 std::to_string(entries) + " exceeds the guard (" +
                                 std::to_string(std::min(guard.max_entries, 24)) + ")");
    if (n > guard.max_vertices)
        throw GuardExceededError("shatter_oracle: network of size " + std::to_string(n) +
                                 " exceeds the guard (" + std::to_string(guard.max_vertices) +
                                 ")");
    require_entry_sizes(r, n, "shatter_oracle");
    require_distinct_entries(r, "shatter_oracle");
    if (entries == 0)
        return true;

    const bool is_or = problem.master() == MasterKind::Or;
    const unsigned full = (1u << entries) - 1u;

    // Per unknown vertex: the downward-closed family of contested sets S for
    // which some fixed labeling outside S makes all 2^|S| demands feasible.
    // Vertices outside the unknown set have forced next states and never
    // contribute a contested entry, so they drop out entirely.
    std::vector<std::vector<unsigned>> maximal_per_vertex;
    maximal_per_vertex.reserve(problem.unknown().size());
    std::vector<char> feasible(static_cast<std::size_t>(1) << entries);
    std::vector<char> admissible(static_cast<std::size_t>(1) << entries);
    std::vector<int> tau_scratch;

    for (Vertex v : problem.unknown()) {
        std::vector<std::vector<int>> scores(static_cast<std::size_t>(entries),
                                             std::vector<int>(static_cast<std::size_t>(k)));
        std::vector<int> degs(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            degs[static_cast<std::size_t>(i)] = net.degree(v, i);
        for (int j = 0; j < entries; ++j)
            for (int i = 0; i < k; ++i)
                scores[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    score(net, r[static_cast<std::size_t>(j)], v, i);

        for (unsigned lab = 0; lab <= full; ++lab)
            feasible[lab] = labeling_feasible(scores, degs, is_or, lab, entries, k, tau_scratch);

        for (unsigned s = 0; s <= full; ++s) {
            const unsigned comp = full & ~s;
            bool found = false;
            // Fixed values g over the complement; all extensions over s must
            // be feasible for s to be admissible.
            for (unsigned g = comp;; g = (g - 1) & comp) {
                bool all_ok = true;
                for (unsigned sub = s;; sub = (sub - 1) & s) {
                    if (!feasible[g | sub]) {
                        all_ok = false;
                        break;
                    }
                    if (sub == 0)
                        break;
                }
                if (all_ok) {
                    found = true;
                    break;
                }
                if (g == 0)
                    break;
            }
            admissible[s] = found;
        }

        // The family is downward closed, so keep only its maximal sets.
        std::vector<unsigned> maximal;
        for (unsigned s = 0; s <= full; ++s) {
            if (!admissible[s])
                continue;
            bool is_max = true;
            for (int b = 0; b < entries && is_max; ++b)
                if (!((s >> b) & 1u) && admissible[s | (1u << b)])
                    is_max = false;
            if (is_max)
                maximal.push_back(s);
        }
        maximal_per_vertex.push_back(std::move(maximal));
    }

    // One contested set per vertex must together cover every entry.
    std::vector<char> reachable(static_cast<std::size_t>(1) << entries, 0);
    reachable[0] = 1;
    for (const auto& options : maximal_per_vertex) {
        std::vector<char> next = reachable;
        for (unsigned cov = 0; cov <= full; ++cov) {
            if (!reachable[cov])
                continue;
            for (unsigned s : options)
                next[cov | s] = 1;
        }
        reachable = std::move(next);
        if (reachable[full])
            return true;
    }
    return false;
}

bool q_set_check(const MultilayerNetwork& net, std::span<const Vertex> unknown,
                 std::span<const VertexLayerPair> pairs) {
    const std::vector<Vertex> vs = checked_unknown(net, unknown, "q_set_check");
    std::set<VertexLayerPair> seen;
    for (const VertexLayerPair& p : pairs) {
        if (p.v < 0 || p.v >= net.vertex_count() || p.i < 0 || p.i >= net.layer_count())
            throw std::invalid_argument("q_set_check: pair out of range");
        if (!std::binary_search(vs.begin(), vs.end(), p.v))
            throw std::invalid_argument("q_set_check: pair vertex not in the unknown set");
        if (!seen.insert(p).second)
            throw std::invalid_argument("q_set_check: duplicate pair");
    }
    for (const VertexLayerPair& a : pairs)
        for (const VertexLayerPair& b : pairs)
            if (a != b &&
                mask_subset(net.neighborhood_mask(a.v, a.i), net.neighborhood_mask(b.v, b.i)))
                return false;  // N[a] \ N[b] is empty
    return true;
}

ShatterCandidate shatterable_from_qset(const MultilayerNetwork& net, const QSet& q) {
    std::set<VertexLayerPair> seen;
    for (const VertexLayerPair& p : q.pairs) {
        if (p.v < 0 || p.v >= net.vertex_count() || p.i < 0 || p.i >= net.layer_count())
            throw std::invalid_argument("shatterable_from_qset: pair out of range");
        if (!seen.insert(p).second)
            throw std::invalid_argument("shatterable_from_qset: duplicate pair");
    }
    for (const VertexLayerPair& a : q.pairs)
        for (const VertexLayerPair& b : q.pairs)
            if (a != b &&
                mask_subset(net.neighborhood_mask(a.v, a.i), net.neighborhood_mask(b.v, b.i)))
                throw std::invalid_argument(
                    "shatterable_from_qset: pairs violate the non-nesting condition");

    const int n = net.vertex_count();
    ShatterCandidate cand;
    cand.entries.reserve(q.pairs.size());
    cand.assoc.reserve(q.pairs.size());
    cand.contested.reserve(q.pairs.size());
    const Configuration zeros(n);
    for (const VertexLayerPair& p : q.pairs) {
        cand.entries.push_back(Configuration::from_mask(n, net.neighborhood_mask(p.v, p.i)));
        Configuration ca(n);
        ca.set_bit(p.v, true);
        cand.assoc.emplace_back(std::move(ca), zeros);
        cand.contested.push_back({p.v});
    }
    return cand;
}

std::vector<QSet> pnn_color_classes(const MultilayerNetwork& net,
                                    std::span<const Vertex> unknown) {
    const std::vector<Vertex> vs = checked_unknown(net, unknown, "pnn_color_classes");
    const int k = net.layer_count();
    std::vector<VertexLayerPair> nodes;
    nodes.reserve(vs.size() * static_cast<std::size_t>(k));
    for (Vertex v : vs)
        for (Layer i = 0; i < k; ++i)
            nodes.push_back({v, i});
    const int m = static_cast<int>(nodes.size());
    if (m == 0)
        return {};

    // Conflict edge when one closed neighborhood nests inside the other.
    std::vector<std::vector<int>> conflict(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
        auto ma = net.neighborhood_mask(nodes[static_cast<std::size_t>(a)].v,
                                        nodes[static_cast<std::size_t>(a)].i);
        for (int b = a + 1; b < m; ++b) {
            auto mb = net.neighborhood_mask(nodes[static_cast<std::size_t>(b)].v,
                                            nodes[static_cast<std::size_t>(b)].i);
            if (mask_subset(ma, mb) || mask_subset(mb, ma)) {
                conflict[static_cast<std::size_t>(a)].push_back(b);
                conflict[static_cast<std::size_t>(b)].push_back(a);
            }
        }
    }

    // Greedy coloring, highest conflict degree first, (v, i) order on ties.
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto da = conflict[static_cast<std::size_t>(a)].size();
        const auto db = conflict[static_cast<std::size_t>(b)].size();
        if (da != db)
            return da > db;
        return nodes[static_cast<std::size_t>(a)] < nodes[static_cast<std::size_t>(b)];
    });
    std::vector<int> color(static_cast<std::size_t>(m), -1);
    std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);
    int color_count = 0;
    for (int node : order) {
        for (int nb : conflict[static_cast<std::size_t>(node)])
            if (color[static_cast<std::size_t>(nb)] >= 0)
                used[static_cast<std::size_t>(color[static_cast<std::size_t>(nb)])] = 1;
        int c = 0;
        while (used[static_cast<std::size_t>(c)])
            ++c;
        color[static_cast<std::size_t>(node)] = c;
        color_count = std::max(color_count, c + 1);
        for (int nb : conflict[static_cast<std::size_t>(node)])
            if (color[static_cast<std::size_t>(nb)] >= 0)
                used[static_cast<std::size_t>(color[static_cast<std::size_t>(nb)])] = 0;
    }
    std::vector<QSet> classes(static_cast<std::size_t>(color_count));
    for (int node = 0; node < m; ++node)
        classes[static_cast<std::size_t>(color[static_cast<std::size_t>(node)])]
            .pairs.push_back(nodes[static_cast<std::size_t>(node)]);
    return classes;
}

int pnn_lower_bound(const MultilayerNetwork& net, std::span<const Vertex> unknown) {
    const std::vector<QSet> classes = pnn_color_classes(net, unknown);
    std::size_t best = 0;
    for (const QSet& q : classes)
        best = std::max(best, q.pairs.size());
    return static_cast<int>(best);
}

double qset_proportion_bound(long long n, long long k, long long sigma) {
    if (n < 1)
        throw std::invalid_argument("qset_proportion_bound: n must be >= 1");
    if (k < 2)
        throw std::invalid_argument("qset_proportion_bound: k must be >= 2");
    if (sigma < 1)
        throw std::invalid_argument("qset_proportion_bound: sigma must be >= 1");
    const double sk = static_cast<double>(sigma) * static_cast<double>(k);
    const double raw = 1.0 - 4.0 * sk * sk * std::pow(0.75, static_cast<double>(n));
    return raw < 0.0 ? 0.0 : raw;
}

double estimate_full_qset_probability(int n, int k, int sigma, int trials, Rng& rng) {
    if (trials < 1)
        throw std::invalid_argument("estimate_full_qset_probability: trials must be >= 1");
    if (sigma < 1 || sigma > n)
        throw std::invalid_argument("estimate_full_qset_probability: need 1 <= sigma <= n");
    if (k < 1)
        throw std::invalid_argument("estimate_full_qset_probability: k must be >= 1");
    std::vector<Vertex> unknown(static_cast<std::size_t>(sigma));
    std::iota(unknown.begin(), unknown.end(), 0);
    std::vector<VertexLayerPair> pairs;
    for (Vertex v : unknown)
        for (Layer i = 0; i < k; ++i)
            pairs.push_back({v, i});
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        const MultilayerNetwork net = generate_multi_gnp(n, k, 0.5, rng);
        if (q_set_check(net, unknown, pairs))
            ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

QSet load_qset(std::istream& in) {
    QSet q;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#')
            continue;
        std::istringstream ss(line);
        long long v, i;
        if (!(ss >> v))
            continue;
        if (!(ss >> i))
            throw ParseError("line " + std::to_string(line_no) + ": expected \"v i\"");
        q.pairs.push_back({static_cast<Vertex>(v), static_cast<Layer>(i)});
    }
    return q;
}

void save_qset(std::ostream& out, const QSet& q) {
    for (const VertexLayerPair& p : q.pairs)
        out << p.v << ' ' << p.i << '\n';
}

ShatterCandidate load_candidate(std::istream& in) {
    ShatterCandidate cand;
    std::vector<std::string> block;
    std::string line;
    int line_no = 0;
    int first_block_size = -1;

    auto flush = [&](int at_line) {
        if (block.empty())
            return;
        if (block.size() != 1 && block.size() != 3)
            throw ParseError("line " + std::to_string(at_line) +
                             ": candidate block must have 1 or 3 bit strings");
        if (first_block_size == -1)
            first_block_size = static_cast<int>(block.size());
        else if (first_block_size != static_cast<int>(block.size()))
            throw ParseError("line " + std::to_string(at_line) +
                             ": blocks must uniformly carry associated pairs or not");
        Configuration entry = Configuration::parse(block[0]);
        if (!cand.entries.empty() && entry.size() != cand.entries.front().size())
            throw ParseError("line " + std::to_string(at_line) +
                             ": entry lengths differ between blocks");
        if (block.size() == 3) {
            Configuration ca = Configuration::parse(block[1]);
            Configuration cb = Configuration::parse(block[2]);
            if (ca.size() != entry.size() || cb.size() != entry.size())
                throw ParseError("line " + std::to_string(at_line) +
                                 ": associated configuration length mismatch");
            if (ca == cb)
                throw ParseError("line " + std::to_string(at_line) +
                                 ": associated configurations must differ");
            cand.assoc.emplace_back(std::move(ca), std::move(cb));
        }
        cand.entries.push_back(std::move(entry));
        block.clear();
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#')
            continue;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) {
            flush(line_no);
            continue;
        }
        block.push_back(tok);
    }
    flush(line_no + 1);
    return cand;
}

void save_candidate(std::ostream& out, const ShatterCandidate& cand) {
    if (!cand.assoc.empty() && cand.assoc.size() != cand.entries.size())
        throw std::invalid_argument("save_candidate: assoc size mismatch");
    for (std::size_t j = 0; j < cand.entries.size(); ++j) {
        if (j > 0)
            out << '\n';
        out << cand.entries[j].to_string() << '\n';
        if (!cand.assoc.empty()) {
            out << cand.assoc[j].first.to_string() << '\n';
            out << cand.assoc[j].second.to_string() << '\n';
        }
    }
}

}  // namespace msyds
