#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "msyds/dynamics.hpp"
#include "msyds/graph.hpp"
#include "msyds/learner.hpp"
#include "msyds/rng.hpp"

namespace msyds {

/// A candidate shatterable set: distinct configurations, optionally with the
/// two associated configurations and a contested-vertex witness per entry.
struct ShatterCandidate {
    std::vector<Configuration> entries;
    std::vector<std::pair<Configuration, Configuration>> assoc;  // empty or |entries|
    std::vector<std::vector<Vertex>> contested;                  // empty or |entries|
};

/// Vertex-layer pairs with pairwise non-nested closed neighborhoods.
struct QSet {
    std::vector<VertexLayerPair> pairs;
};

/// Size limits for the exhaustive shattering decision; exceeding them raises
/// GuardExceededError instead of silently truncating.
struct OracleGuard {
    int max_entries = 12;
    int max_vertices = 16;
};

class GuardExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Single-layer notion: v's score under entry idx differs from its score
/// under every other entry of R. Throws on a multilayer network.
bool is_landmark(const MultilayerNetwork& net, std::span<const Configuration> r, int idx,
                 Vertex v);

/// Single-layer canonical check: an injective entry -> landmark-vertex
/// mapping (found by augmenting-path bipartite matching, deterministic entry
/// order). Returns the mapping when one exists.
std::optional<std::vector<Vertex>> is_canonical(const MultilayerNetwork& net,
                                                std::span<const Configuration> r,
                                                std::span<const Vertex> unknown);

/// Depth-first traversal of the subgraph induced on the unknown set,
/// restarting per component at the lowest unvisited vertex, neighbors in
/// ascending order. On each first visit the emitted configuration sets
/// exactly the vertices currently on the stack (the visited vertex
/// included). The result has sigma entries and is always canonical.
std::vector<Configuration> dfs_canonical_set(const MultilayerNetwork& net,
                                             std::span<const Vertex> unknown);

/// Exhaustive small-instance shattering decision: true iff some assignment
/// of associated pairs makes r shattered by the problem's hypothesis class.
/// Factorizes over vertices: a vertex's next state depends only on its own
/// thresholds and scores, so per-vertex contested sets are searched
/// independently and combined by a set-cover pass.
bool shatter_oracle(const LearningProblem& problem, std::span<const Configuration> r,
                    const OracleGuard& guard = {});

/// True iff every ordered pair of distinct entries has a nonempty closed
/// neighborhood difference.
bool q_set_check(const MultilayerNetwork& net, std::span<const Vertex> unknown,
                 std::span<const VertexLayerPair> pairs);

/// The constructive half of the Q-set correspondence: entry for (v, i) is
/// the indicator of N[v, i]; associated pair is (indicator of {v}, zeros);
/// the contested witness is v itself.
ShatterCandidate shatterable_from_qset(const MultilayerNetwork& net, const QSet& q);

/// Greedy coloring of the conflict graph over all sigma*k vertex-layer
/// pairs (edge when one closed neighborhood nests in the other), highest
/// conflict degree first. Every color class is pairwise non-nested, i.e. a
/// valid Q-set; the largest one certifies the lower bound.
std::vector<QSet> pnn_color_classes(const MultilayerNetwork& net,
                                    std::span<const Vertex> unknown);

/// Size of the largest color class: a lower bound on Ndim.
int pnn_lower_bound(const MultilayerNetwork& net, std::span<const Vertex> unknown);

/// max(0, 1 - 4 (sigma k)^2 (3/4)^n): lower bound on the proportion of
/// k-layer graphs admitting a full Q-set of size sigma k.
double qset_proportion_bound(long long n, long long k, long long sigma);

/// Monte-Carlo companion: fraction of uniformly random k-layer graphs
/// (edge probability 1/2) whose full vertex-layer pair set over
/// {0, ..., sigma-1} passes q_set_check.
double estimate_full_qset_probability(int n, int k, int sigma, int trials, Rng& rng);

/// Q-set file: "v i" lines, '#' comments.
QSet load_qset(std::istream& in);
void save_qset(std::ostream& out, const QSet& q);

/// Candidate file: blocks separated by blank lines; each block is the entry
/// bit string alone, or entry, CA, CB on three lines.
ShatterCandidate load_candidate(std::istream& in);
void save_candidate(std::ostream& out, const ShatterCandidate& cand);

}  // namespace msyds
