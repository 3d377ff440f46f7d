#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "msyds/rng.hpp"

namespace msyds {

using Vertex = int;
using Layer = int;

/// A (vertex, layer) pair, the unit the Q-set and PNN machinery works with.
struct VertexLayerPair {
    Vertex v = 0;
    Layer i = 0;

    friend bool operator==(const VertexLayerPair&, const VertexLayerPair&) = default;
    friend auto operator<=>(const VertexLayerPair&, const VertexLayerPair&) = default;
};

/// One undirected edge in one layer.
struct LayerEdge {
    Layer layer = 0;
    Vertex u = 0;
    Vertex v = 0;
};

/// Raised by the file loaders; message names the offending line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// k undirected edge sets over a shared vertex set {0, ..., n-1}.
///
/// Neighbor lists are kept sorted so set operations on neighborhoods are
/// deterministic and mergeable in O(deg). Closed neighborhoods are also
/// cached as packed bit masks, which is what the score and subset checks
/// run on. Instances are immutable after construction and safe to share
/// across threads.
class MultilayerNetwork {
public:
    /// Builds and validates a network. Throws std::invalid_argument on
    /// self-loops, duplicate edges within a layer, or out-of-range ids.
    MultilayerNetwork(int n, int k, const std::vector<LayerEdge>& edges);

    int vertex_count() const { return n_; }
    int layer_count() const { return k_; }

    std::span<const Vertex> neighbors(Vertex v, Layer i) const;
    int degree(Vertex v, Layer i) const;

    /// neighbors(v, i) plus v itself, sorted.
    std::vector<Vertex> closed_neighborhood(Vertex v, Layer i) const;

    /// Packed bit mask of the closed neighborhood, words_per_config() words.
    std::span<const std::uint64_t> neighborhood_mask(Vertex v, Layer i) const;

    std::size_t edge_count(Layer i) const;
    std::size_t edge_count() const;

    int words_per_config() const { return words_; }

    /// Writes the edge-list format, edges sorted by (layer, min, max).
    void serialize(std::ostream& out) const;

    friend bool operator==(const MultilayerNetwork&, const MultilayerNetwork&);

private:
    void check_vertex_layer(Vertex v, Layer i) const;

    int n_ = 0;
    int k_ = 0;
    int words_ = 0;
    std::vector<std::vector<std::vector<Vertex>>> adj_;  // [layer][vertex] sorted
    std::vector<std::uint64_t> masks_;                   // [layer][vertex][word]
};

/// Result of loading an edge-list stream. `labels` maps vertex id to its
/// original name when the file used non-integer vertex labels; it is empty
/// for plain integer files.
struct LoadedEdgeList {
    MultilayerNetwork net;
    std::vector<std::string> labels;
};

/// Parses the edge-list format: a "n k" header, then "i u v" lines, with
/// '#' comments. Throws ParseError naming the line on malformed input,
/// out-of-range ids, self-loops, or duplicate edges.
LoadedEdgeList load_edge_list(std::istream& in);
LoadedEdgeList load_edge_list_file(const std::string& path);

void save_edge_list_file(const MultilayerNetwork& net, const std::string& path);

/// k-layer Gnp: every possible edge of every layer realized independently
/// with probability edge_prob. Deterministic for a fixed generator state.
MultilayerNetwork generate_multi_gnp(int n, int k, double edge_prob, Rng& rng);

/// Mean degree of `vset` in the union graph (layers merged, parallel edges
/// removed). Throws std::invalid_argument on an empty vset.
double merged_average_degree(const MultilayerNetwork& net, std::span<const Vertex> vset);

/// a subseteq b over equal-length packed masks, early exit on a miss.
bool mask_subset(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

}  // namespace msyds
