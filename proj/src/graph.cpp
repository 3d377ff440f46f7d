#include "msyds/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace msyds {

namespace {

bool parse_int(std::string_view token, long long& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok)
        tokens.push_back(tok);
    return tokens;
}

}  // namespace

MultilayerNetwork::MultilayerNetwork(int n, int k, const std::vector<LayerEdge>& edges)
    : n_(n), k_(k) {
    if (n < 1)
        throw std::invalid_argument("MultilayerNetwork: need at least one vertex");
    if (k < 1)
        throw std::invalid_argument("MultilayerNetwork: need at least one layer");
    words_ = (n + 63) / 64;

    adj_.assign(k_, std::vector<std::vector<Vertex>>(n_));
    for (const LayerEdge& e : edges) {
        if (e.layer < 0 || e.layer >= k_)
            throw std::invalid_argument("MultilayerNetwork: layer index out of range");
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw std::invalid_argument("MultilayerNetwork: vertex id out of range");
        if (e.u == e.v)
            throw std::invalid_argument("MultilayerNetwork: self-loop");
        adj_[e.layer][e.u].push_back(e.v);
        adj_[e.layer][e.v].push_back(e.u);
    }
    for (int i = 0; i < k_; ++i) {
        for (int v = 0; v < n_; ++v) {
            auto& list = adj_[i][v];
            std::sort(list.begin(), list.end());
            if (std::adjacent_find(list.begin(), list.end()) != list.end())
                throw std::invalid_argument("MultilayerNetwork: duplicate edge within a layer");
        }
    }

    masks_.assign(static_cast<std::size_t>(k_) * n_ * words_, 0);
    for (int i = 0; i < k_; ++i) {
        for (int v = 0; v < n_; ++v) {
            std::uint64_t* mask = masks_.data() + (static_cast<std::size_t>(i) * n_ + v) * words_;
            mask[v / 64] |= std::uint64_t{1} << (v % 64);
            for (Vertex u : adj_[i][v])
                mask[u / 64] |= std::uint64_t{1} << (u % 64);
        }
    }
}

void MultilayerNetwork::check_vertex_layer(Vertex v, Layer i) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("vertex id out of range");
    if (i < 0 || i >= k_)
        throw std::invalid_argument("layer index out of range");
}

std::span<const Vertex> MultilayerNetwork::neighbors(Vertex v, Layer i) const {
    check_vertex_layer(v, i);
    return adj_[i][v];
}

int MultilayerNetwork::degree(Vertex v, Layer i) const {
    check_vertex_layer(v, i);
    return static_cast<int>(adj_[i][v].size());
}

std::vector<Vertex> MultilayerNetwork::closed_neighborhood(Vertex v, Layer i) const {
    check_vertex_layer(v, i);
    std::vector<Vertex> result = adj_[i][v];
    auto pos = std::lower_bound(result.begin(), result.end(), v);
    result.insert(pos, v);
    return result;
}

std::span<const std::uint64_t> MultilayerNetwork::neighborhood_mask(Vertex v, Layer i) const {
    check_vertex_layer(v, i);
    return {masks_.data() + (static_cast<std::size_t>(i) * n_ + v) * words_,
            static_cast<std::size_t>(words_)};
}

std::size_t MultilayerNetwork::edge_count(Layer i) const {
    if (i < 0 || i >= k_)
        throw std::invalid_argument("layer index out of range");
    std::size_t total = 0;
    for (int v = 0; v < n_; ++v)
        total += adj_[i][v].size();
    return total / 2;
}

std::size_t MultilayerNetwork::edge_count() const {
    std::size_t total = 0;
    for (int i = 0; i < k_; ++i)
        total += edge_count(i);
    return total;
}

void MultilayerNetwork::serialize(std::ostream& out) const {
    out << n_ << ' ' << k_ << '\n';
    for (int i = 0; i < k_; ++i)
        for (int u = 0; u < n_; ++u)
            for (Vertex v : adj_[i][u])
                if (u < v)
                    out << i << ' ' << u << ' ' << v << '\n';
}

bool operator==(const MultilayerNetwork& a, const MultilayerNetwork& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.adj_ == b.adj_;
}

LoadedEdgeList load_edge_list(std::istream& in) {
    struct RawLine {
        int number;
        std::vector<std::string> tokens;
    };

    std::vector<RawLine> data_lines;
    long long n = -1, k = -1;
    int header_line = 0;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#')
            continue;
        std::vector<std::string> tokens = split_ws(line);
        if (tokens.empty())
            continue;
        if (n < 0) {
            if (tokens.size() != 2 || !parse_int(tokens[0], n) || !parse_int(tokens[1], k))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header \"n k\"");
            if (n < 1 || k < 1)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": header requires n >= 1 and k >= 1");
            header_line = line_no;
            continue;
        }
        if (tokens.size() != 3)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected \"i u v\"");
        data_lines.push_back({line_no, std::move(tokens)});
    }
    if (n < 0)
        throw ParseError("line " + std::to_string(line_no + 1) +
                         ": missing \"n k\" header");
    (void)header_line;

    // Vertex tokens may be arbitrary labels. If every one parses as an
    // integer the file is treated as using ids directly; otherwise a label
    // table maps names to dense ids in order of first appearance.
    bool integer_ids = true;
    for (const RawLine& rl : data_lines) {
        long long tmp;
        if (!parse_int(rl.tokens[1], tmp) || !parse_int(rl.tokens[2], tmp)) {
            integer_ids = false;
            break;
        }
    }

    std::vector<std::string> labels;
    std::unordered_map<std::string, Vertex> label_ids;
    auto vertex_of = [&](const std::string& token, int line_number) -> Vertex {
        if (integer_ids) {
            long long id;
            parse_int(token, id);
            if (id < 0 || id >= n)
                throw ParseError("line " + std::to_string(line_number) +
                                 ": vertex id " + token + " out of range [0, " +
                                 std::to_string(n) + ")");
            return static_cast<Vertex>(id);
        }
        auto it = label_ids.find(token);
        if (it != label_ids.end())
            return it->second;
        if (static_cast<long long>(labels.size()) == n)
            throw ParseError("line " + std::to_string(line_number) +
                             ": more than " + std::to_string(n) + " distinct vertex labels");
        Vertex id = static_cast<Vertex>(labels.size());
        labels.push_back(token);
        label_ids.emplace(token, id);
        return id;
    };

    std::vector<LayerEdge> edges;
    edges.reserve(data_lines.size());
    std::set<std::tuple<Layer, Vertex, Vertex>> seen;
    for (const RawLine& rl : data_lines) {
        long long layer;
        if (!parse_int(rl.tokens[0], layer))
            throw ParseError("line " + std::to_string(rl.number) +
                             ": layer index must be an integer");
        if (layer < 0 || layer >= k)
            throw ParseError("line " + std::to_string(rl.number) +
                             ": layer index " + rl.tokens[0] + " out of range [0, " +
                             std::to_string(k) + ")");
        Vertex u = vertex_of(rl.tokens[1], rl.number);
        Vertex v = vertex_of(rl.tokens[2], rl.number);
        if (u == v)
            throw ParseError("line " + std::to_string(rl.number) + ": self-loop");
        auto key = std::make_tuple(static_cast<Layer>(layer), std::min(u, v), std::max(u, v));
        if (!seen.insert(key).second)
            throw ParseError("line " + std::to_string(rl.number) + ": duplicate edge");
        edges.push_back({static_cast<Layer>(layer), u, v});
    }

    return {MultilayerNetwork(static_cast<int>(n), static_cast<int>(k), edges),
            std::move(labels)};
}

LoadedEdgeList load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open edge-list file: " + path);
    return load_edge_list(in);
}

void save_edge_list_file(const MultilayerNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write edge-list file: " + path);
    net.serialize(out);
}

MultilayerNetwork generate_multi_gnp(int n, int k, double edge_prob, Rng& rng) {
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
        throw std::invalid_argument("generate_multi_gnp: edge_prob must be in [0, 1]");
    std::vector<LayerEdge> edges;
    for (Layer i = 0; i < k; ++i)
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rand_bernoulli(rng, edge_prob))
                    edges.push_back({i, u, v});
    return MultilayerNetwork(n, k, edges);
}

double merged_average_degree(const MultilayerNetwork& net, std::span<const Vertex> vset) {
    if (vset.empty())
        throw std::invalid_argument("merged_average_degree: empty vertex set");
    const int k = net.layer_count();
    const int words = net.words_per_config();
    long long total = 0;
    std::vector<std::uint64_t> merged(words);
    for (Vertex v : vset) {
        auto base = net.neighborhood_mask(v, 0);
        std::copy(base.begin(), base.end(), merged.begin());
        for (Layer i = 1; i < k; ++i) {
            auto mask = net.neighborhood_mask(v, i);
            for (int w = 0; w < words; ++w)
                merged[w] |= mask[w];
        }
        int closed = 0;
        for (int w = 0; w < words; ++w)
            closed += std::popcount(merged[w]);
        total += closed - 1;  // drop v itself
    }
    return static_cast<double>(total) / static_cast<double>(vset.size());
}

bool mask_subset(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    for (std::size_t w = 0; w < a.size(); ++w)
        if (a[w] & ~b[w])
            return false;
    return true;
}

}  // namespace msyds
