#include "msyds/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace msyds {

Configuration Configuration::parse(std::string_view bits) {
    Configuration c(static_cast<int>(bits.size()));
    for (std::size_t v = 0; v < bits.size(); ++v) {
        if (bits[v] == '1')
            c.set_bit(static_cast<Vertex>(v), true);
        else if (bits[v] != '0')
            throw std::invalid_argument("Configuration::parse: expected only '0'/'1'");
    }
    return c;
}

Configuration Configuration::from_mask(int n, std::span<const std::uint64_t> mask) {
    Configuration c(n);
    if (mask.size() != c.words_.size())
        throw std::invalid_argument("Configuration::from_mask: word count mismatch");
    std::copy(mask.begin(), mask.end(), c.words_.begin());
    return c;
}

int Configuration::count_ones() const {
    int total = 0;
    for (std::uint64_t w : words_)
        total += std::popcount(w);
    return total;
}

Configuration Configuration::complemented() const {
    Configuration c(n_);
    for (std::size_t w = 0; w < words_.size(); ++w)
        c.words_[w] = ~words_[w];
    const int tail = n_ % 64;
    if (tail != 0)
        c.words_.back() &= (std::uint64_t{1} << tail) - 1;
    return c;
}

std::string Configuration::to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int v = 0; v < n_; ++v)
        if (bit(v))
            s[static_cast<std::size_t>(v)] = '1';
    return s;
}

MasterKind parse_master_kind(std::string_view text) {
    if (text == "or" || text == "OR")
        return MasterKind::Or;
    if (text == "and" || text == "AND")
        return MasterKind::And;
    throw std::invalid_argument("master kind must be \"or\" or \"and\"");
}

std::string to_string(MasterKind master) {
    return master == MasterKind::Or ? "or" : "and";
}

namespace {

inline int score_unchecked(const MultilayerNetwork& net, const Configuration& c, Vertex v,
                           Layer i) {
    auto mask = net.neighborhood_mask(v, i);
    auto words = c.words();
    int total = 0;
    for (std::size_t w = 0; w < mask.size(); ++w)
        total += std::popcount(mask[w] & words[w]);
    return total;
}

}  // namespace

int score(const MultilayerNetwork& net, const Configuration& c, Vertex v, Layer i) {
    if (c.size() != net.vertex_count())
        throw std::invalid_argument("score: configuration length mismatch");
    return score_unchecked(net, c, v, i);
}

ThresholdSystem::ThresholdSystem(std::shared_ptr<const MultilayerNetwork> net,
                                 MasterKind master, std::vector<int> tau)
    : net_(std::move(net)), master_(master), tau_(std::move(tau)) {
    if (!net_)
        throw std::invalid_argument("ThresholdSystem: null network");
    const int n = net_->vertex_count();
    const int k = net_->layer_count();
    if (tau_.size() != static_cast<std::size_t>(n) * k)
        throw std::invalid_argument("ThresholdSystem: threshold table size mismatch");
    for (Layer i = 0; i < k; ++i)
        for (Vertex v = 0; v < n; ++v) {
            const int t = tau_[static_cast<std::size_t>(i) * n + v];
            if (t < 0 || t > net_->degree(v, i) + 2)
                throw std::invalid_argument(
                    "ThresholdSystem: threshold out of [0, deg+2] at layer " +
                    std::to_string(i) + " vertex " + std::to_string(v));
        }
}

int ThresholdSystem::threshold(Vertex v, Layer i) const {
    if (v < 0 || v >= net_->vertex_count() || i < 0 || i >= net_->layer_count())
        throw std::invalid_argument("ThresholdSystem::threshold: index out of range");
    return tau_[static_cast<std::size_t>(i) * net_->vertex_count() + v];
}

Configuration ThresholdSystem::successor(const Configuration& c) const {
    const int n = net_->vertex_count();
    const int k = net_->layer_count();
    if (c.size() != n)
        throw std::invalid_argument("successor: configuration length mismatch");
    Configuration out(n);
    if (master_ == MasterKind::Or) {
        for (Vertex v = 0; v < n; ++v) {
            bool fired = false;
            for (Layer i = 0; i < k && !fired; ++i)
                fired = score_unchecked(*net_, c, v, i) >=
                        tau_[static_cast<std::size_t>(i) * n + v];
            out.set_bit(v, fired);
        }
    } else {
        for (Vertex v = 0; v < n; ++v) {
            bool fired = true;
            for (Layer i = 0; i < k && fired; ++i)
                fired = score_unchecked(*net_, c, v, i) >=
                        tau_[static_cast<std::size_t>(i) * n + v];
            out.set_bit(v, fired);
        }
    }
    return out;
}

std::vector<Configuration> trajectory(const ThresholdSystem& sys, const Configuration& c0,
                                      int steps) {
    if (steps < 0)
        throw std::invalid_argument("trajectory: steps must be >= 0");
    std::vector<Configuration> result;
    result.reserve(static_cast<std::size_t>(steps) + 1);
    result.push_back(c0);
    for (int t = 0; t < steps; ++t)
        result.push_back(sys.successor(result.back()));
    return result;
}

std::vector<int> random_threshold_table(const MultilayerNetwork& net, Rng& rng) {
    const int n = net.vertex_count();
    const int k = net.layer_count();
    std::vector<int> tau(static_cast<std::size_t>(n) * k);
    for (Layer i = 0; i < k; ++i)
        for (Vertex v = 0; v < n; ++v)
            tau[static_cast<std::size_t>(i) * n + v] = rand_int(rng, 0, net.degree(v, i) + 2);
    return tau;
}

std::vector<int> load_threshold_table(std::istream& in, const MultilayerNetwork& net) {
    const int n = net.vertex_count();
    const int k = net.layer_count();
    std::vector<int> tau(static_cast<std::size_t>(n) * k);
    std::vector<char> seen(tau.size(), 0);

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#')
            continue;
        std::istringstream ss(line);
        long long i, v, t;
        if (!(ss >> i))
            continue;  // blank line
        if (!(ss >> v >> t))
            throw ParseError("line " + std::to_string(line_no) + ": expected \"i v tau\"");
        std::string extra;
        if (ss >> extra)
            throw ParseError("line " + std::to_string(line_no) + ": trailing tokens");
        if (i < 0 || i >= k)
            throw ParseError("line " + std::to_string(line_no) + ": layer index out of range");
        if (v < 0 || v >= n)
            throw ParseError("line " + std::to_string(line_no) + ": vertex id out of range");
        const std::size_t idx = static_cast<std::size_t>(i) * n + v;
        if (seen[idx])
            throw ParseError("line " + std::to_string(line_no) + ": duplicate entry for (" +
                             std::to_string(i) + ", " + std::to_string(v) + ")");
        seen[idx] = 1;
        tau[idx] = static_cast<int>(t);
    }
    for (Layer i = 0; i < k; ++i)
        for (Vertex v = 0; v < n; ++v)
            if (!seen[static_cast<std::size_t>(i) * n + v])
                throw ParseError("missing threshold entry for layer " + std::to_string(i) +
                                 " vertex " + std::to_string(v));
    return tau;
}

std::vector<int> load_threshold_table_file(const std::string& path,
                                           const MultilayerNetwork& net) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open threshold file: " + path);
    return load_threshold_table(in, net);
}

void save_threshold_table(std::ostream& out, const MultilayerNetwork& net,
                          std::span<const int> tau) {
    const int n = net.vertex_count();
    const int k = net.layer_count();
    if (tau.size() != static_cast<std::size_t>(n) * k)
        throw std::invalid_argument("save_threshold_table: table size mismatch");
    for (Layer i = 0; i < k; ++i)
        for (Vertex v = 0; v < n; ++v)
            out << i << ' ' << v << ' ' << tau[static_cast<std::size_t>(i) * n + v] << '\n';
}

void save_threshold_table_file(const std::string& path, const MultilayerNetwork& net,
                               std::span<const int> tau) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write threshold file: " + path);
    save_threshold_table(out, net, tau);
}

}  // namespace msyds
