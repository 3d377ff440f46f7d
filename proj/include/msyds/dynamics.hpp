#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msyds/graph.hpp"
#include "msyds/rng.hpp"

namespace msyds {

/// An n-bit state vector, one bit per vertex, packed into 64-bit words.
/// Bits past position n-1 in the last word are kept zero so whole-word
/// comparison and popcount are valid.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(int n) : n_(n), words_((n + 63) / 64, 0) {}

    /// Parses a '0'/'1' string; character position v is vertex v's state.
    static Configuration parse(std::string_view bits);

    /// Builds a configuration from a packed mask (e.g. a neighborhood mask).
    static Configuration from_mask(int n, std::span<const std::uint64_t> mask);

    int size() const { return n_; }

    bool bit(Vertex v) const {
        return (words_[static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1;
    }

    void set_bit(Vertex v, bool value) {
        const std::uint64_t m = std::uint64_t{1} << (v % 64);
        if (value)
            words_[static_cast<std::size_t>(v) / 64] |= m;
        else
            words_[static_cast<std::size_t>(v) / 64] &= ~m;
    }

    int count_ones() const;
    Configuration complemented() const;
    std::string to_string() const;

    std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration&, const Configuration&) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

enum class MasterKind { Or, And };

MasterKind parse_master_kind(std::string_view text);
std::string to_string(MasterKind master);

/// Number of state-1 vertices in v's closed neighborhood on layer i under c.
int score(const MultilayerNetwork& net, const Configuration& c, Vertex v, Layer i);

/// A full threshold system: network, master-function kind, and one integer
/// threshold per (layer, vertex). The table is validated once here so the
/// successor loop can skip range checks.
class ThresholdSystem {
public:
    /// tau is layer-major: tau[i * n + v]. Each entry must lie in
    /// [0, deg_i(v) + 2].
    ThresholdSystem(std::shared_ptr<const MultilayerNetwork> net, MasterKind master,
                    std::vector<int> tau);

    const MultilayerNetwork& network() const { return *net_; }
    std::shared_ptr<const MultilayerNetwork> network_ptr() const { return net_; }
    MasterKind master() const { return master_; }

    int threshold(Vertex v, Layer i) const;
    std::span<const int> threshold_table() const { return tau_; }

    /// One synchronous update of every vertex. Pure; the input is not
    /// mutated, and concurrent calls are safe.
    Configuration successor(const Configuration& c) const;

private:
    std::shared_ptr<const MultilayerNetwork> net_;
    MasterKind master_;
    std::vector<int> tau_;
};

inline Configuration successor(const ThresholdSystem& sys, const Configuration& c) {
    return sys.successor(c);
}

/// [c0, sys(c0), sys^2(c0), ...], steps+1 entries.
std::vector<Configuration> trajectory(const ThresholdSystem& sys, const Configuration& c0,
                                      int steps);

/// Uniform threshold table: tau_i(v) ~ U[0, deg_i(v) + 2], layer-major.
std::vector<int> random_threshold_table(const MultilayerNetwork& net, Rng& rng);

/// Threshold file format: "i v tau" lines, every (layer, vertex) pair exactly
/// once, '#' comments allowed. Throws ParseError with the line number.
std::vector<int> load_threshold_table(std::istream& in, const MultilayerNetwork& net);
std::vector<int> load_threshold_table_file(const std::string& path,
                                           const MultilayerNetwork& net);
void save_threshold_table(std::ostream& out, const MultilayerNetwork& net,
                          std::span<const int> tau);
void save_threshold_table_file(const std::string& path, const MultilayerNetwork& net,
                               std::span<const int> tau);

}  // namespace msyds
