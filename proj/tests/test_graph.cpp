#include <doctest.h>

#include <cmath>
#include <sstream>

#include "msyds/graph.hpp"
#include "test_helpers.hpp"

using namespace msyds;
using msyds_test::random_edges;

TEST_CASE("edge list: smallest path") {
    std::istringstream in("3 1\n0 0 1\n0 1 2\n");
    const auto loaded = load_edge_list(in);
    const MultilayerNetwork& net = loaded.net;
    CHECK(net.vertex_count() == 3);
    CHECK(net.layer_count() == 1);
    CHECK(net.edge_count() == 2);
    CHECK(net.degree(1, 0) == 2);
    CHECK(net.closed_neighborhood(1, 0) == std::vector<Vertex>{0, 1, 2});
    CHECK(net.closed_neighborhood(0, 0) == std::vector<Vertex>{0, 1});
    CHECK(loaded.labels.empty());
}

TEST_CASE("edge list: edgeless network") {
    std::istringstream in("# comment\n4 2\n");
    const auto loaded = load_edge_list(in);
    CHECK(loaded.net.vertex_count() == 4);
    CHECK(loaded.net.layer_count() == 2);
    CHECK(loaded.net.edge_count() == 0);
    for (Vertex v = 0; v < 4; ++v)
        CHECK(loaded.net.closed_neighborhood(v, 1) == std::vector<Vertex>{v});
}

TEST_CASE("closed neighborhood on a complete layer") {
    std::vector<LayerEdge> edges;
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v)
            edges.push_back({0, u, v});
    const MultilayerNetwork net(4, 1, edges);
    for (Vertex v = 0; v < 4; ++v) {
        CHECK(net.closed_neighborhood(v, 0) == std::vector<Vertex>{0, 1, 2, 3});
        CHECK(net.degree(v, 0) == 3);
    }
}

TEST_CASE("edge list: parse errors name the line") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            load_edge_list(in);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("3 1\n0 0\n", "line 2");                 // malformed line
    expect_error("3 1\n1 0 1\n", "line 2");               // layer out of range
    expect_error("3 1\n0 0 7\n", "line 2");               // vertex out of range
    expect_error("3 1\n0 1 1\n", "self-loop");            // self-loop
    expect_error("3 1\n0 0 1\n0 1 0\n", "duplicate");     // duplicate edge
    expect_error("x y\n", "header");                      // bad header
}

TEST_CASE("edge list: named vertices get a label table") {
    std::istringstream in("3 1\n0 alice bob\n0 bob carol\n");
    const auto loaded = load_edge_list(in);
    CHECK(loaded.labels == std::vector<std::string>{"alice", "bob", "carol"});
    CHECK(loaded.net.degree(1, 0) == 2);  // bob
}

TEST_CASE("edge list: serialize round-trip") {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rand_below(rng, 9));
        const int k = 1 + static_cast<int>(rand_below(rng, 3));
        const MultilayerNetwork net(n, k, random_edges(n, k, 0.4, rng));
        std::ostringstream out;
        net.serialize(out);
        std::istringstream in(out.str());
        const auto reloaded = load_edge_list(in);
        CHECK(reloaded.net == net);
    }
}

TEST_CASE("multi-gnp: degenerate probabilities") {
    Rng rng(1);
    const MultilayerNetwork empty = generate_multi_gnp(5, 2, 0.0, rng);
    CHECK(empty.edge_count() == 0);
    const MultilayerNetwork full = generate_multi_gnp(5, 2, 1.0, rng);
    CHECK(full.edge_count() == 2 * (5 * 4 / 2));
    for (Vertex v = 0; v < 5; ++v)
        CHECK(full.degree(v, 1) == 4);
    CHECK_THROWS_AS(generate_multi_gnp(5, 2, 1.5, rng), std::invalid_argument);
}

TEST_CASE("multi-gnp: determinism for a fixed seed") {
    Rng a(123), b(123);
    CHECK(generate_multi_gnp(30, 2, 0.3, a) == generate_multi_gnp(30, 2, 0.3, b));
}

TEST_CASE("multi-gnp: per-layer edge count concentrates around p*n(n-1)/2") {
    const int n = 40, k = 2, seeds = 200;
    const double p = 0.3;
    const double per_layer_mean = p * n * (n - 1) / 2.0;
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(1000 + static_cast<std::uint64_t>(s));
        const MultilayerNetwork net = generate_multi_gnp(n, k, p, rng);
        total += static_cast<double>(net.edge_count(0)) + static_cast<double>(net.edge_count(1));
    }
    const double observed_mean = total / (seeds * k);
    const double per_draw_sd = std::sqrt(n * (n - 1) / 2.0 * p * (1 - p));
    const double se = per_draw_sd / std::sqrt(static_cast<double>(seeds * k));
    CHECK(std::abs(observed_mean - per_layer_mean) <= 3.0 * se);
}

TEST_CASE("multi-gnp: reference row, 500 vertices, 2 layers, ~7495 edges") {
    // avg-deg 15 => p = 15/(n-1); expected total edge count 7500.
    const double p = 15.0 / 499.0;
    for (int s = 0; s < 100; ++s) {
        Rng rng(static_cast<std::uint64_t>(s));
        const MultilayerNetwork net = generate_multi_gnp(500, 2, p, rng);
        const double m = static_cast<double>(net.edge_count());
        CHECK(std::abs(m - 7495.0) <= 0.05 * 7495.0);
    }
}

TEST_CASE("edge list: loads a 500-vertex 2-layer file with 7495 edges") {
    // seed 380 hits the reference edge count exactly
    Rng rng(380);
    const MultilayerNetwork net = generate_multi_gnp(500, 2, 15.0 / 499.0, rng);
    REQUIRE(net.edge_count() == 7495);
    std::ostringstream out;
    net.serialize(out);
    std::istringstream in(out.str());
    const auto loaded = load_edge_list(in);
    CHECK(loaded.net.vertex_count() == 500);
    CHECK(loaded.net.layer_count() == 2);
    CHECK(loaded.net.edge_count() == 7495);
}

TEST_CASE("merged average degree") {
    SUBCASE("parallel edge collapses") {
        const MultilayerNetwork net(2, 2, {{0, 0, 1}, {1, 0, 1}});
        const std::vector<Vertex> vset{0, 1};
        CHECK(merged_average_degree(net, vset) == doctest::Approx(1.0));
    }
    SUBCASE("union of two single-edge layers") {
        const MultilayerNetwork net(3, 2, {{0, 0, 1}, {1, 0, 2}});
        const std::vector<Vertex> vset{0};
        CHECK(merged_average_degree(net, vset) == doctest::Approx(2.0));
    }
    SUBCASE("edgeless") {
        const MultilayerNetwork net(4, 2, {});
        const std::vector<Vertex> vset{0, 1, 2, 3};
        CHECK(merged_average_degree(net, vset) == doctest::Approx(0.0));
    }
    SUBCASE("empty vset rejected") {
        const MultilayerNetwork net(4, 2, {});
        CHECK_THROWS_AS(merged_average_degree(net, {}), std::invalid_argument);
    }
    SUBCASE("matches the set-based oracle and is layer-permutation invariant") {
        Rng rng(7);
        for (int trial = 0; trial < 25; ++trial) {
            const int n = 3 + static_cast<int>(rand_below(rng, 8));
            const int k = 2 + static_cast<int>(rand_below(rng, 2));
            const auto edges = random_edges(n, k, 0.4, rng);
            const MultilayerNetwork net(n, k, edges);
            const auto vset =
                msyds_test::random_subset(n, 1 + static_cast<int>(rand_below(rng, n)), rng);
            const double got = merged_average_degree(net, vset);
            CHECK(got == doctest::Approx(msyds_test::naive_merged_average_degree(net, vset)));

            // reverse the layer order
            auto permuted = edges;
            for (LayerEdge& e : permuted)
                e.layer = k - 1 - e.layer;
            const MultilayerNetwork net2(n, k, permuted);
            CHECK(merged_average_degree(net2, vset) == doctest::Approx(got));
        }
    }
}

TEST_CASE("network constructor validation") {
    CHECK_THROWS_AS(MultilayerNetwork(3, 1, {{0, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MultilayerNetwork(3, 1, {{0, 0, 1}, {0, 1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MultilayerNetwork(3, 1, {{1, 0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MultilayerNetwork(3, 1, {{0, 0, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(MultilayerNetwork(0, 1, {}), std::invalid_argument);
}
