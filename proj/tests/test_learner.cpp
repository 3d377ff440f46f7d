#include <doctest.h>

#include <cmath>
#include <sstream>

#include "msyds/learner.hpp"
#include "test_helpers.hpp"

using namespace msyds;
using msyds_test::random_config;

namespace {

ThresholdSystem random_target(const std::shared_ptr<const MultilayerNetwork>& net,
                              MasterKind master, Rng& rng) {
    return ThresholdSystem(net, master, random_threshold_table(*net, rng));
}

}  // namespace

TEST_CASE("sample_config") {
    Rng rng(1);
    CHECK(sample_config({1.0}, 6, rng) == Configuration(6));
    CHECK(sample_config({0.0}, 6, rng) == Configuration(6).complemented());

    // p = 0.5, n = 1000: ones count within 4 sigma of 500 across draws
    const double sd = std::sqrt(1000 * 0.25);
    for (int draw = 0; draw < 20; ++draw) {
        const Configuration c = sample_config({0.5}, 1000, rng);
        CHECK(std::abs(c.count_ones() - 500.0) <= 4.0 * sd);
    }
}

TEST_CASE("make_training_set") {
    Rng rng(2);
    auto net = msyds_test::random_network(8, 2, 0.4, rng);
    const BernoulliSampler sampler({0.5}, 8);

    const ThresholdSystem target = random_target(net, MasterKind::Or, rng);
    CHECK(make_training_set(target, sampler, 0, rng).size() == 0);

    const ThresholdSystem zeros(net, MasterKind::Or,
                                std::vector<int>(static_cast<std::size_t>(8) * 2, 0));
    const TrainingSet all_on = make_training_set(zeros, sampler, 3, rng);
    for (const auto& [c, csucc] : all_on.pairs)
        CHECK(csucc == Configuration(8).complemented());

    const TrainingSet t = make_training_set(target, sampler, 12, rng);
    for (const auto& [c, csucc] : t.pairs)
        CHECK(csucc == target.successor(c));
}

TEST_CASE("pac_learn: empty training set") {
    Rng rng(3);
    auto net = msyds_test::random_network(6, 2, 0.4, rng);
    const LearningProblem problem = LearningProblem::all_unknown(net, MasterKind::Or);
    const ThresholdSystem h = pac_learn(problem, TrainingSet{});
    for (Layer i = 0; i < 2; ++i)
        for (Vertex v = 0; v < 6; ++v)
            CHECK(h.threshold(v, i) == 0);

    const LearningProblem and_problem = LearningProblem::all_unknown(net, MasterKind::And);
    const ThresholdSystem ha = pac_learn(and_problem, TrainingSet{});
    for (Layer i = 0; i < 2; ++i)
        for (Vertex v = 0; v < 6; ++v)
            CHECK(ha.threshold(v, i) == net->degree(v, i) + 2);
}

TEST_CASE("pac_learn: star example picks the unique consistent threshold") {
    // Star with center 0 and leaves 1, 2, 3. Two examples: score 2 turns the
    // center off, score 3 turns it on. The only consistent threshold is 3.
    auto net = std::make_shared<const MultilayerNetwork>(
        4, 1, std::vector<LayerEdge>{{0, 0, 1}, {0, 0, 2}, {0, 0, 3}});
    TrainingSet t;
    const Configuration c1 = Configuration::parse("0110");  // score at center: 2
    const Configuration c2 = Configuration::parse("0111");  // score at center: 3
    Configuration c1succ(4), c2succ(4);
    c2succ.set_bit(0, true);
    t.pairs = {{c1, c1succ}, {c2, c2succ}};

    // Leaves are known with threshold 2, which keeps them off in both pairs.
    const LearningProblem problem(net, MasterKind::Or, {0}, {-1, 2, 2, 2});
    const ThresholdSystem h = pac_learn(problem, t);
    CHECK(h.threshold(0, 0) == 3);

    // Brute-force oracle: thresholds in [0, 5] consistent with both examples.
    std::vector<int> consistent;
    for (int tau = 0; tau <= 5; ++tau) {
        const bool fires1 = 2 >= tau;
        const bool fires2 = 3 >= tau;
        if (!fires1 && fires2)
            consistent.push_back(tau);
    }
    CHECK(consistent == std::vector<int>{3});
}

TEST_CASE("pac_learn: consistency and conservativeness on random instances") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rand_below(rng, 10));
        const int k = 1 + static_cast<int>(rand_below(rng, 3));
        const MasterKind master = rand_bernoulli(rng, 0.5) ? MasterKind::Or : MasterKind::And;
        auto net = msyds_test::random_network(n, k, 0.4, rng);
        const ThresholdSystem target = random_target(net, master, rng);
        const auto unknown =
            msyds_test::random_subset(n, 1 + static_cast<int>(rand_below(rng, n)), rng);
        const LearningProblem problem = LearningProblem::from_target(target, unknown);
        const BernoulliSampler sampler({0.5}, n);
        const TrainingSet t = make_training_set(
            target, sampler, static_cast<int>(rand_below(rng, 40)), rng);
        const ThresholdSystem h = pac_learn(problem, t);

        CHECK(empirical_risk(h, t) == 0);
        for (Vertex v : unknown)
            for (Layer i = 0; i < k; ++i) {
                if (master == MasterKind::Or)
                    CHECK(h.threshold(v, i) <= target.threshold(v, i));
                else
                    CHECK(h.threshold(v, i) >= target.threshold(v, i));
            }
        for (Vertex v = 0; v < n; ++v)
            if (!problem.is_unknown(v))
                for (Layer i = 0; i < k; ++i)
                    CHECK(h.threshold(v, i) == target.threshold(v, i));
    }
}

TEST_CASE("pac_learn: more data tightens OR thresholds upward") {
    Rng rng(6);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + static_cast<int>(rand_below(rng, 8));
        auto net = msyds_test::random_network(n, 2, 0.4, rng);
        const ThresholdSystem target = random_target(net, MasterKind::Or, rng);
        const LearningProblem problem = LearningProblem::all_unknown(net, MasterKind::Or);
        const BernoulliSampler sampler({0.5}, n);
        TrainingSet small = make_training_set(target, sampler, 5, rng);
        TrainingSet extra = make_training_set(target, sampler, 10, rng);
        TrainingSet merged = small;
        merged.pairs.insert(merged.pairs.end(), extra.pairs.begin(), extra.pairs.end());
        const ThresholdSystem h_small = pac_learn(problem, small);
        const ThresholdSystem h_merged = pac_learn(problem, merged);
        for (Vertex v = 0; v < n; ++v)
            for (Layer i = 0; i < 2; ++i)
                CHECK(h_merged.threshold(v, i) >= h_small.threshold(v, i));
    }
}

TEST_CASE("pac_learn: pair length mismatch") {
    Rng rng(7);
    auto net = msyds_test::random_network(4, 1, 0.4, rng);
    const LearningProblem problem = LearningProblem::all_unknown(net, MasterKind::Or);
    TrainingSet t;
    t.pairs = {{Configuration(3), Configuration(3)}};
    CHECK_THROWS_AS(pac_learn(problem, t), std::invalid_argument);
}

TEST_CASE("empirical_risk") {
    Rng rng(8);
    auto net = msyds_test::random_network(6, 2, 0.4, rng);
    const ThresholdSystem target = random_target(net, MasterKind::Or, rng);
    const BernoulliSampler sampler({0.5}, 6);
    const TrainingSet t = make_training_set(target, sampler, 20, rng);
    CHECK(empirical_risk(target, t) == 0);
    CHECK(empirical_risk(target, TrainingSet{}) == 0);

    // One isolated vertex, threshold 0: successor of (0) is (1), so the
    // recorded pair (0) -> (0) is a mistake.
    auto single = std::make_shared<const MultilayerNetwork>(1, 1, std::vector<LayerEdge>{});
    const ThresholdSystem h(single, MasterKind::Or, {0});
    TrainingSet bad;
    bad.pairs = {{Configuration(1), Configuration(1)}};
    CHECK(empirical_risk(h, bad) == 1);
}

TEST_CASE("estimate_true_error") {
    Rng rng(9);
    auto net = msyds_test::random_network(10, 2, 0.4, rng);
    const ThresholdSystem target = random_target(net, MasterKind::Or, rng);
    const BernoulliSampler sampler({0.5}, 10);
    CHECK(estimate_true_error(target, target, sampler, 500, rng) == 0.0);

    // Isolated always-firing vertex mispredicted on every sample.
    auto single = std::make_shared<const MultilayerNetwork>(1, 1, std::vector<LayerEdge>{});
    const ThresholdSystem always(single, MasterKind::Or, {0});
    const ThresholdSystem never(single, MasterKind::Or, {2});
    const BernoulliSampler one(BernoulliDistribution{0.5}, 1);
    CHECK(estimate_true_error(always, never, one, 200, rng) == 1.0);

    // Two estimates at 10000 samples agree to within 0.02.
    const ThresholdSystem h = random_target(net, MasterKind::Or, rng);
    const double e1 = estimate_true_error(h, target, sampler, 10000, rng);
    const double e2 = estimate_true_error(h, target, sampler, 10000, rng);
    CHECK(std::abs(e1 - e2) < 0.02);
}

TEST_CASE("pmac_mismatch") {
    const Configuration a = Configuration::parse("101");
    const Configuration b = Configuration::parse("111");
    const std::vector<Vertex> all{0, 1, 2};
    CHECK(pmac_mismatch(a, a, all) == 0);
    CHECK(pmac_mismatch(a, a.complemented(), all) == 3);
    CHECK(pmac_mismatch(a, b, std::vector<Vertex>{1, 2}) == 1);
    CHECK_THROWS_AS(pmac_mismatch(a, Configuration(4), all), std::invalid_argument);
}

TEST_CASE("estimate_pmac_error") {
    Rng rng(10);
    auto net = msyds_test::random_network(8, 2, 0.4, rng);
    const ThresholdSystem target = random_target(net, MasterKind::Or, rng);
    const BernoulliSampler sampler({0.5}, 8);
    const std::vector<Vertex> all{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(estimate_pmac_error(target, target, sampler, all, 0.5, 300, rng) == 0.0);

    // sigma = 1: the estimate collapses to the error rate of that vertex.
    auto single = std::make_shared<const MultilayerNetwork>(1, 1, std::vector<LayerEdge>{});
    const ThresholdSystem always(single, MasterKind::Or, {0});
    const ThresholdSystem never(single, MasterKind::Or, {2});
    const BernoulliSampler one(BernoulliDistribution{0.5}, 1);
    CHECK(estimate_pmac_error(always, never, one, std::vector<Vertex>{0}, 0.5, 200, rng) ==
          1.0);
    CHECK_THROWS_AS(estimate_pmac_error(always, never, one, std::vector<Vertex>{0}, 1.5,
                                        10, rng),
                    std::invalid_argument);

    // beta -> 0+ with the whole vertex set unknown: the bad event collapses
    // to "at least one mismatch", i.e. exactly the true-error event.
    const ThresholdSystem h = random_target(net, MasterKind::Or, rng);
    Rng rng_a(77), rng_b(77);
    const double pmac_tiny =
        estimate_pmac_error(h, target, sampler, all, 1e-9, 500, rng_a);
    const double loss = estimate_true_error(h, target, sampler, 500, rng_b);
    CHECK(pmac_tiny == loss);
}

TEST_CASE("sample size formulas: frozen reference values") {
    CHECK(sample_size_pac(0.1, 0.1, 10, 2) == 1060);
    CHECK(sample_size_pmac(0.1, 0.1, 0.5, 10, 2) == 212);
    CHECK(sample_size_generic(0.1, 0.1, 10, 2, std::exp(1.0)) ==
          doctest::Approx(223.0258509).epsilon(1e-9));
    CHECK(sample_size_pac(1.0 - 1e-9, 1.0 - 1e-9, 1, 1) >= 1);
}

TEST_CASE("sample size formulas: domain checks") {
    CHECK_THROWS_AS(sample_size_pac(0.0, 0.1, 10, 2), std::invalid_argument);
    CHECK_THROWS_AS(sample_size_pac(0.1, 1.0, 10, 2), std::invalid_argument);
    CHECK_THROWS_AS(sample_size_pac(0.1, 0.1, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(sample_size_pmac(0.1, 0.1, 0.0, 10, 2), std::invalid_argument);
    CHECK_THROWS_AS(sample_size_generic(0.1, 0.1, 10, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_size_generic(0.1, 0.1, 10, 2, 0.5), std::invalid_argument);
}

TEST_CASE("sample size formulas: shape properties") {
    // generic bound monotone in davg and in 1/eps
    CHECK(sample_size_generic(0.1, 0.1, 10, 2, 3.0) <
          sample_size_generic(0.1, 0.1, 10, 2, 5.0));
    CHECK(sample_size_generic(0.2, 0.1, 10, 2, 3.0) <
          sample_size_generic(0.1, 0.1, 10, 2, 3.0));

    // q_pac / q_pmac tracks sigma * beta up to ceiling slack
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const double eps = 0.05 + 0.9 * rand_unit(rng);
        const double delta = 0.05 + 0.9 * rand_unit(rng);
        const double beta = 0.05 + 0.9 * rand_unit(rng);
        const long long sigma = 1 + static_cast<long long>(rand_below(rng, 50));
        const long long k = 1 + static_cast<long long>(rand_below(rng, 6));
        if (sigma * beta < 1.0)
            continue;
        const double q_pac = static_cast<double>(sample_size_pac(eps, delta, sigma, k));
        const double q_pmac =
            static_cast<double>(sample_size_pmac(eps, delta, beta, sigma, k));
        CHECK(std::abs(q_pmac * sigma * beta - q_pac) <= sigma * beta);
    }

    // beta -> 1 with sigma = 1 coincides with the PAC size up to ceiling
    const long long pac = sample_size_pac(0.13, 0.07, 1, 3);
    const long long pmac = sample_size_pmac(0.13, 0.07, 1.0 - 1e-12, 1, 3);
    CHECK(std::llabs(pac - pmac) <= 1);
}

TEST_CASE("pac sample size forces sigma k (1 - eps/(sigma k))^q <= delta") {
    Rng rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
        const double eps = 0.01 + 0.98 * rand_unit(rng);
        const double delta = 0.01 + 0.98 * rand_unit(rng);
        const long long sigma = 1 + static_cast<long long>(rand_below(rng, 100));
        const long long k = 1 + static_cast<long long>(rand_below(rng, 10));
        const long long q = sample_size_pac(eps, delta, sigma, k);
        const double sk = static_cast<double>(sigma * k);
        const double lhs_log =
            std::log(sk) + static_cast<double>(q) * std::log1p(-eps / sk);
        CHECK(lhs_log <= std::log(delta) + 1e-12);
    }
}

TEST_CASE("trajectory sampler draws only snapshots") {
    Rng rng(13);
    auto net = msyds_test::random_network(6, 1, 0.5, rng);
    const ThresholdSystem sys = random_target(net, MasterKind::Or, rng);
    const auto snapshots = trajectory(sys, random_config(6, rng), 5);
    const TrajectorySampler sampler(snapshots);
    for (int draw = 0; draw < 50; ++draw) {
        const Configuration c = sampler.sample(rng);
        CHECK(std::find(snapshots.begin(), snapshots.end(), c) != snapshots.end());
    }
}

TEST_CASE("training set files round-trip") {
    Rng rng(14);
    auto net = msyds_test::random_network(7, 2, 0.4, rng);
    const ThresholdSystem target = random_target(net, MasterKind::Or, rng);
    const BernoulliSampler sampler({0.3}, 7);
    const TrainingSet t = make_training_set(target, sampler, 9, rng);
    std::ostringstream out;
    save_training_set(out, t);
    std::istringstream in(out.str());
    const TrainingSet reloaded = load_training_set(in);
    CHECK(reloaded.pairs == t.pairs);

    std::istringstream bad("010 01\n");
    CHECK_THROWS_AS(load_training_set(bad), ParseError);
}

TEST_CASE("contradictory pairs: learner applies the rule, risk reports it") {
    // The same configuration with two different successors cannot come from
    // any threshold system; the learner still applies its rule verbatim and
    // the empirical risk exposes the inconsistency.
    auto net = std::make_shared<const MultilayerNetwork>(
        2, 1, std::vector<LayerEdge>{{0, 0, 1}});
    const LearningProblem problem = LearningProblem::all_unknown(net, MasterKind::Or);
    TrainingSet t;
    t.pairs = {{Configuration::parse("10"), Configuration::parse("11")},
               {Configuration::parse("10"), Configuration::parse("00")}};
    const ThresholdSystem h = pac_learn(problem, t);
    // vertex 0: score 1 in both pairs; the off-pair forces tau = 2
    CHECK(h.threshold(0, 0) == 2);
    CHECK(empirical_risk(h, t) >= 1);
}

TEST_CASE("learning problem validation") {
    Rng rng(15);
    auto net = msyds_test::random_network(5, 2, 0.4, rng);
    CHECK_THROWS_AS(LearningProblem(net, MasterKind::Or, {0, 0}, std::vector<int>(10, -1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(LearningProblem(net, MasterKind::Or, {9}, std::vector<int>(10, -1)),
                    std::invalid_argument);
    // known slot carrying -1 for a known vertex
    std::vector<int> partial(10, -1);
    CHECK_THROWS_AS(LearningProblem(net, MasterKind::Or, {0, 1, 2, 3}, partial),
                    std::invalid_argument);
}
