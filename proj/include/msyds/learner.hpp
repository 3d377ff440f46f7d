#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "msyds/dynamics.hpp"
#include "msyds/graph.hpp"
#include "msyds/rng.hpp"

namespace msyds {

/// Ordered (configuration, successor) snapshot pairs.
struct TrainingSet {
    std::vector<std::pair<Configuration, Configuration>> pairs;

    std::size_t size() const { return pairs.size(); }
};

/// Training-set file: one "C Csucc" pair of bit strings per line.
TrainingSet load_training_set(std::istream& in);
void save_training_set(std::ostream& out, const TrainingSet& t);

/// Per-vertex product distribution: each state is 0 with probability p_zero.
struct BernoulliDistribution {
    double p_zero = 0.5;
};

Configuration sample_config(const BernoulliDistribution& dist, int n, Rng& rng);

/// Sampling distributions are pluggable; the learner guarantee holds for any
/// of them. Implementations must be pure given the generator.
class ConfigSampler {
public:
    virtual ~ConfigSampler() = default;
    virtual Configuration sample(Rng& rng) const = 0;
    virtual int vertex_count() const = 0;
};

class BernoulliSampler final : public ConfigSampler {
public:
    BernoulliSampler(BernoulliDistribution dist, int n);
    Configuration sample(Rng& rng) const override;
    int vertex_count() const override { return n_; }

private:
    BernoulliDistribution dist_;
    int n_;
};

/// Draws uniformly from the snapshots of a precomputed trajectory; models
/// learning from freely evolved dynamics.
class TrajectorySampler final : public ConfigSampler {
public:
    explicit TrajectorySampler(std::vector<Configuration> snapshots);
    Configuration sample(Rng& rng) const override;
    int vertex_count() const override;

private:
    std::vector<Configuration> snapshots_;
};

/// What the learner is given: the network, the master kind, the set of
/// vertices whose thresholds are unknown, and the true thresholds of the
/// rest. The hypothesis class is every completion of the unknown entries.
class LearningProblem {
public:
    /// known_tau is layer-major with -1 exactly at the unknown positions.
    LearningProblem(std::shared_ptr<const MultilayerNetwork> net, MasterKind master,
                    std::vector<Vertex> unknown, std::vector<int> known_tau);

    /// Convenience: every vertex unknown.
    static LearningProblem all_unknown(std::shared_ptr<const MultilayerNetwork> net,
                                       MasterKind master);

    /// Builds the problem whose target is `target`, hiding `unknown`.
    static LearningProblem from_target(const ThresholdSystem& target,
                                       std::vector<Vertex> unknown);

    const MultilayerNetwork& network() const { return *net_; }
    std::shared_ptr<const MultilayerNetwork> network_ptr() const { return net_; }
    MasterKind master() const { return master_; }
    std::span<const Vertex> unknown() const { return unknown_; }
    int sigma() const { return static_cast<int>(unknown_.size()); }
    bool is_unknown(Vertex v) const { return is_unknown_[static_cast<std::size_t>(v)] != 0; }
    int known_threshold(Vertex v, Layer i) const;

private:
    std::shared_ptr<const MultilayerNetwork> net_;
    MasterKind master_;
    std::vector<Vertex> unknown_;  // sorted, distinct
    std::vector<int> known_tau_;   // layer-major, -1 at unknown slots
    std::vector<char> is_unknown_;
};

/// Samples q configurations from the distribution and pairs each with its
/// successor under the target system.
TrainingSet make_training_set(const ThresholdSystem& target, const ConfigSampler& dist,
                              int q, Rng& rng);

/// The consistent learner. For OR master functions each unknown threshold is
/// one more than the largest score seen among examples whose successor turns
/// the vertex off (0 if there is none); for AND it is the smallest score
/// among examples that turn it on (deg+2 if none). Known thresholds are
/// copied verbatim. Runs in O(n k |T|).
ThresholdSystem pac_learn(const LearningProblem& problem, const TrainingSet& t);

/// Number of training pairs the hypothesis gets wrong.
int empirical_risk(const ThresholdSystem& h, const TrainingSet& t);

/// Fraction of sampled configurations where h and the target disagree.
double estimate_true_error(const ThresholdSystem& h, const ThresholdSystem& target,
                           const ConfigSampler& dist, int samples, Rng& rng);

/// Number of unknown-set vertices whose states differ between hC and tC.
int pmac_mismatch(const Configuration& hC, const Configuration& tC,
                  std::span<const Vertex> unknown);

/// Fraction of sampled configurations where the mismatch count reaches
/// beta * sigma.
double estimate_pmac_error(const ThresholdSystem& h, const ThresholdSystem& target,
                           const ConfigSampler& dist, std::span<const Vertex> unknown,
                           double beta, int samples, Rng& rng);

/// ceil((1/eps) * sigma k * ln(sigma k / delta)); training-set size that
/// gives the (eps, delta) PAC guarantee. Natural log: the proof's
/// (1-x)^q <= e^(-xq) step needs it.
long long sample_size_pac(double eps, double delta, long long sigma, long long k);

/// ceil((1/eps) (1/beta) k ln(sigma k / delta)) for the PMAC guarantee.
long long sample_size_pmac(double eps, double delta, double beta, long long sigma,
                           long long k);

/// The generic finite-class bound (1/eps)(sigma k ln d_avg + ln(1/delta)).
/// Requires d_avg > 1 so the log stays positive.
double sample_size_generic(double eps, double delta, long long sigma, long long k,
                           double davg);

}  // namespace msyds
