#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "msyds/dynamics.hpp"
#include "msyds/graph.hpp"
#include "msyds/learner.hpp"
#include "msyds/rng.hpp"

namespace msyds {

/// Which vertices the learner must infer.
struct UnknownSpec {
    enum class Kind { All, FromFile, RandomSigma };
    Kind kind = Kind::All;
    std::string path;  // FromFile
    int sigma = 0;     // RandomSigma

    static UnknownSpec parse(const std::string& text);  // "all" | "random:S" | path
    std::string to_string() const;
};

/// Materializes the spec against an n-vertex network. RandomSigma draws a
/// uniform sigma-subset from the generator; the other kinds ignore it.
std::vector<Vertex> resolve_unknown_spec(const UnknownSpec& spec, int n, Rng& rng);

/// One sweep/validation run. Defaults mirror the reference experiments:
/// 50 trials, 10000 evaluation samples.
struct ExperimentConfig {
    std::shared_ptr<const MultilayerNetwork> net;
    MasterKind master = MasterKind::Or;
    std::vector<UnknownSpec> unknown_specs{UnknownSpec{}};
    std::vector<double> p_values{0.5};
    std::vector<int> train_sizes{500};
    int eval_samples = 10000;
    int trials = 50;
    std::uint64_t base_seed = 0;
    int jobs = 1;
};

/// Everything one trial produces; enough to audit the learner's guarantees.
struct TrialOutcome {
    std::uint64_t seed = 0;
    int sigma = 0;
    double loss = 0.0;         // estimated true error
    double pmac_loss = 0.0;    // only when beta was given
    int empirical_risk = 0;    // on the training set, 0 for a consistent learner
    bool conservative = true;  // learned thresholds never overshoot (OR) / undershoot (AND)
    int onesided_violations = 0;  // evaluation samples breaking the one-sided error claim
};

/// Runs one (target, training set, evaluation) trial. The generator draw
/// order is fixed and documented: target thresholds, then the unknown subset
/// when randomly chosen, then the training set, then evaluation samples —
/// so a row is reproducible from its seed alone.
TrialOutcome run_trial(const std::shared_ptr<const MultilayerNetwork>& net,
                       MasterKind master, const UnknownSpec& unknown, double p,
                       int train_size, int eval_samples, std::uint64_t seed,
                       std::optional<double> beta = std::nullopt);

struct SweepRow {
    int trial = 0;
    double p = 0.0;
    int train_size = 0;
    int sigma = 0;
    int k = 0;
    double loss = 0.0;
    std::uint64_t seed = 0;
};

struct SweepCell {
    double p = 0.0;
    int train_size = 0;
    int sigma = 0;
    int k = 0;
    double mean_loss = 0.0;
    double stdev_loss = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepCell> cells;
};

/// Grid of (unknown spec, p, train size) cells, `trials` trials each. Trial
/// seeds are base_seed + trial_index with trial_index running row-major over
/// (cell, trial); trials run on up to `jobs` threads and rows come back in
/// deterministic order regardless of scheduling.
SweepResult run_sweep(const ExperimentConfig& config);

/// CSV: "# msyds-csv v1" header, per-trial rows, then per-cell aggregate
/// rows whose trial column reads "mean" and "stdev".
void write_sweep_csv(std::ostream& out, const SweepResult& result);

struct PacValidation {
    long long q = 0;
    double eps = 0.0;
    double delta = 0.0;
    int trials = 0;
    int failures = 0;          // trials with estimated loss >= eps
    double failure_fraction = 0.0;
    bool within_delta = false;
    std::vector<TrialOutcome> outcomes;
};

/// Sizes the training set with sample_size_pac and measures how often the
/// learned system misses the eps target. Uses the first unknown spec and the
/// first p value of the config.
PacValidation run_validate_pac(const ExperimentConfig& config, double eps, double delta);

struct PmacValidation {
    long long q = 0;
    double eps = 0.0;
    double delta = 0.0;
    double beta = 0.0;
    int trials = 0;
    int failures = 0;  // trials with estimated pmac error > eps
    double failure_fraction = 0.0;
    bool within_delta = false;
    std::vector<TrialOutcome> outcomes;
};

PmacValidation run_validate_pmac(const ExperimentConfig& config, double eps, double delta,
                                 double beta);

}  // namespace msyds
