#include "msyds/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace msyds {

UnknownSpec UnknownSpec::parse(const std::string& text) {
    UnknownSpec spec;
    if (text == "all") {
        spec.kind = Kind::All;
    } else if (text.rfind("random:", 0) == 0) {
        spec.kind = Kind::RandomSigma;
        try {
            spec.sigma = std::stoi(text.substr(7));
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown spec: expected random:<sigma>");
        }
        if (spec.sigma < 1)
            throw std::invalid_argument("unknown spec: sigma must be >= 1");
    } else {
        spec.kind = Kind::FromFile;
        spec.path = text;
    }
    return spec;
}

std::string UnknownSpec::to_string() const {
    switch (kind) {
        case Kind::All:
            return "all";
        case Kind::RandomSigma:
            return "random:" + std::to_string(sigma);
        case Kind::FromFile:
            return path;
    }
    return "all";
}

namespace {

std::vector<Vertex> load_vertex_list(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open vertex list: " + path);
    std::vector<Vertex> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#')
            continue;
        std::istringstream ss(line);
        long long v;
        while (ss >> v) {
            if (v < 0 || v >= n)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": vertex id out of range");
            out.push_back(static_cast<Vertex>(v));
        }
    }
    return out;
}

}  // namespace

std::vector<Vertex> resolve_unknown_spec(const UnknownSpec& spec, int n, Rng& rng) {
    switch (spec.kind) {
        case UnknownSpec::Kind::All: {
            std::vector<Vertex> all(static_cast<std::size_t>(n));
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        case UnknownSpec::Kind::FromFile:
            return load_vertex_list(spec.path, n);
        case UnknownSpec::Kind::RandomSigma: {
            if (spec.sigma > n)
                throw std::invalid_argument("unknown spec: sigma exceeds vertex count");
            // Partial Fisher-Yates over the id range.
            std::vector<Vertex> pool(static_cast<std::size_t>(n));
            std::iota(pool.begin(), pool.end(), 0);
            for (int j = 0; j < spec.sigma; ++j) {
                const auto pick = j + static_cast<int>(rand_below(
                                          rng, static_cast<std::uint64_t>(n - j)));
                std::swap(pool[static_cast<std::size_t>(j)],
                          pool[static_cast<std::size_t>(pick)]);
            }
            pool.resize(static_cast<std::size_t>(spec.sigma));
            std::sort(pool.begin(), pool.end());
            return pool;
        }
    }
    throw std::invalid_argument("unknown spec: bad kind");
}

namespace {

/// Detailed evaluation used by the validation paths: loss, pmac loss, and
/// the count of samples where a prediction error is not of the allowed
/// one-sided form (OR: predicted 1 where the target says 0).
struct EvalStats {
    double loss = 0.0;
    double pmac_loss = 0.0;
    int onesided_violations = 0;
};

EvalStats evaluate(const ThresholdSystem& h, const ThresholdSystem& target,
                   std::span<const Vertex> unknown, const ConfigSampler& sampler,
                   int samples, std::optional<double> beta, Rng& rng) {
    EvalStats stats;
    int wrong = 0;
    int pmac_bad = 0;
    const double pmac_threshold =
        beta ? *beta * static_cast<double>(unknown.size()) - 1e-9 : 0.0;
    const bool is_or = h.master() == MasterKind::Or;
    const MultilayerNetwork& net = h.network();
    const int n = net.vertex_count();
    const int k = net.layer_count();
    const auto tau_h = h.threshold_table();
    const auto tau_t = target.threshold_table();
    std::vector<char> in_unknown(static_cast<std::size_t>(n), 0);
    for (Vertex v : unknown)
        in_unknown[static_cast<std::size_t>(v)] = 1;

    for (int s = 0; s < samples; ++s) {
        const Configuration c = sampler.sample(rng);
        // One score per (v, i) feeds both systems; they share the network.
        bool any_wrong = false;
        bool onesided_broken = false;
        int mismatches = 0;
        for (Vertex v = 0; v < n; ++v) {
            bool fh = !is_or;
            bool ft = !is_or;
            for (Layer i = 0; i < k; ++i) {
                const int sc = score(net, c, v, i);
                const bool bh = sc >= tau_h[static_cast<std::size_t>(i) * n + v];
                const bool bt = sc >= tau_t[static_cast<std::size_t>(i) * n + v];
                if (is_or) {
                    fh = fh || bh;
                    ft = ft || bt;
                    if (fh && ft)
                        break;
                } else {
                    fh = fh && bh;
                    ft = ft && bt;
                    if (!fh && !ft)
                        break;
                }
            }
            if (fh != ft) {
                any_wrong = true;
                if (in_unknown[static_cast<std::size_t>(v)])
                    ++mismatches;
                const bool allowed = is_or ? (fh && !ft) : (!fh && ft);
                if (!allowed)
                    onesided_broken = true;
            }
        }
        if (any_wrong)
            ++wrong;
        if (onesided_broken)
            ++stats.onesided_violations;
        if (beta && static_cast<double>(mismatches) >= pmac_threshold)
            ++pmac_bad;
    }
    stats.loss = static_cast<double>(wrong) / static_cast<double>(samples);
    stats.pmac_loss = static_cast<double>(pmac_bad) / static_cast<double>(samples);
    return stats;
}

bool thresholds_conservative(const ThresholdSystem& h, const ThresholdSystem& target,
                             std::span<const Vertex> unknown) {
    const int n = h.network().vertex_count();
    const int k = h.network().layer_count();
    const bool is_or = h.master() == MasterKind::Or;
    const auto th = h.threshold_table();
    const auto tt = target.threshold_table();
    for (Vertex v : unknown)
        for (Layer i = 0; i < k; ++i) {
            const int a = th[static_cast<std::size_t>(i) * n + v];
            const int b = tt[static_cast<std::size_t>(i) * n + v];
            if (is_or ? a > b : a < b)
                return false;
        }
    return true;
}

void run_indexed_jobs(int count, int jobs, const std::function<void(int)>& body) {
    if (jobs <= 1 || count <= 1) {
        for (int idx = 0; idx < count; ++idx)
            body(idx);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const int workers = std::min(jobs, count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (int idx = next.fetch_add(1); idx < count; idx = next.fetch_add(1)) {
                try {
                    body(idx);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next.store(count);  // stop handing out work
                    return;
                }
            }
        });
    for (std::thread& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace

TrialOutcome run_trial(const std::shared_ptr<const MultilayerNetwork>& net,
                       MasterKind master, const UnknownSpec& unknown_spec, double p,
                       int train_size, int eval_samples, std::uint64_t seed,
                       std::optional<double> beta) {
    Rng rng(seed);
    const int n = net->vertex_count();

    // Draw order is part of the reproducibility contract; see the header.
    const std::vector<int> target_tau = random_threshold_table(*net, rng);
    const ThresholdSystem target(net, master, target_tau);
    const std::vector<Vertex> unknown = resolve_unknown_spec(unknown_spec, n, rng);
    const LearningProblem problem = LearningProblem::from_target(target, unknown);

    const BernoulliSampler sampler(BernoulliDistribution{p}, n);
    const TrainingSet t = make_training_set(target, sampler, train_size, rng);
    const ThresholdSystem h = pac_learn(problem, t);

    TrialOutcome outcome;
    outcome.seed = seed;
    outcome.sigma = problem.sigma();
    outcome.empirical_risk = msyds::empirical_risk(h, t);
    outcome.conservative = thresholds_conservative(h, target, problem.unknown());
    const EvalStats stats =
        evaluate(h, target, problem.unknown(), sampler, eval_samples, beta, rng);
    outcome.loss = stats.loss;
    outcome.pmac_loss = stats.pmac_loss;
    outcome.onesided_violations = stats.onesided_violations;
    return outcome;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    if (!config.net)
        throw std::invalid_argument("run_sweep: no network");
    if (config.trials < 1)
        throw std::invalid_argument("run_sweep: trials must be >= 1");
    const int k = config.net->layer_count();

    struct Cell {
        UnknownSpec unknown;
        double p;
        int train_size;
    };
    std::vector<Cell> cells;
    for (const UnknownSpec& u : config.unknown_specs)
        for (double p : config.p_values)
            for (int q : config.train_sizes)
                cells.push_back({u, p, q});

    const int total = static_cast<int>(cells.size()) * config.trials;
    std::vector<SweepRow> rows(static_cast<std::size_t>(total));
    run_indexed_jobs(total, config.jobs, [&](int idx) {
        const int cell_idx = idx / config.trials;
        const int trial = idx % config.trials;
        const Cell& cell = cells[static_cast<std::size_t>(cell_idx)];
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(idx);
        const TrialOutcome outcome =
            run_trial(config.net, config.master, cell.unknown, cell.p, cell.train_size,
                      config.eval_samples, seed);
        rows[static_cast<std::size_t>(idx)] = SweepRow{
            trial, cell.p, cell.train_size, outcome.sigma, k, outcome.loss, seed};
    });

    SweepResult result;
    result.rows = std::move(rows);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto begin = result.rows.begin() + static_cast<std::ptrdiff_t>(c) * config.trials;
        const auto end = begin + config.trials;
        double mean = 0.0;
        for (auto it = begin; it != end; ++it)
            mean += it->loss;
        mean /= static_cast<double>(config.trials);
        double var = 0.0;
        for (auto it = begin; it != end; ++it)
            var += (it->loss - mean) * (it->loss - mean);
        const double stdev =
            config.trials > 1 ? std::sqrt(var / static_cast<double>(config.trials - 1)) : 0.0;
        result.cells.push_back({cells[c].p, cells[c].train_size, begin->sigma, k, mean, stdev});
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    char buf[64];
    auto fmt = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.6f", x);
        return std::string(buf);
    };
    auto fmt_p = [&](double x) {
        std::snprintf(buf, sizeof buf, "%g", x);
        return std::string(buf);
    };
    out << "# msyds-csv v1\n";
    out << "trial,p,train_size,sigma,k,loss,seed\n";
    for (const SweepRow& row : result.rows)
        out << row.trial << ',' << fmt_p(row.p) << ',' << row.train_size << ',' << row.sigma
            << ',' << row.k << ',' << fmt(row.loss) << ',' << row.seed << '\n';
    for (const SweepCell& cell : result.cells) {
        out << "mean," << fmt_p(cell.p) << ',' << cell.train_size << ',' << cell.sigma << ','
            << cell.k << ',' << fmt(cell.mean_loss) << ",\n";
        out << "stdev," << fmt_p(cell.p) << ',' << cell.train_size << ',' << cell.sigma << ','
            << cell.k << ',' << fmt(cell.stdev_loss) << ",\n";
    }
}

namespace {

int spec_sigma(const ExperimentConfig& config, const UnknownSpec& spec) {
    switch (spec.kind) {
        case UnknownSpec::Kind::All:
            return config.net->vertex_count();
        case UnknownSpec::Kind::RandomSigma:
            return spec.sigma;
        case UnknownSpec::Kind::FromFile:
            return static_cast<int>(
                load_vertex_list(spec.path, config.net->vertex_count()).size());
    }
    return 0;
}

}  // namespace

PacValidation run_validate_pac(const ExperimentConfig& config, double eps, double delta) {
    if (!config.net)
        throw std::invalid_argument("run_validate_pac: no network");
    const UnknownSpec& spec = config.unknown_specs.front();
    const double p = config.p_values.front();
    const int sigma = spec_sigma(config, spec);
    const long long q = sample_size_pac(eps, delta, sigma, config.net->layer_count());

    PacValidation report;
    report.q = q;
    report.eps = eps;
    report.delta = delta;
    report.trials = config.trials;
    report.outcomes.resize(static_cast<std::size_t>(config.trials));
    run_indexed_jobs(config.trials, config.jobs, [&](int trial) {
        report.outcomes[static_cast<std::size_t>(trial)] =
            run_trial(config.net, config.master, spec, p, static_cast<int>(q),
                      config.eval_samples, config.base_seed + static_cast<std::uint64_t>(trial));
    });
    for (const TrialOutcome& outcome : report.outcomes)
        if (outcome.loss >= eps)
            ++report.failures;
    report.failure_fraction =
        static_cast<double>(report.failures) / static_cast<double>(config.trials);
    report.within_delta = report.failure_fraction <= delta;
    return report;
}

PmacValidation run_validate_pmac(const ExperimentConfig& config, double eps, double delta,
                                 double beta) {
    if (!config.net)
        throw std::invalid_argument("run_validate_pmac: no network");
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("run_validate_pmac: beta must be in (0, 1)");
    const UnknownSpec& spec = config.unknown_specs.front();
    const double p = config.p_values.front();
    const int sigma = spec_sigma(config, spec);
    const long long q =
        sample_size_pmac(eps, delta, beta, sigma, config.net->layer_count());

    PmacValidation report;
    report.q = q;
    report.eps = eps;
    report.delta = delta;
    report.beta = beta;
    report.trials = config.trials;
    report.outcomes.resize(static_cast<std::size_t>(config.trials));
    run_indexed_jobs(config.trials, config.jobs, [&](int trial) {
        report.outcomes[static_cast<std::size_t>(trial)] =
            run_trial(config.net, config.master, spec, p, static_cast<int>(q),
                      config.eval_samples, config.base_seed + static_cast<std::uint64_t>(trial),
                      beta);
    });
    for (const TrialOutcome& outcome : report.outcomes)
        if (outcome.pmac_loss > eps)
            ++report.failures;
    report.failure_fraction =
        static_cast<double>(report.failures) / static_cast<double>(config.trials);
    report.within_delta = report.failure_fraction <= delta;
    return report;
}

}  // namespace msyds
