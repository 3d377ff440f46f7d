#include "msyds/learner.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace msyds {

TrainingSet load_training_set(std::istream& in) {
    TrainingSet t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#')
            continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!(ss >> a))
            continue;
        if (!(ss >> b))
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected two bit strings");
        Configuration ca, cb;
        try {
            ca = Configuration::parse(a);
            cb = Configuration::parse(b);
        } catch (const std::invalid_argument& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (ca.size() != cb.size())
            throw ParseError("line " + std::to_string(line_no) +
                             ": pair lengths differ");
        t.pairs.emplace_back(std::move(ca), std::move(cb));
    }
    return t;
}

void save_training_set(std::ostream& out, const TrainingSet& t) {
    for (const auto& [c, csucc] : t.pairs)
        out << c.to_string() << ' ' << csucc.to_string() << '\n';
}

Configuration sample_config(const BernoulliDistribution& dist, int n, Rng& rng) {
    if (!(dist.p_zero >= 0.0 && dist.p_zero <= 1.0))
        throw std::invalid_argument("sample_config: p must be in [0, 1]");
    Configuration c(n);
    for (Vertex v = 0; v < n; ++v)
        if (!rand_bernoulli(rng, dist.p_zero))
            c.set_bit(v, true);
    return c;
}

BernoulliSampler::BernoulliSampler(BernoulliDistribution dist, int n)
    : dist_(dist), n_(n) {
    if (!(dist.p_zero >= 0.0 && dist.p_zero <= 1.0))
        throw std::invalid_argument("BernoulliSampler: p must be in [0, 1]");
    if (n < 1)
        throw std::invalid_argument("BernoulliSampler: n must be >= 1");
}

Configuration BernoulliSampler::sample(Rng& rng) const {
    return sample_config(dist_, n_, rng);
}

TrajectorySampler::TrajectorySampler(std::vector<Configuration> snapshots)
    : snapshots_(std::move(snapshots)) {
    if (snapshots_.empty())
        throw std::invalid_argument("TrajectorySampler: no snapshots");
    for (const Configuration& c : snapshots_)
        if (c.size() != snapshots_.front().size())
            throw std::invalid_argument("TrajectorySampler: snapshot lengths differ");
}

Configuration TrajectorySampler::sample(Rng& rng) const {
    return snapshots_[rand_below(rng, snapshots_.size())];
}

int TrajectorySampler::vertex_count() const {
    return snapshots_.front().size();
}

LearningProblem::LearningProblem(std::shared_ptr<const MultilayerNetwork> net,
                                 MasterKind master, std::vector<Vertex> unknown,
                                 std::vector<int> known_tau)
    : net_(std::move(net)),
      master_(master),
      unknown_(std::move(unknown)),
      known_tau_(std::move(known_tau)) {
    if (!net_)
        throw std::invalid_argument("LearningProblem: null network");
    const int n = net_->vertex_count();
    const int k = net_->layer_count();
    std::sort(unknown_.begin(), unknown_.end());
    if (std::adjacent_find(unknown_.begin(), unknown_.end()) != unknown_.end())
        throw std::invalid_argument("LearningProblem: duplicate unknown vertex");
    is_unknown_.assign(static_cast<std::size_t>(n), 0);
    for (Vertex v : unknown_) {
        if (v < 0 || v >= n)
            throw std::invalid_argument("LearningProblem: unknown vertex out of range");
        is_unknown_[static_cast<std::size_t>(v)] = 1;
    }
    if (known_tau_.size() != static_cast<std::size_t>(n) * k)
        throw std::invalid_argument("LearningProblem: known threshold table size mismatch");
    for (Layer i = 0; i < k; ++i)
        for (Vertex v = 0; v < n; ++v) {
            const int t = known_tau_[static_cast<std::size_t>(i) * n + v];
            if (is_unknown_[static_cast<std::size_t>(v)]) {
                if (t != -1)
                    throw std::invalid_argument(
                        "LearningProblem: unknown slot must carry -1");
            } else if (t < 0 || t > net_->degree(v, i) + 2) {
                throw std::invalid_argument(
                    "LearningProblem: known threshold out of [0, deg+2]");
            }
        }
}

LearningProblem LearningProblem::all_unknown(std::shared_ptr<const MultilayerNetwork> net,
                                             MasterKind master) {
    if (!net)
        throw std::invalid_argument("LearningProblem: null network");
    const int n = net->vertex_count();
    const int k = net->layer_count();
    std::vector<Vertex> unknown(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        unknown[static_cast<std::size_t>(v)] = v;
    std::vector<int> known(static_cast<std::size_t>(n) * k, -1);
    return LearningProblem(std::move(net), master, std::move(unknown), std::move(known));
}

LearningProblem LearningProblem::from_target(const ThresholdSystem& target,
                                             std::vector<Vertex> unknown) {
    const int n = target.network().vertex_count();
    const int k = target.network().layer_count();
    std::vector<char> hide(static_cast<std::size_t>(n), 0);
    for (Vertex v : unknown) {
        if (v < 0 || v >= n)
            throw std::invalid_argument("LearningProblem: unknown vertex out of range");
        hide[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<int> known(target.threshold_table().begin(), target.threshold_table().end());
    for (Layer i = 0; i < k; ++i)
        for (Vertex v = 0; v < n; ++v)
            if (hide[static_cast<std::size_t>(v)])
                known[static_cast<std::size_t>(i) * n + v] = -1;
    return LearningProblem(target.network_ptr(), target.master(), std::move(unknown),
                           std::move(known));
}

int LearningProblem::known_threshold(Vertex v, Layer i) const {
    if (v < 0 || v >= net_->vertex_count() || i < 0 || i >= net_->layer_count())
        throw std::invalid_argument("known_threshold: index out of range");
    if (is_unknown(v))
        throw std::invalid_argument("known_threshold: vertex is unknown");
    return known_tau_[static_cast<std::size_t>(i) * net_->vertex_count() + v];
}

TrainingSet make_training_set(const ThresholdSystem& target, const ConfigSampler& dist,
                              int q, Rng& rng) {
    if (q < 0)
        throw std::invalid_argument("make_training_set: q must be >= 0");
    if (dist.vertex_count() != target.network().vertex_count())
        throw std::invalid_argument("make_training_set: sampler size mismatch");
    TrainingSet t;
    t.pairs.reserve(static_cast<std::size_t>(q));
    for (int j = 0; j < q; ++j) {
        Configuration c = dist.sample(rng);
        Configuration succ = target.successor(c);
        t.pairs.emplace_back(std::move(c), std::move(succ));
    }
    return t;
}

ThresholdSystem pac_learn(const LearningProblem& problem, const TrainingSet& t) {
    const MultilayerNetwork& net = problem.network();
    const int n = net.vertex_count();
    const int k = net.layer_count();
    for (const auto& [c, csucc] : t.pairs)
        if (c.size() != n || csucc.size() != n)
            throw std::invalid_argument("pac_learn: pair length mismatch");

    const bool is_or = problem.master() == MasterKind::Or;
    std::vector<int> tau(static_cast<std::size_t>(n) * k);
    for (Layer i = 0; i < k; ++i)
        for (Vertex v = 0; v < n; ++v)
            if (!problem.is_unknown(v))
                tau[static_cast<std::size_t>(i) * n + v] = problem.known_threshold(v, i);

    for (Vertex v : problem.unknown()) {
        for (Layer i = 0; i < k; ++i) {
            int learned;
            if (is_or) {
                // tau = 1 + max score among examples that turn v off; 0 when
                // every example turns v on.
                int best = -1;
                for (const auto& [c, csucc] : t.pairs)
                    if (!csucc.bit(v))
                        best = std::max(best, score(net, c, v, i));
                learned = best + 1;
            } else {
                // Dual rule: min score among examples that turn v on, deg+2
                // when none does.
                int best = net.degree(v, i) + 2;
                bool any = false;
                for (const auto& [c, csucc] : t.pairs)
                    if (csucc.bit(v)) {
                        best = any ? std::min(best, score(net, c, v, i))
                                   : score(net, c, v, i);
                        any = true;
                    }
                learned = best;
            }
            tau[static_cast<std::size_t>(i) * n + v] = learned;
        }
    }
    return ThresholdSystem(problem.network_ptr(), problem.master(), std::move(tau));
}

int empirical_risk(const ThresholdSystem& h, const TrainingSet& t) {
    int wrong = 0;
    for (const auto& [c, csucc] : t.pairs)
        if (h.successor(c) != csucc)
            ++wrong;
    return wrong;
}

namespace {

// When both systems run over the same network and master kind, each score
// is computed once and checked against both threshold tables.
bool systems_disagree_shared(const ThresholdSystem& h, const ThresholdSystem& target,
                             const Configuration& c) {
    const MultilayerNetwork& net = h.network();
    const int n = net.vertex_count();
    const int k = net.layer_count();
    const auto tau_h = h.threshold_table();
    const auto tau_t = target.threshold_table();
    const bool is_or = h.master() == MasterKind::Or;
    for (Vertex v = 0; v < n; ++v) {
        bool fh = !is_or;
        bool ft = !is_or;
        for (Layer i = 0; i < k; ++i) {
            const int s = score(net, c, v, i);
            const bool fires_h = s >= tau_h[static_cast<std::size_t>(i) * n + v];
            const bool fires_t = s >= tau_t[static_cast<std::size_t>(i) * n + v];
            if (is_or) {
                fh = fh || fires_h;
                ft = ft || fires_t;
                if (fh && ft)
                    break;
            } else {
                fh = fh && fires_h;
                ft = ft && fires_t;
                if (!fh && !ft)
                    break;
            }
        }
        if (fh != ft)
            return true;
    }
    return false;
}

}  // namespace

double estimate_true_error(const ThresholdSystem& h, const ThresholdSystem& target,
                           const ConfigSampler& dist, int samples, Rng& rng) {
    if (samples < 1)
        throw std::invalid_argument("estimate_true_error: samples must be >= 1");
    const bool shared =
        h.network_ptr() == target.network_ptr() && h.master() == target.master();
    int wrong = 0;
    for (int s = 0; s < samples; ++s) {
        Configuration c = dist.sample(rng);
        if (shared ? systems_disagree_shared(h, target, c)
                   : h.successor(c) != target.successor(c))
            ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(samples);
}

int pmac_mismatch(const Configuration& hC, const Configuration& tC,
                  std::span<const Vertex> unknown) {
    if (hC.size() != tC.size())
        throw std::invalid_argument("pmac_mismatch: configuration length mismatch");
    int count = 0;
    for (Vertex v : unknown)
        if (hC.bit(v) != tC.bit(v))
            ++count;
    return count;
}

double estimate_pmac_error(const ThresholdSystem& h, const ThresholdSystem& target,
                           const ConfigSampler& dist, std::span<const Vertex> unknown,
                           double beta, int samples, Rng& rng) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("estimate_pmac_error: beta must be in (0, 1)");
    if (samples < 1)
        throw std::invalid_argument("estimate_pmac_error: samples must be >= 1");
    // W >= beta*sigma with integer W; the small slack keeps an exactly
    // integral beta*sigma from rounding up and missing the boundary case.
    const double threshold = beta * static_cast<double>(unknown.size()) - 1e-9;
    int bad = 0;
    for (int s = 0; s < samples; ++s) {
        Configuration c = dist.sample(rng);
        const int w = pmac_mismatch(h.successor(c), target.successor(c), unknown);
        if (static_cast<double>(w) >= threshold)
            ++bad;
    }
    return static_cast<double>(bad) / static_cast<double>(samples);
}

namespace {

void check_pac_domain(double eps, double delta, long long sigma, long long k) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("sample size: eps must be in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("sample size: delta must be in (0, 1)");
    if (sigma < 1)
        throw std::invalid_argument("sample size: sigma must be >= 1");
    if (k < 1)
        throw std::invalid_argument("sample size: k must be >= 1");
}

long long checked_ceil(long double x) {
    if (!std::isfinite(x) || x > 4.0e18L)
        throw std::overflow_error("sample size does not fit a 64-bit count");
    const long long q = static_cast<long long>(std::ceil(x));
    return q < 1 ? 1 : q;
}

}  // namespace

long long sample_size_pac(double eps, double delta, long long sigma, long long k) {
    check_pac_domain(eps, delta, sigma, k);
    const long double sk = static_cast<long double>(sigma) * static_cast<long double>(k);
    return checked_ceil((1.0L / eps) * sk * std::log(sk / delta));
}

long long sample_size_pmac(double eps, double delta, double beta, long long sigma,
                           long long k) {
    check_pac_domain(eps, delta, sigma, k);
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("sample size: beta must be in (0, 1)");
    const long double sk = static_cast<long double>(sigma) * static_cast<long double>(k);
    return checked_ceil((1.0L / eps) * (1.0L / beta) * static_cast<long double>(k) *
                        std::log(sk / delta));
}

double sample_size_generic(double eps, double delta, long long sigma, long long k,
                           double davg) {
    check_pac_domain(eps, delta, sigma, k);
    if (!(davg > 1.0))
        throw std::invalid_argument("sample_size_generic: davg must be > 1");
    const double sk = static_cast<double>(sigma) * static_cast<double>(k);
    return (1.0 / eps) * (sk * std::log(davg) + std::log(1.0 / delta));
}

}  // namespace msyds
