// Command-line front end: graph generation, simulation, learning runs,
// Natarajan-dimension estimation, bound calculators, and the experiment
// harness. Exit codes: 0 success, 2 usage error, 3 data error, 4 size guard
// exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msyds/dynamics.hpp"
#include "msyds/experiments.hpp"
#include "msyds/graph.hpp"
#include "msyds/learner.hpp"
#include "msyds/ndim.hpp"
#include "msyds/rng.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitGuard = 4;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --config FILE holds a JSON object whose keys are the long option names of
// the subcommand (arrays for repeatable options). Explicit flags win: any
// key also present on the command line is dropped from the expansion, so a
// user flag fully replaces the config value.
std::vector<std::string> expand_config_args(const std::vector<std::string>& args) {
    std::string config_path;
    std::vector<std::string> rest;
    std::set<std::string> user_keys;
    for (std::size_t idx = 0; idx < args.size(); ++idx) {
        const std::string& a = args[idx];
        if (a == "--config") {
            if (idx + 1 >= args.size())
                throw UsageError("--config needs a file path");
            config_path = args[++idx];
        } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
        } else {
            if (a.rfind("--", 0) == 0) {
                const std::size_t eq = a.find('=');
                user_keys.insert(eq == std::string::npos ? a.substr(2)
                                                         : a.substr(2, eq - 2));
            }
            rest.push_back(a);
        }
    }
    if (config_path.empty())
        return rest;

    std::ifstream in(config_path);
    if (!in)
        throw msyds::ParseError("cannot open config file: " + config_path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw msyds::ParseError("config file " + config_path + ": " + e.what());
    }
    if (!doc.is_object())
        throw msyds::ParseError("config file " + config_path + ": expected a JSON object");

    std::vector<std::string> merged;
    auto push_value = [&](const std::string& key, const json& value) {
        merged.push_back("--" + key);
        if (value.is_boolean()) {
            if (!value.get<bool>())
                merged.pop_back();  // false flag: omit
            return;
        }
        if (value.is_string())
            merged.push_back(value.get<std::string>());
        else
            merged.push_back(value.dump());
    };
    for (const auto& [key, value] : doc.items()) {
        if (user_keys.count(key))
            continue;
        if (value.is_array())
            for (const json& item : value)
                push_value(key, item);
        else
            push_value(key, value);
    }
    merged.insert(merged.end(), rest.begin(), rest.end());
    return merged;
}

std::shared_ptr<const msyds::MultilayerNetwork> load_network(const std::string& path) {
    return std::make_shared<const msyds::MultilayerNetwork>(
        msyds::load_edge_list_file(path).net);
}

struct GraphSourceFlags {
    std::string graph_path;
    int gen_n = 0;
    int gen_k = 0;
    double gen_p = -1.0;
    double gen_avg_deg = -1.0;
    std::uint64_t gen_seed = 0;

    void add_to(CLI::App& app) {
        app.add_option("--graph", graph_path, "edge-list file");
        app.add_option("--n", gen_n, "generate Multi-Gnp: vertex count");
        app.add_option("--k", gen_k, "generate Multi-Gnp: layer count");
        app.add_option("--p-edge", gen_p, "generate Multi-Gnp: edge probability");
        app.add_option("--avg-deg", gen_avg_deg,
                       "generate Multi-Gnp: target per-layer mean degree");
        app.add_option("--graph-seed", gen_seed, "generator seed");
    }

    std::shared_ptr<const msyds::MultilayerNetwork> resolve() const {
        if (!graph_path.empty())
            return load_network(graph_path);
        if (gen_n <= 0 || gen_k <= 0)
            throw UsageError("need --graph or --n/--k generator parameters");
        double p = gen_p;
        if (p < 0.0) {
            if (gen_avg_deg < 0.0)
                throw UsageError("need --p-edge or --avg-deg with --n/--k");
            p = gen_avg_deg / static_cast<double>(gen_n - 1);
        }
        msyds::Rng rng(gen_seed);
        return std::make_shared<const msyds::MultilayerNetwork>(
            msyds::generate_multi_gnp(gen_n, gen_k, p, rng));
    }
};

std::vector<msyds::Vertex> resolve_unknown_flag(const std::string& spec_text,
                                                const msyds::MultilayerNetwork& net,
                                                std::uint64_t seed) {
    msyds::Rng rng(seed);
    return msyds::resolve_unknown_spec(msyds::UnknownSpec::parse(spec_text),
                                       net.vertex_count(), rng);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-")
        return std::cout;
    file.open(path);
    if (!file)
        throw msyds::ParseError("cannot write output file: " + path);
    return file;
}

int cmd_gen(std::vector<std::string> args) {
    CLI::App app{"generate a Multi-Gnp edge list", "msyds gen"};
    int n = 0, k = 0;
    double p = -1.0, avg_deg = -1.0;
    std::uint64_t seed = 0;
    std::string out_path;
    app.add_option("--n", n, "vertex count")->required();
    app.add_option("--k", k, "layer count")->required();
    app.add_option("--p", p, "edge probability");
    app.add_option("--avg-deg", avg_deg, "target per-layer mean degree");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--out", out_path, "output file (default stdout)");
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the help text, exit 0
    }

    if (p < 0.0) {
        if (avg_deg < 0.0)
            throw UsageError("gen: need --p or --avg-deg");
        if (n < 2)
            throw UsageError("gen: --avg-deg needs n >= 2");
        p = avg_deg / static_cast<double>(n - 1);
    }
    msyds::Rng rng(seed);
    const msyds::MultilayerNetwork net = msyds::generate_multi_gnp(n, k, p, rng);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    net.serialize(out);
    return 0;
}

int cmd_simulate(std::vector<std::string> args) {
    CLI::App app{"dump a trajectory", "msyds simulate"};
    std::string graph_path, thresholds_path, master_text = "or", init_bits, out_path;
    double init_p = -1.0;
    int steps = 1;
    std::uint64_t seed = 0;
    app.add_option("--graph", graph_path, "edge-list file")->required();
    app.add_option("--thresholds", thresholds_path, "threshold file")->required();
    app.add_option("--master", master_text, "or|and");
    app.add_option("--init", init_bits, "initial configuration bit string");
    app.add_option("--init-p", init_p, "random initial configuration: P[state 0]");
    app.add_option("--steps", steps, "number of update steps");
    app.add_option("--seed", seed, "seed for --init-p");
    app.add_option("--out", out_path, "output file (default stdout)");
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the help text, exit 0
    }

    auto net = load_network(graph_path);
    const std::vector<int> tau = msyds::load_threshold_table_file(thresholds_path, *net);
    const msyds::ThresholdSystem sys(net, msyds::parse_master_kind(master_text), tau);

    msyds::Configuration c0;
    if (!init_bits.empty()) {
        c0 = msyds::Configuration::parse(init_bits);
        if (c0.size() != net->vertex_count())
            throw std::invalid_argument("simulate: --init length mismatch");
    } else if (init_p >= 0.0) {
        msyds::Rng rng(seed);
        c0 = msyds::sample_config(msyds::BernoulliDistribution{init_p},
                                  net->vertex_count(), rng);
    } else {
        throw UsageError("simulate: need --init or --init-p");
    }

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    for (const msyds::Configuration& c : msyds::trajectory(sys, c0, steps))
        out << c.to_string() << '\n';
    return 0;
}

int cmd_learn(std::vector<std::string> args) {
    CLI::App app{"single learning run; writes the learned threshold file", "msyds learn"};
    std::string graph_path, thresholds_path, master_text = "or", unknown_text = "all";
    std::string out_path;
    double p = 0.5;
    int train_size = 500, eval_samples = 10000;
    std::uint64_t seed = 0;
    app.add_option("--graph", graph_path, "edge-list file")->required();
    app.add_option("--thresholds", thresholds_path, "target threshold file")->required();
    app.add_option("--master", master_text, "or|and");
    app.add_option("--unknown", unknown_text, "all | FILE | random:<sigma>");
    app.add_option("--p", p, "sampling distribution: P[state 0]");
    app.add_option("--train-size", train_size, "training set size");
    app.add_option("--eval-samples", eval_samples, "evaluation sample count");
    app.add_option("--seed", seed, "run seed");
    app.add_option("--out", out_path, "learned threshold file")->required();
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the help text, exit 0
    }

    auto net = load_network(graph_path);
    const std::vector<int> target_tau =
        msyds::load_threshold_table_file(thresholds_path, *net);
    const msyds::MasterKind master = msyds::parse_master_kind(master_text);
    const msyds::ThresholdSystem target(net, master, target_tau);
    const std::vector<msyds::Vertex> unknown =
        resolve_unknown_flag(unknown_text, *net, seed);
    const msyds::LearningProblem problem =
        msyds::LearningProblem::from_target(target, unknown);

    msyds::Rng rng(seed);
    const msyds::BernoulliSampler sampler(msyds::BernoulliDistribution{p},
                                          net->vertex_count());
    const msyds::TrainingSet t = msyds::make_training_set(target, sampler, train_size, rng);
    const msyds::ThresholdSystem h = msyds::pac_learn(problem, t);
    msyds::save_threshold_table_file(out_path, *net, h.threshold_table());

    const int risk = msyds::empirical_risk(h, t);
    const double loss = msyds::estimate_true_error(h, target, sampler, eval_samples, rng);
    std::cout << "sigma=" << problem.sigma() << " train_size=" << train_size
              << " empirical_risk=" << risk << " estimated_loss=" << loss << '\n';
    return 0;
}

int cmd_sweep(std::vector<std::string> args) {
    CLI::App app{"loss sweep over (p, train size) cells", "msyds sweep"};
    GraphSourceFlags graph_flags;
    graph_flags.add_to(app);
    std::string master_text = "or", csv_path;
    std::vector<std::string> unknown_texts;
    std::vector<double> p_values;
    std::vector<int> train_sizes;
    int eval_samples = 10000, trials = 50, jobs = 1;
    std::uint64_t seed = 0;
    app.add_option("--master", master_text, "or|and");
    app.add_option("--unknown", unknown_texts, "all | FILE | random:<sigma> (repeatable)");
    app.add_option("--p", p_values, "P[state 0] values (repeatable)");
    app.add_option("--train-size", train_sizes, "training set sizes (repeatable)");
    app.add_option("--eval-samples", eval_samples, "evaluation sample count");
    app.add_option("--trials", trials, "trials per cell");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--jobs", jobs, "concurrent trials");
    app.add_option("--csv", csv_path, "CSV output path (default stdout)");
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the help text, exit 0
    }

    msyds::ExperimentConfig config;
    config.net = graph_flags.resolve();
    config.master = msyds::parse_master_kind(master_text);
    if (!unknown_texts.empty()) {
        config.unknown_specs.clear();
        for (const std::string& text : unknown_texts)
            config.unknown_specs.push_back(msyds::UnknownSpec::parse(text));
    }
    if (!p_values.empty())
        config.p_values = p_values;
    if (!train_sizes.empty())
        config.train_sizes = train_sizes;
    config.eval_samples = eval_samples;
    config.trials = trials;
    config.base_seed = seed;
    config.jobs = jobs;

    const msyds::SweepResult result = msyds::run_sweep(config);
    std::ofstream file;
    std::ostream& out = open_output(file, csv_path);
    msyds::write_sweep_csv(out, result);
    return 0;
}

int cmd_validate(std::vector<std::string> args, bool pmac) {
    CLI::App app{pmac ? "validate the PMAC sample-size bound"
                      : "validate the PAC sample-size bound",
                 pmac ? "msyds validate-pmac" : "msyds validate-pac"};
    GraphSourceFlags graph_flags;
    graph_flags.add_to(app);
    std::string master_text = "or", unknown_text = "all", csv_path;
    double eps = 0.1, delta = 0.1, beta = 0.5, p = 0.5;
    int eval_samples = 10000, trials = 50, jobs = 1;
    std::uint64_t seed = 0;
    app.add_option("--eps", eps, "PAC epsilon")->required();
    app.add_option("--delta", delta, "PAC delta")->required();
    if (pmac)
        app.add_option("--beta", beta, "PMAC approximation factor")->required();
    app.add_option("--master", master_text, "or|and");
    app.add_option("--unknown", unknown_text, "all | FILE | random:<sigma>");
    app.add_option("--p", p, "P[state 0]");
    app.add_option("--eval-samples", eval_samples, "evaluation sample count");
    app.add_option("--trials", trials, "trial count");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--jobs", jobs, "concurrent trials");
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the help text, exit 0
    }

    msyds::ExperimentConfig config;
    config.net = graph_flags.resolve();
    config.master = msyds::parse_master_kind(master_text);
    config.unknown_specs = {msyds::UnknownSpec::parse(unknown_text)};
    config.p_values = {p};
    config.eval_samples = eval_samples;
    config.trials = trials;
    config.base_seed = seed;
    config.jobs = jobs;

    if (!pmac) {
        const msyds::PacValidation report = msyds::run_validate_pac(config, eps, delta);
        std::cout << "q=" << report.q << " trials=" << report.trials
                  << " failures=" << report.failures
                  << " failure_fraction=" << report.failure_fraction
                  << " delta=" << report.delta << " verdict="
                  << (report.within_delta ? "within-delta" : "EXCEEDS-delta") << '\n';
    } else {
        const msyds::PmacValidation report =
            msyds::run_validate_pmac(config, eps, delta, beta);
        std::cout << "q=" << report.q << " beta=" << report.beta
                  << " trials=" << report.trials << " failures=" << report.failures
                  << " failure_fraction=" << report.failure_fraction
                  << " delta=" << report.delta << " verdict="
                  << (report.within_delta ? "within-delta" : "EXCEEDS-delta") << '\n';
    }
    return 0;
}

int cmd_ndim(std::vector<std::string> args) {
    CLI::App app{"Natarajan-dimension bounds and certificates", "msyds ndim"};
    std::string graph_path, unknown_text = "all", method, candidate_path, thresholds_path;
    std::string master_text = "or", csv_path, cert_path;
    int guard_entries = 12, guard_vertices = 16;
    std::uint64_t seed = 0;
    app.add_option("--graph", graph_path, "edge-list file")->required();
    app.add_option("--method", method, "dfs | pnn | oracle")->required();
    app.add_option("--unknown", unknown_text, "all | FILE | random:<sigma>");
    app.add_option("--candidate", candidate_path, "candidate file for --method oracle");
    app.add_option("--thresholds", thresholds_path,
                   "known thresholds for --method oracle (unused slots ignored)");
    app.add_option("--master", master_text, "or|and (oracle)");
    app.add_option("--guard-entries", guard_entries, "oracle guard: max |R|");
    app.add_option("--guard-vertices", guard_vertices, "oracle guard: max n");
    app.add_option("--seed", seed, "seed for random:<sigma>");
    app.add_option("--csv", csv_path, "CSV output path");
    app.add_option("--cert", cert_path, "certificate output (pnn: Q-set file)");
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the help text, exit 0
    }

    auto net = load_network(graph_path);
    const std::vector<msyds::Vertex> unknown =
        resolve_unknown_flag(unknown_text, *net, seed);
    const int sigma = static_cast<int>(unknown.size());

    const auto start = std::chrono::steady_clock::now();
    long long value = 0;
    if (method == "pnn") {
        const std::vector<msyds::QSet> classes = msyds::pnn_color_classes(*net, unknown);
        const msyds::QSet* largest = nullptr;
        for (const msyds::QSet& cls : classes)
            if (!largest || cls.pairs.size() > largest->pairs.size())
                largest = &cls;
        value = largest ? static_cast<long long>(largest->pairs.size()) : 0;
        if (largest && !cert_path.empty()) {
            // certificate: the non-nested pair set backing the bound
            std::ofstream cert(cert_path);
            if (!cert)
                throw msyds::ParseError("cannot write certificate file: " + cert_path);
            msyds::save_qset(cert, *largest);
        }
    } else if (method == "dfs") {
        const std::vector<msyds::Configuration> r = msyds::dfs_canonical_set(*net, unknown);
        const auto mapping = msyds::is_canonical(*net, r, unknown);
        if (!mapping)
            throw std::runtime_error("ndim: DFS set unexpectedly not canonical");
        value = static_cast<long long>(r.size());
        for (std::size_t j = 0; j < r.size(); ++j)
            std::cout << r[j].to_string() << " -> landmark " << (*mapping)[j] << '\n';
    } else if (method == "oracle") {
        if (candidate_path.empty())
            throw UsageError("ndim --method oracle needs --candidate");
        std::ifstream cand_in(candidate_path);
        if (!cand_in)
            throw msyds::ParseError("cannot open candidate file: " + candidate_path);
        const msyds::ShatterCandidate cand = msyds::load_candidate(cand_in);
        std::vector<int> known(static_cast<std::size_t>(net->vertex_count()) *
                                   net->layer_count(),
                               -1);
        if (!thresholds_path.empty()) {
            const std::vector<int> table =
                msyds::load_threshold_table_file(thresholds_path, *net);
            std::vector<char> is_unknown(static_cast<std::size_t>(net->vertex_count()), 0);
            for (msyds::Vertex v : unknown)
                is_unknown[static_cast<std::size_t>(v)] = 1;
            for (int i = 0; i < net->layer_count(); ++i)
                for (int v = 0; v < net->vertex_count(); ++v)
                    if (!is_unknown[static_cast<std::size_t>(v)])
                        known[static_cast<std::size_t>(i) * net->vertex_count() + v] =
                            table[static_cast<std::size_t>(i) * net->vertex_count() + v];
        } else if (sigma != net->vertex_count()) {
            throw UsageError("ndim --method oracle needs --thresholds unless --unknown all");
        }
        const msyds::LearningProblem problem(net, msyds::parse_master_kind(master_text),
                                             unknown, known);
        const msyds::OracleGuard guard{guard_entries, guard_vertices};
        value = msyds::shatter_oracle(problem, cand.entries, guard) ? 1 : 0;
    } else {
        throw UsageError("ndim: --method must be dfs, pnn, or oracle");
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();

    std::cout << "method=" << method << " n=" << net->vertex_count()
              << " k=" << net->layer_count() << " sigma=" << sigma << " value=" << value
              << " millis=" << elapsed << '\n';
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv)
            throw msyds::ParseError("cannot write CSV file: " + csv_path);
        csv << "# msyds-csv v1\n";
        csv << "method,n,k,sigma,value,millis\n";
        csv << method << ',' << net->vertex_count() << ',' << net->layer_count() << ','
            << sigma << ',' << value << ',' << elapsed << '\n';
    }
    return 0;
}

int cmd_bounds(std::vector<std::string> args) {
    CLI::App app{"sample-size bound calculators", "msyds bounds"};
    double eps = 0.0, delta = 0.0, beta = -1.0, davg = -1.0;
    long long sigma = 0, k = 0;
    std::string csv_path;
    app.add_option("--eps", eps, "epsilon")->required();
    app.add_option("--delta", delta, "delta")->required();
    app.add_option("--sigma", sigma, "number of unknown vertices")->required();
    app.add_option("--k", k, "number of layers")->required();
    app.add_option("--beta", beta, "PMAC approximation factor");
    app.add_option("--davg", davg, "merged average degree for the generic bound");
    app.add_option("--csv", csv_path, "CSV output path");
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the help text, exit 0
    }

    const long long pac = msyds::sample_size_pac(eps, delta, sigma, k);
    std::cout << "pac=" << pac << '\n';
    std::optional<long long> pmac;
    if (beta >= 0.0) {
        pmac = msyds::sample_size_pmac(eps, delta, beta, sigma, k);
        std::cout << "pmac=" << *pmac << '\n';
    }
    std::optional<double> generic;
    if (davg >= 0.0) {
        generic = msyds::sample_size_generic(eps, delta, sigma, k, davg);
        std::cout << "generic=" << *generic << '\n';
    }
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv)
            throw msyds::ParseError("cannot write CSV file: " + csv_path);
        csv << "# msyds-csv v1\n";
        csv << "bound,value\n";
        csv << "pac," << pac << '\n';
        if (pmac)
            csv << "pmac," << *pmac << '\n';
        if (generic)
            csv << "generic," << *generic << '\n';
    }
    return 0;
}

void print_usage(std::ostream& out) {
    out << "usage: msyds <subcommand> [flags]\n"
           "  gen            generate a Multi-Gnp edge list\n"
           "  simulate       dump a trajectory\n"
           "  learn          single learning run, emits learned thresholds\n"
           "  sweep          loss sweep; CSV output\n"
           "  validate-pac   Monte-Carlo check of the PAC bound\n"
           "  validate-pmac  Monte-Carlo check of the PMAC bound\n"
           "  ndim           Natarajan-dimension bounds and certificates\n"
           "  bounds         sample-size calculators\n"
           "Every flag can also live in a JSON --config file; flags win.\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        print_usage(std::cerr);
        return kExitUsage;
    }
    const std::string sub = argv[1];
    std::vector<std::string> args(argv + 2, argv + argc);

    try {
        args = expand_config_args(args);
        // CLI11 parses a reversed token list.
        std::vector<std::string> reversed(args.rbegin(), args.rend());

        auto dispatch = [&](auto&& fn) { return fn(reversed); };

        if (sub == "gen")
            return dispatch([&](auto& a) { return cmd_gen(a); });
        if (sub == "simulate")
            return dispatch([&](auto& a) { return cmd_simulate(a); });
        if (sub == "learn")
            return dispatch([&](auto& a) { return cmd_learn(a); });
        if (sub == "sweep")
            return dispatch([&](auto& a) { return cmd_sweep(a); });
        if (sub == "validate-pac")
            return dispatch([&](auto& a) { return cmd_validate(a, false); });
        if (sub == "validate-pmac")
            return dispatch([&](auto& a) { return cmd_validate(a, true); });
        if (sub == "ndim")
            return dispatch([&](auto& a) { return cmd_ndim(a); });
        if (sub == "bounds")
            return dispatch([&](auto& a) { return cmd_bounds(a); });
        if (sub == "--help" || sub == "-h" || sub == "help") {
            print_usage(std::cout);
            return 0;
        }
        std::cerr << "msyds: unknown subcommand \"" << sub << "\"\n";
        print_usage(std::cerr);
        return kExitUsage;
    } catch (const CLI::CallForHelp&) {
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "msyds: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "msyds: " << e.what() << '\n';
        return kExitUsage;
    } catch (const msyds::GuardExceededError& e) {
        std::cerr << "msyds: " << e.what() << '\n';
        return kExitGuard;
    } catch (const msyds::ParseError& e) {
        std::cerr << "msyds: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "msyds: " << e.what() << '\n';
        return kExitData;
    }
}
