#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "msyds/dynamics.hpp"
#include "msyds/experiments.hpp"
#include "msyds/graph.hpp"
#include "msyds/learner.hpp"
#include "msyds/ndim.hpp"
#include "msyds/rng.hpp"

namespace py = pybind11;
using namespace msyds;

namespace {

std::shared_ptr<MultilayerNetwork> make_network(
    int n, int k, const std::vector<std::tuple<int, int, int>>& edges) {
    std::vector<LayerEdge> converted;
    converted.reserve(edges.size());
    for (const auto& [layer, u, v] : edges)
        converted.push_back({layer, u, v});
    return std::make_shared<MultilayerNetwork>(n, k, converted);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multilayer threshold dynamical systems: simulation, PAC/PMAC "
              "learning, and Natarajan-dimension machinery";

    py::register_exception<ParseError>(m, "FileParseError", PyExc_ValueError);
    py::register_exception<GuardExceededError>(m, "GuardExceeded", PyExc_RuntimeError);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed") = 0);

    py::class_<VertexLayerPair>(m, "VertexLayerPair")
        .def(py::init<Vertex, Layer>(), py::arg("v"), py::arg("i"))
        .def_readwrite("v", &VertexLayerPair::v)
        .def_readwrite("i", &VertexLayerPair::i)
        .def("__repr__", [](const VertexLayerPair& p) {
            return "VertexLayerPair(v=" + std::to_string(p.v) +
                   ", i=" + std::to_string(p.i) + ")";
        });

    py::class_<MultilayerNetwork, std::shared_ptr<MultilayerNetwork>>(m, "MultilayerNetwork")
        .def(py::init(&make_network), py::arg("n"), py::arg("k"), py::arg("edges"),
             "edges: list of (layer, u, v) triples")
        .def_property_readonly("n", &MultilayerNetwork::vertex_count)
        .def_property_readonly("k", &MultilayerNetwork::layer_count)
        .def("degree", &MultilayerNetwork::degree, py::arg("v"), py::arg("i"))
        .def("neighbors",
             [](const MultilayerNetwork& net, Vertex v, Layer i) {
                 auto span = net.neighbors(v, i);
                 return std::vector<Vertex>(span.begin(), span.end());
             },
             py::arg("v"), py::arg("i"))
        .def("closed_neighborhood", &MultilayerNetwork::closed_neighborhood, py::arg("v"),
             py::arg("i"))
        .def("edge_count", py::overload_cast<>(&MultilayerNetwork::edge_count, py::const_))
        .def("layer_edge_count",
             py::overload_cast<Layer>(&MultilayerNetwork::edge_count, py::const_),
             py::arg("i"))
        .def("serialize",
             [](const MultilayerNetwork& net) {
                 std::ostringstream out;
                 net.serialize(out);
                 return out.str();
             })
        .def("__eq__", [](const MultilayerNetwork& a, const MultilayerNetwork& b) {
            return a == b;
        });

    m.def("load_edge_list",
          [](const std::string& text) {
              std::istringstream in(text);
              return std::make_shared<MultilayerNetwork>(load_edge_list(in).net);
          },
          py::arg("text"), "Parse an edge-list document from a string.");
    m.def("load_edge_list_file",
          [](const std::string& path) {
              return std::make_shared<MultilayerNetwork>(load_edge_list_file(path).net);
          },
          py::arg("path"));
    m.def("generate_multi_gnp",
          [](int n, int k, double edge_prob, Rng& rng) {
              return std::make_shared<MultilayerNetwork>(
                  generate_multi_gnp(n, k, edge_prob, rng));
          },
          py::arg("n"), py::arg("k"), py::arg("edge_prob"), py::arg("rng"));
    m.def("merged_average_degree",
          [](const std::shared_ptr<MultilayerNetwork>& net, const std::vector<Vertex>& vset) {
              return merged_average_degree(*net, vset);
          },
          py::arg("net"), py::arg("vset"));

    py::class_<Configuration>(m, "Configuration")
        .def(py::init<int>(), py::arg("n"))
        .def_static("parse", &Configuration::parse, py::arg("bits"))
        .def_property_readonly("n", &Configuration::size)
        .def("bit", &Configuration::bit, py::arg("v"))
        .def("set_bit", &Configuration::set_bit, py::arg("v"), py::arg("value"))
        .def("count_ones", &Configuration::count_ones)
        .def("complemented", &Configuration::complemented)
        .def("__str__", &Configuration::to_string)
        .def("__repr__",
             [](const Configuration& c) { return "Configuration('" + c.to_string() + "')"; })
        .def("__eq__",
             [](const Configuration& a, const Configuration& b) { return a == b; })
        .def("__hash__",
             [](const Configuration& c) { return py::hash(py::str(c.to_string())); });

    py::enum_<MasterKind>(m, "MasterKind")
        .value("OR", MasterKind::Or)
        .value("AND", MasterKind::And);
    m.def("parse_master_kind", &parse_master_kind, py::arg("text"));

    m.def("score",
          [](const std::shared_ptr<MultilayerNetwork>& net, const Configuration& c, Vertex v,
             Layer i) { return score(*net, c, v, i); },
          py::arg("net"), py::arg("config"), py::arg("v"), py::arg("i"));

    py::class_<ThresholdSystem>(m, "ThresholdSystem")
        .def(py::init([](const std::shared_ptr<MultilayerNetwork>& net, MasterKind master,
                         const std::vector<int>& tau) {
                 return ThresholdSystem(net, master, tau);
             }),
             py::arg("net"), py::arg("master"), py::arg("tau"),
             "tau is layer-major: tau[i * n + v]")
        .def_property_readonly("master", &ThresholdSystem::master)
        .def("threshold", &ThresholdSystem::threshold, py::arg("v"), py::arg("i"))
        .def("threshold_table",
             [](const ThresholdSystem& sys) {
                 auto span = sys.threshold_table();
                 return std::vector<int>(span.begin(), span.end());
             })
        .def("successor", &ThresholdSystem::successor, py::arg("config"));

    m.def("successor",
          [](const ThresholdSystem& sys, const Configuration& c) { return sys.successor(c); },
          py::arg("sys"), py::arg("config"));
    m.def("trajectory", &trajectory, py::arg("sys"), py::arg("config"), py::arg("steps"));
    m.def("random_threshold_table",
          [](const std::shared_ptr<MultilayerNetwork>& net, Rng& rng) {
              return random_threshold_table(*net, rng);
          },
          py::arg("net"), py::arg("rng"));

    py::class_<BernoulliDistribution>(m, "BernoulliDistribution")
        .def(py::init([](double p) { return BernoulliDistribution{p}; }), py::arg("p"))
        .def_readwrite("p", &BernoulliDistribution::p_zero);
    m.def("sample_config", &sample_config, py::arg("dist"), py::arg("n"), py::arg("rng"));

    py::class_<ConfigSampler>(m, "ConfigSampler");
    py::class_<BernoulliSampler, ConfigSampler>(m, "BernoulliSampler")
        .def(py::init<BernoulliDistribution, int>(), py::arg("dist"), py::arg("n"))
        .def("sample", &BernoulliSampler::sample, py::arg("rng"));
    py::class_<TrajectorySampler, ConfigSampler>(m, "TrajectorySampler")
        .def(py::init<std::vector<Configuration>>(), py::arg("snapshots"))
        .def("sample", &TrajectorySampler::sample, py::arg("rng"));

    py::class_<TrainingSet>(m, "TrainingSet")
        .def(py::init<>())
        .def_readwrite("pairs", &TrainingSet::pairs)
        .def("__len__", [](const TrainingSet& t) { return t.size(); });

    py::class_<LearningProblem>(m, "LearningProblem")
        .def(py::init([](const std::shared_ptr<MultilayerNetwork>& net, MasterKind master,
                         const std::vector<Vertex>& unknown, const std::vector<int>& known) {
                 return LearningProblem(net, master, unknown, known);
             }),
             py::arg("net"), py::arg("master"), py::arg("unknown"), py::arg("known_tau"),
             "known_tau is layer-major with -1 at unknown slots")
        .def_static("all_unknown",
                    [](const std::shared_ptr<MultilayerNetwork>& net, MasterKind master) {
                        return LearningProblem::all_unknown(net, master);
                    },
                    py::arg("net"), py::arg("master"))
        .def_static("from_target", &LearningProblem::from_target, py::arg("target"),
                    py::arg("unknown"))
        .def_property_readonly("sigma", &LearningProblem::sigma)
        .def_property_readonly("unknown", [](const LearningProblem& p) {
            auto span = p.unknown();
            return std::vector<Vertex>(span.begin(), span.end());
        });

    m.def("make_training_set", &make_training_set, py::arg("target"), py::arg("dist"),
          py::arg("q"), py::arg("rng"));
    m.def("pac_learn", &pac_learn, py::arg("problem"), py::arg("training_set"));
    m.def("empirical_risk", &empirical_risk, py::arg("h"), py::arg("training_set"));
    m.def("estimate_true_error", &estimate_true_error, py::arg("h"), py::arg("target"),
          py::arg("dist"), py::arg("samples"), py::arg("rng"));
    m.def("pmac_mismatch",
          [](const Configuration& hc, const Configuration& tc,
             const std::vector<Vertex>& unknown) { return pmac_mismatch(hc, tc, unknown); },
          py::arg("h_config"), py::arg("target_config"), py::arg("unknown"));
    m.def("estimate_pmac_error",
          [](const ThresholdSystem& h, const ThresholdSystem& target, const ConfigSampler& d,
             const std::vector<Vertex>& unknown, double beta, int samples, Rng& rng) {
              return estimate_pmac_error(h, target, d, unknown, beta, samples, rng);
          },
          py::arg("h"), py::arg("target"), py::arg("dist"), py::arg("unknown"),
          py::arg("beta"), py::arg("samples"), py::arg("rng"));
    m.def("sample_size_pac", &sample_size_pac, py::arg("eps"), py::arg("delta"),
          py::arg("sigma"), py::arg("k"));
    m.def("sample_size_pmac", &sample_size_pmac, py::arg("eps"), py::arg("delta"),
          py::arg("beta"), py::arg("sigma"), py::arg("k"));
    m.def("sample_size_generic", &sample_size_generic, py::arg("eps"), py::arg("delta"),
          py::arg("sigma"), py::arg("k"), py::arg("davg"));

    py::class_<ShatterCandidate>(m, "ShatterCandidate")
        .def(py::init<>())
        .def_readwrite("entries", &ShatterCandidate::entries)
        .def_readwrite("assoc", &ShatterCandidate::assoc)
        .def_readwrite("contested", &ShatterCandidate::contested);

    py::class_<QSet>(m, "QSet")
        .def(py::init<>())
        .def(py::init([](const std::vector<std::pair<int, int>>& pairs) {
            QSet q;
            for (const auto& [v, i] : pairs)
                q.pairs.push_back({v, i});
            return q;
        }))
        .def_readwrite("pairs", &QSet::pairs);

    py::class_<OracleGuard>(m, "OracleGuard")
        .def(py::init<>())
        .def(py::init([](int entries, int vertices) {
                 return OracleGuard{entries, vertices};
             }),
             py::arg("max_entries"), py::arg("max_vertices"))
        .def_readwrite("max_entries", &OracleGuard::max_entries)
        .def_readwrite("max_vertices", &OracleGuard::max_vertices);

    m.def("is_landmark",
          [](const std::shared_ptr<MultilayerNetwork>& net,
             const std::vector<Configuration>& r, int idx, Vertex v) {
              return is_landmark(*net, r, idx, v);
          },
          py::arg("net"), py::arg("r"), py::arg("idx"), py::arg("v"));
    m.def("is_canonical",
          [](const std::shared_ptr<MultilayerNetwork>& net,
             const std::vector<Configuration>& r, const std::vector<Vertex>& unknown) {
              return is_canonical(*net, r, unknown);
          },
          py::arg("net"), py::arg("r"), py::arg("unknown"));
    m.def("dfs_canonical_set",
          [](const std::shared_ptr<MultilayerNetwork>& net,
             const std::vector<Vertex>& unknown) {
              return dfs_canonical_set(*net, unknown);
          },
          py::arg("net"), py::arg("unknown"));
    m.def("shatter_oracle",
          [](const LearningProblem& problem, const std::vector<Configuration>& r,
             const OracleGuard& guard) { return shatter_oracle(problem, r, guard); },
          py::arg("problem"), py::arg("r"), py::arg("guard") = OracleGuard{});
    m.def("q_set_check",
          [](const std::shared_ptr<MultilayerNetwork>& net, const std::vector<Vertex>& unknown,
             const std::vector<VertexLayerPair>& pairs) {
              return q_set_check(*net, unknown, pairs);
          },
          py::arg("net"), py::arg("unknown"), py::arg("pairs"));
    m.def("shatterable_from_qset",
          [](const std::shared_ptr<MultilayerNetwork>& net, const QSet& q) {
              return shatterable_from_qset(*net, q);
          },
          py::arg("net"), py::arg("qset"));
    m.def("pnn_color_classes",
          [](const std::shared_ptr<MultilayerNetwork>& net, const std::vector<Vertex>& unknown) {
              return pnn_color_classes(*net, unknown);
          },
          py::arg("net"), py::arg("unknown"));
    m.def("pnn_lower_bound",
          [](const std::shared_ptr<MultilayerNetwork>& net, const std::vector<Vertex>& unknown) {
              return pnn_lower_bound(*net, unknown);
          },
          py::arg("net"), py::arg("unknown"));
    m.def("qset_proportion_bound", &qset_proportion_bound, py::arg("n"), py::arg("k"),
          py::arg("sigma"));
    m.def("estimate_full_qset_probability", &estimate_full_qset_probability, py::arg("n"),
          py::arg("k"), py::arg("sigma"), py::arg("trials"), py::arg("rng"));
}
