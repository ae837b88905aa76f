// Python bindings for the main operations: group construction, walk
// analysis, detection simulation, and the experiment registry.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "bbwalk/experiments.hpp"
#include "bbwalk/markov.hpp"
#include "bbwalk/pauli.hpp"
#include "bbwalk/search.hpp"
#include "bbwalk/test_groups.hpp"
#include "bbwalk/tuple_walk.hpp"

namespace py = pybind11;
using namespace bbwalk;

namespace {

std::pair<long long, long long> to_fraction(const Rational& r) {
    return {r.numerator(), r.denominator()};
}

py::dict spectral_dict(const SpectralReport& r) {
    py::dict d;
    d["lambda2"] = r.lambda2;
    d["gap"] = r.gap;
    d["min_eigenvalue"] = r.min_eigenvalue;
    return d;
}

py::dict sim_dict(const SimResult& r) {
    py::dict d;
    d["commutative"] = r.commutative;
    d["k"] = r.k;
    d["l"] = r.l;
    d["delta"] = r.delta;
    d["epsilon"] = r.epsilon;
    d["t_max"] = r.t_max;
    d["statistic"] = r.statistic;
    d["marked_fraction"] = r.marked_fraction;
    d["setup_S"] = r.ledger.setup_S;
    d["update_queries"] = r.ledger.update_queries;
    d["checks"] = r.ledger.checks;
    d["total_queries"] = r.ledger.total_queries;
    return d;
}

}  // namespace

PYBIND11_MODULE(_bbwalk, m) {
    m.doc() = "classical laboratory for walk-based group commutativity testing";

    py::register_exception<cap_exceeded_error>(m, "CapExceededError", PyExc_RuntimeError);
    py::register_exception<not_a_group_error>(m, "NotAGroupError", PyExc_ValueError);
    py::register_exception<invalid_encoding_error>(m, "InvalidEncodingError", PyExc_ValueError);

    m.def("test_group_names", &test_group_names, "Names of the built-in desk-scale groups.");

    m.def(
        "group_info",
        [](const std::string& name) {
            auto inst = named_test_group(name);
            py::dict d;
            d["name"] = inst.name;
            d["order"] = inst.group->order();
            d["k"] = inst.generators.k();
            d["abelian"] = inst.abelian;
            d["proper_subgroups"] = list_proper_subgroups(*inst.group).size();
            return d;
        },
        py::arg("name"), "Order, generator count, and structure of a named group.");

    m.def(
        "compute_p",
        [](int k, int l) { return to_fraction(compute_p(k, l)); },
        py::arg("k"), py::arg("l"),
        "Walk parameter p as an exact (numerator, denominator) pair.");

    m.def("choose_l", &choose_l, py::arg("k"),
          "Tuple length min(ceil(k^(2/3) ln k), k // 2), floored at 2.");

    m.def(
        "spectral_gap",
        [](int k, int l) { return spectral_dict(spectral_gap(enumerate_chain(k, l))); },
        py::arg("k"), py::arg("l"), "Spectral report of the tuple-walk chain on S_l.");

    m.def(
        "chain_matrix",
        [](int k, int l) {
            auto chain = enumerate_chain(k, l);
            std::vector<std::vector<double>> rows;
            for (int r = 0; r < chain.size(); ++r) {
                std::vector<double> row;
                for (int c = 0; c < chain.size(); ++c) row.push_back(chain.P(r, c));
                rows.push_back(std::move(row));
            }
            return py::make_tuple(chain.state_labels, rows);
        },
        py::arg("k"), py::arg("l"), "State labels and dense kernel of the tuple-walk chain.");

    m.def(
        "noncommuting_pair_probability",
        [](const std::string& name, int l) {
            auto inst = named_test_group(name);
            return to_fraction(
                sample_noncommuting_pair(*inst.group, inst.generators, l, SampleMode::Exact));
        },
        py::arg("group"), py::arg("l"),
        "Exact Pr[g_u g_v != g_v g_u] over independent uniform tuples.");

    m.def(
        "randomized_commutativity_test",
        [](const std::string& name, int trials, std::uint64_t seed) {
            auto inst = named_test_group(name);
            const bool commutative =
                randomized_commutativity_test(*inst.group, inst.generators, trials, seed);
            return py::make_tuple(commutative, inst.group->counter().oracle_calls());
        },
        py::arg("group"), py::arg("trials"), py::arg("seed"),
        "One-sided randomized tester; returns (commutative, oracle_calls).");

    m.def(
        "quantum_commutativity_sim",
        [](const std::string& name, int l, std::uint64_t seed) {
            auto inst = named_test_group(name);
            AlgorithmConfig cfg;
            cfg.l = l;
            cfg.seed = seed;
            return sim_dict(quantum_commutativity_sim(*inst.group, inst.generators, cfg));
        },
        py::arg("group"), py::arg("l") = 2, py::arg("seed") = 0,
        "Classically simulated detection walk plus its verified query ledger.");

    m.def(
        "usc_instance",
        [](int k, const std::string& kind, std::uint64_t seed) {
            auto F = usc_instance(
                k, kind == "permutation" ? UscKind::Permutation : UscKind::SplitCollision, seed);
            return F.values();
        },
        py::arg("k"), py::arg("kind"), py::arg("seed"),
        "Values of a random permutation or unique-split-collision oracle.");

    m.def(
        "find_split_collision",
        [](const std::vector<int>& values) -> py::object {
            FunctionOracle F(static_cast<int>(values.size()), values);
            auto col = find_split_collision(F);
            if (!col) return py::none();
            return py::make_tuple(col->first, col->second);
        },
        py::arg("values"), "The unique split collision of F, or None.");

    m.def(
        "pauli_commutes",
        [](const std::vector<int>& values, int i, int j) {
            FunctionOracle F(static_cast<int>(values.size()), values);
            const bool c = commutes(i, j, F);
            return py::make_tuple(c, F.f_queries());
        },
        py::arg("values"), py::arg("i"), py::arg("j"),
        "Whether generators i and j of the reduced group commute; returns (bool, f_queries).");

    m.def(
        "pauli_decide",
        [](const std::vector<int>& values, int trials, std::uint64_t seed) {
            auto F = std::make_shared<FunctionOracle>(static_cast<int>(values.size()), values);
            PauliGroup group(F);
            const bool commutative =
                randomized_commutativity_test(group, group.generators(), trials, seed);
            return py::make_tuple(commutative, F->f_queries());
        },
        py::arg("values"), py::arg("trials") = 64, py::arg("seed") = 0,
        "Randomized commutativity decision for the reduced group of F.");

    m.def(
        "list_experiments",
        []() {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& info : list_experiments()) out.emplace_back(info.name, info.description);
            return out;
        },
        "Registered experiment names and descriptions.");

    m.def(
        "run_experiment",
        [](const std::string& name, const std::string& params_json, int jobs) {
            ExperimentConfig cfg;
            cfg.experiment = name;
            if (!params_json.empty()) cfg.params = nlohmann::json::parse(params_json);
            cfg.jobs = jobs;
            return run_experiment(cfg).to_json(false);
        },
        py::arg("name"), py::arg("params_json") = std::string(), py::arg("jobs") = 1,
        "Run one experiment; returns the JSON report (without timestamp).");
}
