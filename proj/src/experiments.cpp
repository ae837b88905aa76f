#include "bbwalk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "bbwalk/markov.hpp"
#include "bbwalk/pauli.hpp"
#include "bbwalk/search.hpp"
#include "bbwalk/szegedy.hpp"
#include "bbwalk/test_groups.hpp"
#include "bbwalk/tuple_walk.hpp"

namespace bbwalk {

namespace {

using nlohmann::json;

std::string rat_str(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double rat_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

constexpr double kEuler = 2.718281828459045;

// Simple index-parallel loop; results land in caller-owned slots so ordering
// stays deterministic regardless of the job count.
void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : workers) t.join();
}

std::set<GroupElement> subgroup_elements(const TableGroup& g, const std::vector<int>& indices) {
    std::set<GroupElement> out;
    for (int i : indices) out.insert(g.element(i));
    return out;
}

// ---------------------------------------------------------------- lemma1
Report run_lemma1(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "lemma1-sweep";
    rep.csv_header = {"group", "subgroup_index", "subgroup_size", "l", "prob", "bound", "pass"};
    auto groups = cfg.params.value("groups",
                                   std::vector<std::string>{"Z4", "Z2^3", "S3", "D4", "Q8"});
    int violations = 0;
    for (const auto& name : groups) {
        auto inst = named_test_group(name);
        const int k = inst.generators.k();
        auto subgroups = list_proper_subgroups(*inst.group);
        for (int s = 0; s < static_cast<int>(subgroups.size()); ++s) {
            auto K = subgroup_elements(*inst.group, subgroups[static_cast<std::size_t>(s)]);
            for (int l = 1; l <= k; ++l) {
                Rational prob = sample_gu_not_in_K(*inst.group, inst.generators, K, l,
                                                   SampleMode::Exact, 0, 0, cfg.cap);
                Rational bound = (Rational(1) - compute_p(k, l)) / 2;
                const bool pass = prob >= bound;
                if (!pass) ++violations;
                rep.rows.push_back(json{{"group", name},
                                        {"subgroup_index", s},
                                        {"subgroup_size", subgroups[static_cast<std::size_t>(s)].size()},
                                        {"l", l},
                                        {"prob", rat_str(prob)},
                                        {"bound", rat_str(bound)},
                                        {"pass", pass}});
            }
        }
    }
    rep.all_pass = violations == 0;
    rep.summary = json{{"check", "subgroup-escape probability >= (1-p)/2, exact"},
                       {"rows", rep.rows.size()},
                       {"violations", violations}};
    return rep;
}

// ---------------------------------------------------------------- lemma2
Report run_lemma2(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "lemma2-sweep";
    rep.csv_header = {"group", "l", "prob", "bound", "pass"};
    auto groups = cfg.params.value(
        "groups", std::vector<std::string>{"S3", "D4", "Q8", "S3-k4", "D4-k4", "Q8-k4"});
    int violations = 0;
    for (const auto& name : groups) {
        auto inst = named_test_group(name);
        const int k = inst.generators.k();
        for (int l = 1; l <= k; ++l) {
            Rational prob = sample_noncommuting_pair(*inst.group, inst.generators, l,
                                                     SampleMode::Exact, 0, 0, cfg.cap);
            Rational q = Rational(1) - compute_p(k, l);
            Rational bound = q * q / 4;
            const bool pass = prob >= bound;
            if (!pass) ++violations;
            rep.rows.push_back(json{{"group", name},
                                    {"l", l},
                                    {"prob", rat_str(prob)},
                                    {"bound", rat_str(bound)},
                                    {"pass", pass}});
        }
    }
    rep.all_pass = violations == 0;
    rep.summary = json{{"check", "non-commuting pair probability >= (1-p)^2/4, exact"},
                       {"rows", rep.rows.size()},
                       {"violations", violations}};
    return rep;
}

// ---------------------------------------------------------------- gap sweep
// Second largest value among pairwise eigenvalue products; the Kronecker
// spectrum route for product chains too large to assemble.
double product_lambda2(const Eigen::VectorXd& ev) {
    double best = -1;
    for (int i = 0; i < ev.size(); ++i)
        for (int j = 0; j < ev.size(); ++j) {
            const double v = ev(i) * ev(j);
            if (v < 1.0 - 1e-12) best = std::max(best, v);
        }
    return best;
}

Report run_gap_sweep(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "gap-sweep";
    rep.csv_header = {"k",           "l",   "gap",        "lambda2",      "min_eigenvalue",
                      "bound",       "product_gap", "product_gap_dense", "pass"};
    auto cases = cfg.params.value("cases",
                                  std::vector<std::vector<int>>{{4, 2}, {5, 2}, {6, 2}, {6, 3}});
    bool all = true;
    for (const auto& c : cases) {
        const int k = c[0], l = c[1];
        ChainMatrix chain = enumerate_chain(k, l, cfg.cap);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(chain.P, Eigen::EigenvaluesOnly);
        SpectralReport sr = spectral_gap(chain);
        const double bound = 1.0 / (8.0 * kEuler * l * std::log(static_cast<double>(l)));
        const double pgap = 1.0 - product_lambda2(solver.eigenvalues());
        double pgap_dense = pgap;
        if (chain.size() <= 32) {  // also assemble P (x) P and eigensolve
            ChainMatrix prod = product_chain(chain);
            pgap_dense = spectral_gap(prod).gap;
        }
        const bool pass = sr.gap >= bound && sr.min_eigenvalue >= -1e-9 &&
                          std::abs(sr.gap - pgap) <= 1e-9 && std::abs(sr.gap - pgap_dense) <= 1e-9;
        all = all && pass;
        rep.rows.push_back(json{{"k", k},
                                {"l", l},
                                {"gap", sr.gap},
                                {"lambda2", sr.lambda2},
                                {"min_eigenvalue", sr.min_eigenvalue},
                                {"bound", bound},
                                {"product_gap", pgap},
                                {"product_gap_dense", pgap_dense},
                                {"pass", pass}});
    }
    rep.all_pass = all;
    rep.summary = json{{"check", "spectral gap >= 1/(8 e l ln l); lazy spectrum; product gap equal"},
                       {"rows", rep.rows.size()}};
    return rep;
}

// ---------------------------------------------------------------- coupling
Report run_coupling(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "coupling-sweep";
    rep.csv_header = {"k", "l", "trials", "mean", "stddev", "stderr", "bound",
                      "monotone_checks", "monotone_ok", "pass"};
    auto cases = cfg.params.value("cases",
                                  std::vector<std::vector<int>>{{4, 2}, {5, 2}, {6, 2}, {6, 3}});
    const int trials = cfg.params.value("trials", 10000);
    const std::uint64_t seed = cfg.params.value("seed", std::uint64_t{20240901});
    bool all = true;
    for (const auto& c : cases) {
        const int k = c[0], l = c[1];
        // distance monotonicity under the shared-draw coupling
        long long checks = 0;
        bool monotone = true;
        if (k == 4 && l == 2) {  // exhaustive over pairs and draws
            auto tuples = enumerate_tuples(k, l);
            for (const auto& u0 : tuples)
                for (const auto& v0 : tuples)
                    for (int lazy = 0; lazy <= 1; ++lazy)
                        for (int i = 1; i <= l; ++i)
                            for (int j = 1; j <= k; ++j) {
                                TupleState u = u0, v = v0;
                                const int before = hamming_distance(u, v);
                                coupled_step(u, v, WalkDraw{lazy == 1, i, j});
                                if (hamming_distance(u, v) > before) monotone = false;
                                ++checks;
                            }
        } else {
            Rng rng(seed ^ static_cast<std::uint64_t>(k * 100 + l));
            for (checks = 0; checks < 100000; ++checks) {
                TupleState u = sample_tuple(k, l, rng);
                TupleState v = sample_tuple(k, l, rng);
                const int before = hamming_distance(u, v);
                coupled_step(u, v, draw_walk_step(l, k, rng));
                if (hamming_distance(u, v) > before) monotone = false;
            }
        }
        auto est = estimate_coupling_time(k, l, trials, seed + static_cast<std::uint64_t>(k * 7 + l));
        const double bound =
            2.0 * l * (std::log(static_cast<double>(l)) + 1.0) + 3.0 * est.stderr_mean();
        const bool pass = monotone && est.mean <= bound;
        all = all && pass;
        rep.rows.push_back(json{{"k", k},
                                {"l", l},
                                {"trials", trials},
                                {"seed", seed + static_cast<std::uint64_t>(k * 7 + l)},
                                {"mean", est.mean},
                                {"stddev", est.stddev},
                                {"stderr", est.stderr_mean()},
                                {"bound", bound},
                                {"monotone_checks", checks},
                                {"monotone_ok", monotone},
                                {"pass", pass}});
    }
    rep.all_pass = all;
    rep.summary = json{{"check", "coupling distance monotone; mean coalescence <= 2l(ln l + 1) + 3 se"},
                       {"rows", rep.rows.size()}};
    return rep;
}

// ---------------------------------------------------------------- szegedy
Report run_szegedy(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "szegedy-calibration";
    rep.csv_header = {"chain",  "states", "marked", "delta",      "epsilon", "t_max",
                      "statistic", "detected", "dense_diff", "pass"};
    struct Case {
        std::string name;
        ChainMatrix chain;
    };
    std::vector<Case> chains;
    for (int m : {2, 4, 8}) chains.push_back({"complete-" + std::to_string(m),
                                              lazy_complete_graph_chain(m)});
    chains.push_back({"tuple-4-2", enumerate_chain(4, 2, cfg.cap)});
    chains.push_back({"tuple-5-2", enumerate_chain(5, 2, cfg.cap)});
    chains.push_back({"product-4-2", product_chain(enumerate_chain(4, 2, cfg.cap))});

    const double C = cfg.params.value("C", 3.0);
    const double theta = cfg.params.value("theta", 0.75);
    bool all = true;
    for (const auto& [name, chain] : chains) {
        const int n = chain.size();
        const double delta = spectral_gap(chain).gap;
        for (int marked_size : {0, 1, n / 2}) {
            std::vector<bool> marked(static_cast<std::size_t>(n), false);
            for (int i = 0; i < marked_size; ++i) marked[static_cast<std::size_t>(i)] = true;
            QuantizedWalk qw(chain, marked);
            const double eps = marked_size == 0 ? 1.0 / n : static_cast<double>(marked_size) / n;
            DetectionBudget budget{delta, eps, C, theta};
            DetectionResult det = qw.detect_marked(budget);

            double dense_diff = 0;
            if (n <= 12) {
                Eigen::MatrixXd W = qw.dense_walk();
                const int m = qw.edge_count();
                for (int e = 0; e < m; ++e) {
                    EdgeVector basis;
                    basis.amplitudes.assign(static_cast<std::size_t>(m), 0.0);
                    basis.amplitudes[static_cast<std::size_t>(e)] = 1.0;
                    EdgeVector out = qw.step(basis);
                    for (int f = 0; f < m; ++f)
                        dense_diff = std::max(
                            dense_diff, std::abs(out.amplitudes[static_cast<std::size_t>(f)].real() -
                                                 W(f, e)));
                }
            }
            bool pass;
            if (marked_size == 0)
                pass = std::abs(det.statistic - 1.0) <= 1e-9 && !det.non_empty;
            else
                pass = det.non_empty;
            pass = pass && dense_diff <= 1e-9;
            all = all && pass;
            rep.rows.push_back(json{{"chain", name},
                                    {"states", n},
                                    {"marked", marked_size},
                                    {"delta", delta},
                                    {"epsilon", eps},
                                    {"t_max", det.steps},
                                    {"statistic", det.statistic},
                                    {"detected", det.non_empty},
                                    {"dense_diff", dense_diff},
                                    {"pass", pass}});
        }
    }
    rep.all_pass = all;
    rep.summary = json{{"check", "empty-set statistic 1; detection within ceil(C/sqrt(delta*eps)); "
                                 "matrix-free equals dense assembly"},
                       {"C", C},
                       {"theta", theta},
                       {"rows", rep.rows.size()}};
    return rep;
}

// ------------------------------------------------------------ reduction
// Exact Pr[g_u g_v != g_v g_u] for the identity-prefixed reduced group,
// computed at the explicit-word level to keep 300 instances fast.
double exact_pair_epsilon(const FunctionOracle& F, int l) {
    const int k = F.k();
    const int kk = k + 1;  // identity prefixed
    std::vector<PauliWord> gens;
    gens.push_back(pauli_identity(k));
    FunctionOracle quiet(k, F.values());  // separate counter; analysis only
    for (int i = 1; i <= k; ++i) gens.push_back(make_generator(i, quiet));

    auto tuples = enumerate_tuples(kk, l);
    std::map<std::vector<SignedLetter>, long long> counts;
    for (const auto& u : tuples) {
        PauliWord acc = gens[static_cast<std::size_t>(u.indices[0] - 1)];
        for (int i = 1; i < u.l(); ++i)
            acc = pauli_mul(acc, gens[static_cast<std::size_t>(
                                     u.indices[static_cast<std::size_t>(i)] - 1)]);
        ++counts[acc.blocks];
    }
    long long bad = 0;
    const long long total = static_cast<long long>(tuples.size());
    for (const auto& [a, ca] : counts)
        for (const auto& [b, cb] : counts)
            if (!pauli_commute(PauliWord{a}, PauliWord{b})) bad += ca * cb;
    return static_cast<double>(bad) / (static_cast<double>(total) * static_cast<double>(total));
}

Report run_reduction(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "reduction-end-to-end";
    rep.csv_header = {"k",          "kind",       "seed",       "structure_ok", "max_op_queries",
                      "ops_counted", "decider_ok", "exact_eps", "failure_bound", "pass"};
    auto ks = cfg.params.value("ks", std::vector<int>{4, 6, 8});
    const int per_kind = cfg.params.value("instances_per_kind", 50);
    const int trials = cfg.params.value("trials", 64);
    const std::uint64_t seed0 = cfg.params.value("seed", std::uint64_t{7});

    struct Row {
        json j;
        bool pass = false;
    };
    bool all = true;
    for (int k : ks) {
        const int count = 2 * per_kind;
        std::vector<Row> rows(static_cast<std::size_t>(count));
        parallel_for(count, cfg.jobs, [&](int idx) {
            const UscKind kind = idx < per_kind ? UscKind::Permutation : UscKind::SplitCollision;
            const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(k * 1000 + idx);
            FunctionOracle F = usc_instance(k, kind, seed);
            auto collision = find_split_collision(F);

            // (a) exhaustive pair commutation vs the collision structure
            bool structure_ok = true;
            std::uint64_t max_op = 0;
            std::uint64_t ops = 0;
            for (int i = 1; i <= k && structure_ok; ++i)
                for (int j = i + 1; j <= k && structure_ok; ++j) {
                    const std::uint64_t before = F.f_queries();
                    auto ij = reduced_group_op(ReducedEncoding{i}, ReducedEncoding{j}, F);
                    const std::uint64_t mid = F.f_queries();
                    auto ji = reduced_group_op(ReducedEncoding{j}, ReducedEncoding{i}, F);
                    const std::uint64_t after = F.f_queries();
                    max_op = std::max({max_op, mid - before, after - mid});
                    ops += 2;
                    const bool commute = ij == ji;
                    const bool expected_noncommute =
                        collision && ((collision->first == i && collision->second == j) ||
                                      (collision->first == j && collision->second == i));
                    if (commute == expected_noncommute) structure_ok = false;
                }

            // random operand mixes (indices, explicit words, inverses) under
            // the same per-operation budget
            {
                Rng rng(seed ^ 0x5bd1e995);
                std::vector<ReducedEncoding> pool;
                for (int i = 1; i <= k; ++i) pool.push_back(ReducedEncoding{i});
                for (int t = 0; t < 50; ++t) {
                    const auto& x = pool[randrange(rng, pool.size())];
                    const auto& y = pool[randrange(rng, pool.size())];
                    const std::uint64_t before = F.f_queries();
                    auto out = reduced_group_op(x, y, F, randrange(rng, 2) == 1);
                    max_op = std::max(max_op, F.f_queries() - before);
                    ++ops;
                    if (pool.size() < 48) pool.push_back(std::move(out));
                }
            }

            // (c) randomized decider over the identity-prefixed reduced group
            auto oracle = std::make_shared<FunctionOracle>(k, F.values());
            PauliGroup group(oracle);
            const bool is_comm =
                randomized_commutativity_test(group, group.generators(), trials, seed ^ 0x9e3779b9);
            const bool decider_ok = is_comm == !collision.has_value();

            double eps = 0, fail_bound = 0;
            if (collision) {
                eps = exact_pair_epsilon(F, (k + 1) / 2);
                fail_bound = std::pow(1.0 - eps, trials);
            }
            const bool pass = structure_ok && max_op <= 4 && decider_ok &&
                              (!collision || fail_bound < 1e-3);
            rows[static_cast<std::size_t>(idx)] = Row{
                json{{"k", k},
                     {"kind", kind == UscKind::Permutation ? "permutation" : "split-collision"},
                     {"seed", seed},
                     {"structure_ok", structure_ok},
                     {"max_op_queries", max_op},
                     {"ops_counted", ops},
                     {"decider_ok", decider_ok},
                     {"exact_eps", eps},
                     {"failure_bound", fail_bound},
                     {"pass", pass}},
                pass};
        });
        for (auto& r : rows) {
            all = all && r.pass;
            rep.rows.push_back(std::move(r.j));
        }
    }
    rep.all_pass = all;
    rep.summary = json{{"check", "commutativity iff no split collision; <= 4 F-queries per group "
                                 "operation; randomized decider correct"},
                       {"rows", rep.rows.size()}};
    return rep;
}

// ---------------------------------------------------------------- tester
Report run_tester(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "tester-benchmark";
    rep.csv_header = {"group", "k", "l", "trials", "repeats", "wrong", "queries_per_run",
                      "expected_queries", "exact_eps", "failure_bound", "pass"};
    auto groups = cfg.params.value("groups", test_group_names());
    const int trials = cfg.params.value("trials", 64);
    const int repeats = cfg.params.value("repeats", 20);
    const std::uint64_t seed0 = cfg.params.value("seed", std::uint64_t{42});
    bool all = true;
    for (const auto& name : groups) {
        auto inst = named_test_group(name);
        const int k = inst.generators.k();
        const int l = k / 2;
        const std::uint64_t expected_queries =
            static_cast<std::uint64_t>(trials) * static_cast<std::uint64_t>(4 * (l - 1) + 2);
        int wrong = 0;
        bool queries_exact = true;
        std::uint64_t queries_per_run = 0;
        for (int r = 0; r < repeats; ++r) {
            const std::uint64_t before = inst.group->counter().oracle_calls();
            const bool commutative = randomized_commutativity_test(
                *inst.group, inst.generators, trials, seed0 + static_cast<std::uint64_t>(r));
            queries_per_run = inst.group->counter().oracle_calls() - before;
            if (queries_per_run != expected_queries) queries_exact = false;
            if (commutative != inst.abelian) ++wrong;
        }
        double eps = 0, fail_bound = 0;
        if (!inst.abelian) {
            eps = rat_double(sample_noncommuting_pair(*inst.group, inst.generators, l,
                                                      SampleMode::Exact, 0, 0, cfg.cap));
            fail_bound = std::pow(1.0 - eps, trials);
        }
        const bool pass = queries_exact && wrong == 0;
        all = all && pass;
        rep.rows.push_back(json{{"group", name},
                                {"k", k},
                                {"l", l},
                                {"trials", trials},
                                {"repeats", repeats},
                                {"wrong", wrong},
                                {"queries_per_run", queries_per_run},
                                {"expected_queries", expected_queries},
                                {"exact_eps", eps},
                                {"failure_bound", fail_bound},
                                {"pass", pass}});
    }
    rep.all_pass = all;
    rep.summary = json{{"check", "one-sided correctness; exactly trials*(4(floor(k/2)-1)+2) queries"},
                       {"rows", rep.rows.size()}};
    return rep;
}

// ------------------------------------------------------------- quantum sim
Report run_quantum_sim(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "quantum-sim-suite";
    rep.csv_header = {"instance", "k", "l", "decision", "truth", "delta", "epsilon",
                      "t_max", "statistic", "total_queries", "f_queries", "pass"};
    const std::uint64_t seed = cfg.params.value("seed", std::uint64_t{11});
    AlgorithmConfig acfg;
    acfg.l = 2;
    acfg.seed = seed;
    acfg.chain_cap = cfg.cap;

    struct Instance {
        std::string name;
        std::shared_ptr<BlackBoxGroup> group;
        GeneratorList gens;
        bool abelian;
        std::optional<std::uint64_t> f_queries;
    };
    std::vector<Instance> instances;
    for (const auto& name : {"Z2xZ2", "Z4-k4", "S3-k4", "D4-k4", "Q8-k4"}) {
        auto inst = named_test_group(name);
        instances.push_back({inst.name, inst.group, inst.generators, inst.abelian, std::nullopt});
    }
    {
        auto F = std::make_shared<FunctionOracle>(usc_instance(4, UscKind::SplitCollision, seed));
        auto pg = std::make_shared<PauliGroup>(F);
        instances.push_back({"pauli-usc-4", pg, pg->generators(), false, 0});
    }

    bool all = true;
    for (auto& inst : instances) {
        SimResult res = quantum_commutativity_sim(*inst.group, inst.gens, acfg);
        if (inst.f_queries) {
            auto* pg = dynamic_cast<PauliGroup*>(inst.group.get());
            res.ledger.f_queries = pg->oracle().f_queries();
        }
        const bool pass = res.commutative == inst.abelian;
        all = all && pass;
        rep.rows.push_back(json{{"instance", inst.name},
                                {"k", res.k},
                                {"l", res.l},
                                {"decision", res.commutative ? "commutative" : "non-commutative"},
                                {"truth", inst.abelian ? "commutative" : "non-commutative"},
                                {"delta", res.delta},
                                {"epsilon", res.epsilon},
                                {"t_max", res.t_max},
                                {"statistic", res.statistic},
                                {"total_queries", res.ledger.total_queries},
                                {"f_queries", res.ledger.f_queries ? json(*res.ledger.f_queries)
                                                                   : json(nullptr)},
                                {"pass", pass}});
    }
    rep.all_pass = all;
    rep.summary = json{{"check", "detection verdict matches exhaustive ground truth"},
                       {"rows", rep.rows.size()}};
    return rep;
}

using Runner = Report (*)(const ExperimentConfig&);

const std::vector<std::pair<ExperimentInfo, Runner>>& registry() {
    static const std::vector<std::pair<ExperimentInfo, Runner>> reg = {
        {{"lemma1-sweep", "exact subgroup-escape probabilities vs (1-p)/2"}, run_lemma1},
        {{"lemma2-sweep", "exact non-commuting-pair probabilities vs (1-p)^2/4"}, run_lemma2},
        {{"gap-sweep", "chain eigendecompositions vs the 1/(8 e l ln l) gap bound"}, run_gap_sweep},
        {{"coupling-sweep", "coupled-walk coalescence times vs 2l(ln l + 1)"}, run_coupling},
        {{"szegedy-calibration", "detection statistic across the calibration chain suite"},
         run_szegedy},
        {{"reduction-end-to-end", "function-oracle groups: structure, F-query budget, decider"},
         run_reduction},
        {{"tester-benchmark", "randomized tester correctness and exact query counts"}, run_tester},
        {{"quantum-sim-suite", "full simulated detection on desk-scale instances"},
         run_quantum_sim},
    };
    return reg;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j = json::parse(in);
    ExperimentConfig cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    if (j.contains("params")) cfg.params = j.at("params");
    cfg.jobs = j.value("jobs", 1);
    cfg.cap = j.value("cap", kDefaultChainCap);
    return cfg;
}

void ExperimentConfig::apply_override(const std::string& dotted_key, const std::string& value) {
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;  // plain string
    }
    if (dotted_key == "experiment") {
        experiment = parsed.is_string() ? parsed.get<std::string>() : value;
        return;
    }
    if (dotted_key == "jobs") {
        jobs = parsed.get<int>();
        return;
    }
    if (dotted_key == "cap") {
        cap = parsed.get<std::uint64_t>();
        return;
    }
    std::string key = dotted_key;
    if (key.rfind("params.", 0) == 0) key = key.substr(7);
    params[key] = parsed;
}

std::string Report::to_json(bool with_timestamp) const {
    json j{{"experiment", experiment},
           {"config", config},
           {"rows", rows},
           {"summary", summary},
           {"all_pass", all_pass}};
    json meta = json::object();
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::now();
        meta["generated_at"] =
            std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    }
    j["meta"] = meta;
    return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < csv_header.size(); ++i) os << (i ? "," : "") << csv_header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < csv_header.size(); ++i) {
            if (i) os << ",";
            const auto it = row.find(csv_header[i]);
            if (it == row.end()) continue;
            if (it->is_string())
                os << it->get<std::string>();
            else
                os << it->dump();
        }
        os << "\n";
    }
    return os.str();
}

std::vector<ExperimentInfo> list_experiments() {
    std::vector<ExperimentInfo> out;
    for (const auto& [info, fn] : registry()) out.push_back(info);
    return out;
}

Report run_experiment(const ExperimentConfig& config) {
    for (const auto& [info, fn] : registry()) {
        if (info.name == config.experiment) {
            Report rep = fn(config);
            rep.config = json{{"experiment", config.experiment},
                              {"params", config.params},
                              {"jobs", config.jobs},
                              {"cap", config.cap}};
            return rep;
        }
    }
    std::string names;
    for (const auto& [info, fn] : registry()) names += (names.empty() ? "" : ", ") + info.name;
    throw std::invalid_argument("unknown experiment '" + config.experiment +
                                "'; registered: " + names);
}

bool verify_all(const std::string& output_dir, std::uint64_t seed, int jobs, std::uint64_t cap,
                std::vector<Report>* reports_out) {
    std::filesystem::create_directories(output_dir);
    bool all = true;
    for (const auto& [info, fn] : registry()) {
        ExperimentConfig cfg;
        cfg.experiment = info.name;
        cfg.jobs = jobs;
        cfg.cap = cap;
        cfg.params["seed"] = seed;
        Report rep = run_experiment(cfg);
        all = all && rep.all_pass;
        {
            std::ofstream out(output_dir + "/" + info.name + ".json");
            out << rep.to_json();
        }
        {
            std::ofstream out(output_dir + "/" + info.name + ".csv");
            out << rep.to_csv();
        }
        std::printf("[%s] %s\n", rep.all_pass ? "PASS" : "FAIL", info.name.c_str());
        if (reports_out) reports_out->push_back(std::move(rep));
    }
    return all;
}

}  // namespace bbwalk
