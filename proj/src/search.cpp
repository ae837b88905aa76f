#include "bbwalk/search.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace bbwalk {

int choose_l(int k) {
    if (k < 4) throw std::invalid_argument("choose_l requires k >= 4");
    const double raw = std::pow(static_cast<double>(k), 2.0 / 3.0) * std::log(static_cast<double>(k));
    const int l = std::min(static_cast<int>(std::ceil(raw)), k / 2);
    return std::max(l, 2);
}

bool marked_predicate(const ProductTree& u_tree, const ProductTree& v_tree,
                      const BlackBoxGroup& group) {
    return group.mul(u_tree.root(), v_tree.root()) != group.mul(v_tree.root(), u_tree.root());
}

std::string SimResult::to_json() const {
    nlohmann::json j{
        {"decision", commutative ? "commutative" : "non-commutative"},
        {"k", k},
        {"l", l},
        {"delta", delta},
        {"epsilon", epsilon},
        {"t_max", t_max},
        {"statistic", statistic},
        {"marked_fraction", marked_fraction},
        {"setup_S", ledger.setup_S},
        {"update_queries", ledger.update_queries},
        {"max_step_update", ledger.max_step_update},
        {"checks", ledger.checks},
        {"steps_taken", ledger.steps_taken},
        {"total_queries", ledger.total_queries},
    };
    if (ledger.f_queries) j["f_queries"] = *ledger.f_queries;
    return j.dump();
}

namespace {

int ceil_log2(int x) {
    int d = 0;
    while ((1 << d) < x) ++d;
    return d;
}

// Runs the classical product walk with live product trees for `steps` steps,
// evaluating the marked predicate after each step, and verifies that the
// ledger matches the raw oracle counter.
CostLedger instrumented_walk(const BlackBoxGroup& group, const GeneratorList& generators, int l,
                             std::uint64_t steps, std::uint64_t seed) {
    const int k = generators.k();
    Rng rng(seed);
    CostLedger ledger;
    const std::uint64_t before = group.counter().oracle_calls();

    TupleState u = sample_tuple(k, l, rng);
    TupleState v = sample_tuple(k, l, rng);
    ProductTree tu(u, generators, group);
    ProductTree tv(v, generators, group);
    ledger.setup_S = group.counter().oracle_calls() - before;

    const std::uint64_t per_tuple_bound = 4ull * static_cast<std::uint64_t>(ceil_log2(l));
    for (std::uint64_t t = 0; t < steps; ++t) {
        const std::uint64_t step_before = group.counter().oracle_calls();
        walk_step(u, tu, rng, generators, group);
        walk_step(v, tv, rng, generators, group);
        const std::uint64_t used = group.counter().oracle_calls() - step_before;
        if (used > 2 * per_tuple_bound)
            throw std::logic_error("walk step exceeded its update budget");
        ledger.update_queries += used;
        ledger.max_step_update = std::max(ledger.max_step_update, used);
        (void)marked_predicate(tu, tv, group);
        ++ledger.checks;
        ++ledger.steps_taken;
    }
    ledger.total_queries = ledger.setup_S + ledger.update_queries + ledger.check_C * ledger.checks;
    if (ledger.total_queries != group.counter().oracle_calls() - before)
        throw std::logic_error("ledger does not match the oracle counter");
    return ledger;
}

}  // namespace

SimResult quantum_commutativity_sim(const BlackBoxGroup& group, const GeneratorList& generators,
                                    const AlgorithmConfig& config) {
    const int k = generators.k();
    const int l = config.l > 0 ? config.l : choose_l(k);
    if (l < 2 || l > k / 2) throw std::invalid_argument("need 2 <= l <= k/2");

    SimResult res;
    res.k = k;
    res.l = l;

    // chain on S_l and its exact gap
    ChainMatrix chain = enumerate_chain(k, l, config.chain_cap);
    res.delta = spectral_gap(chain).gap;
    const Rational p = compute_p(k, l);
    const double pd = static_cast<double>(p.numerator()) / static_cast<double>(p.denominator());
    res.epsilon = (1.0 - pd) * (1.0 - pd) / 4.0;

    // marked set over S_l x S_l from the cached tuple products
    auto tuples = enumerate_tuples(k, l, config.chain_cap);
    const int n = static_cast<int>(tuples.size());
    std::vector<GroupElement> roots;
    roots.reserve(tuples.size());
    for (const auto& u : tuples) roots.push_back(tuple_product(u, generators, group));
    std::vector<bool> marked(static_cast<std::size_t>(n) * n, false);
    std::uint64_t marked_count = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const bool m = group.mul(roots[static_cast<std::size_t>(a)],
                                     roots[static_cast<std::size_t>(b)]) !=
                           group.mul(roots[static_cast<std::size_t>(b)],
                                     roots[static_cast<std::size_t>(a)]);
            marked[static_cast<std::size_t>(a) * n + b] = m;
            if (m) ++marked_count;
        }
    res.marked_fraction =
        static_cast<double>(marked_count) / (static_cast<double>(n) * static_cast<double>(n));

    ChainMatrix product = product_chain(chain);
    QuantizedWalk qw(product, marked);
    DetectionBudget budget{res.delta, res.epsilon, config.C, config.theta};
    res.t_max = budget.t_max();
    DetectionResult det = qw.detect_marked(budget);
    res.statistic = det.statistic;
    res.commutative = !det.non_empty;

    res.ledger = instrumented_walk(group, generators, l, static_cast<std::uint64_t>(res.t_max),
                                   config.seed);
    return res;
}

Decision decide_commutativity(const BlackBoxGroup& group, const GeneratorList& generators,
                              DecideMode mode, const AlgorithmConfig& config) {
    Decision d;
    const std::uint64_t before = group.counter().oracle_calls();
    if (mode == DecideMode::Randomized) {
        d.commutative =
            randomized_commutativity_test(group, generators, config.trials, config.seed);
    } else {
        SimResult sim = quantum_commutativity_sim(group, generators, config);
        d.commutative = sim.commutative;
        d.sim = std::move(sim);
    }
    d.queries = group.counter().oracle_calls() - before;
    return d;
}

}  // namespace bbwalk
