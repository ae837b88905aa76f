#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bbwalk/markov.hpp"
#include "bbwalk/szegedy.hpp"
#include "bbwalk/tuple_walk.hpp"

namespace bbwalk {

// Oracle-call accounting for one walk run: setup of both product trees,
// per-step tree updates, and marked checks.
struct CostLedger {
    std::uint64_t setup_S = 0;           // 2(l-1)
    std::uint64_t update_queries = 0;    // sum over steps
    std::uint64_t max_step_update = 0;   // worst observed single-step update
    std::uint64_t check_C = 2;           // per marked test
    std::uint64_t checks = 0;
    std::uint64_t steps_taken = 0;
    std::uint64_t total_queries = 0;     // setup + updates + check_C * checks
    std::optional<std::uint64_t> f_queries;  // reduction instances only
};

struct AlgorithmConfig {
    int l = 0;  // 0 = auto via choose_l
    double gamma = 0.25;
    double C = 3.0;
    double theta = 0.75;
    std::uint64_t seed = 0;
    int trials = 64;  // randomized mode
    std::uint64_t chain_cap = kDefaultChainCap;
};

// l = min(ceil(k^{2/3} ln k), floor(k/2)), floored at 2. Requires k >= 4.
int choose_l(int k);

// True iff the tuple products at the two tree roots do not commute; exactly
// two oracle queries.
bool marked_predicate(const ProductTree& u_tree, const ProductTree& v_tree,
                      const BlackBoxGroup& group);

struct SimResult {
    bool commutative = false;
    int k = 0;
    int l = 0;
    double delta = 0;
    double epsilon = 0;
    int t_max = 0;
    double statistic = 1.0;
    double marked_fraction = 0;  // exact over the enumerated product space
    CostLedger ledger;

    std::string to_json() const;
};

// Classically simulates the Szegedy detection walk on S_l x S_l with the
// non-commuting-pair predicate, and replays an instrumented classical walk
// to fill (and verify) the query ledger.
SimResult quantum_commutativity_sim(const BlackBoxGroup& group, const GeneratorList& generators,
                                    const AlgorithmConfig& config);

enum class DecideMode { Randomized, QuantumSim };

struct Decision {
    bool commutative = false;
    std::uint64_t queries = 0;
    std::optional<SimResult> sim;
};

Decision decide_commutativity(const BlackBoxGroup& group, const GeneratorList& generators,
                              DecideMode mode, const AlgorithmConfig& config);

}  // namespace bbwalk
