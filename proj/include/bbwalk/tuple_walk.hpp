#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "bbwalk/common.hpp"
#include "bbwalk/group.hpp"

namespace bbwalk {

// A point of S_l: an ordered l-tuple of distinct indices from {1..k}.
struct TupleState {
    std::vector<int> indices;  // 1-based generator indices

    int l() const { return static_cast<int>(indices.size()); }
    friend bool operator==(const TupleState&, const TupleState&) = default;
    friend auto operator<=>(const TupleState&, const TupleState&) = default;
};

bool is_valid_tuple(const TupleState& u, int k);

// p = (l(l-1) + (k-l)(k-l-1)) / (k(k-1)), exact.
Rational compute_p(int k, int l);

// Balanced binary tree over the tuple's generators; each internal node is
// the product of its two children and the root is g_u. When l is not a
// power of two the deepest leaves sit leftmost.
class ProductTree {
  public:
    // Consumes exactly l-1 oracle queries.
    ProductTree(const TupleState& u, const GeneratorList& generators, const BlackBoxGroup& group);

    const GroupElement& root() const;
    int depth() const { return depth_; }
    int leaf_count() const { return static_cast<int>(leaves_.size()); }
    const GroupElement& node_value(int node) const { return values_[static_cast<std::size_t>(node)]; }
    int node_count() const { return static_cast<int>(values_.size()); }
    int left_child(int node) const { return children_[static_cast<std::size_t>(node)].first; }
    int right_child(int node) const { return children_[static_cast<std::size_t>(node)].second; }

    // Replaces the leaves at the given 0-based positions and repairs the
    // union of their strict-ancestor paths: inv_mul root-to-leaf to
    // uncompute, then mul leaf-to-root to recompute. 2 * |ancestor union|
    // oracle queries.
    void update_leaves(const std::vector<std::pair<int, GroupElement>>& replacements,
                       const BlackBoxGroup& group);

  private:
    std::vector<std::pair<int, int>> children_;  // (-1,-1) for leaves
    std::vector<int> parent_;
    std::vector<GroupElement> values_;
    std::vector<int> leaves_;  // node id of leaf at each position
    int root_ = 0;
    int depth_ = 0;
};

// One step of the lazy walk on S_l: with probability 1/2 stay; otherwise draw
// position i in {1..l} and index j in {1..k}; swap if j is already in the
// tuple, replace otherwise. The tree is repaired along the modified paths.
struct WalkDraw {
    bool lazy;
    int position;  // 1-based i
    int index;     // 1-based j
};

WalkDraw draw_walk_step(int l, int k, Rng& rng);

// Applies a fixed draw; shared by walk_step and the coupling.
void apply_walk_draw(TupleState& u, ProductTree& tree, const WalkDraw& draw,
                     const GeneratorList& generators, const BlackBoxGroup& group);

void walk_step(TupleState& u, ProductTree& tree, Rng& rng, const GeneratorList& generators,
               const BlackBoxGroup& group);

// Full outgoing distribution of one walk step, exact rationals.
std::vector<std::pair<TupleState, Rational>> transition_support(const TupleState& u, int k);

// All of S_l in lexicographic order. Throws cap_exceeded_error beyond `cap`.
std::vector<TupleState> enumerate_tuples(int k, int l, std::uint64_t cap = kDefaultChainCap);

// Uniform sample from S_l (Fisher-Yates prefix).
TupleState sample_tuple(int k, int l, Rng& rng);

// The product g_{u_1} ... g_{u_l}, l-1 oracle queries (0 when l = 1).
GroupElement tuple_product(const TupleState& u, const GeneratorList& generators,
                           const BlackBoxGroup& group);

enum class SampleMode { Exact, Sampled };

// Pr over uniform u in S_l that g_u lies outside the proper subgroup K.
Rational sample_gu_not_in_K(const BlackBoxGroup& group, const GeneratorList& generators,
                            const std::set<GroupElement>& K, int l, SampleMode mode,
                            int samples = 10000, std::uint64_t seed = 0,
                            std::uint64_t cap = kDefaultChainCap);

// Pr over independent u, v in S_l that g_u g_v != g_v g_u.
Rational sample_noncommuting_pair(const BlackBoxGroup& group, const GeneratorList& generators,
                                  int l, SampleMode mode, int samples = 10000,
                                  std::uint64_t seed = 0, std::uint64_t cap = kDefaultChainCap);

// Pak-style one-sided tester with l = floor(k/2); never errs on abelian
// inputs. Exactly trials * (4(l-1) + 2) oracle queries.
bool randomized_commutativity_test(const BlackBoxGroup& group, const GeneratorList& generators,
                                   int trials, std::uint64_t seed);

// One coupled step: both tuples follow the same (coin, i, j) draw.
void coupled_step(TupleState& u, TupleState& v, const WalkDraw& draw);

int hamming_distance(const TupleState& u, const TupleState& v);

struct CouplingEstimate {
    double mean = 0;
    double stddev = 0;
    int trials = 0;

    double stderr_mean() const { return trials > 1 ? stddev / std::sqrt(trials) : 0; }
};

// Monte-Carlo mean steps until coalescence from disjoint worst-case starting
// pairs (requires 2l <= k). Lazy steps count as steps.
CouplingEstimate estimate_coupling_time(int k, int l, int trials, std::uint64_t seed);

}  // namespace bbwalk
