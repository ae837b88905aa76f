#include "bbwalk/tuple_walk.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace bbwalk {

bool is_valid_tuple(const TupleState& u, int k) {
    if (u.l() < 1 || u.l() > k) return false;
    std::set<int> seen;
    for (int idx : u.indices) {
        if (idx < 1 || idx > k) return false;
        if (!seen.insert(idx).second) return false;
    }
    return true;
}

Rational compute_p(int k, int l) {
    if (k < 2 || l < 1 || l > k) throw std::invalid_argument("compute_p requires 1 <= l <= k, k >= 2");
    const long long L = l, K = k;
    return Rational(L * (L - 1) + (K - L) * (K - L - 1), K * (K - 1));
}

namespace {

int ceil_log2(int x) {
    int d = 0;
    while ((1 << d) < x) ++d;
    return d;
}

}  // namespace

ProductTree::ProductTree(const TupleState& u, const GeneratorList& generators,
                         const BlackBoxGroup& group) {
    const int l = u.l();
    if (l < 1) throw std::invalid_argument("empty tuple");
    leaves_.assign(static_cast<std::size_t>(l), -1);
    depth_ = ceil_log2(l);

    // Shape: a perfect tree of 2^(depth-1) slots; the leftmost slots hold
    // two leaves each so the deepest leaves sit leftmost.
    auto new_node = [&](int left, int right) {
        children_.emplace_back(left, right);
        parent_.push_back(-1);
        values_.emplace_back();
        int id = static_cast<int>(values_.size()) - 1;
        if (left >= 0) parent_[static_cast<std::size_t>(left)] = id;
        if (right >= 0) parent_[static_cast<std::size_t>(right)] = id;
        return id;
    };

    std::function<int(int, int)> build = [&](int lo, int count) -> int {
        if (count == 1) {
            int id = new_node(-1, -1);
            leaves_[static_cast<std::size_t>(lo)] = id;
            return id;
        }
        int leftc;
        if (count == 2) {
            leftc = 1;
        } else {
            const int slots = 1 << (ceil_log2(count) - 1);
            const int deep = count - slots;
            leftc = slots / 2 + std::min(deep, slots / 2);
        }
        int left = build(lo, leftc);
        int right = build(lo + leftc, count - leftc);
        return new_node(left, right);
    };
    root_ = build(0, l);

    for (int pos = 0; pos < l; ++pos)
        values_[static_cast<std::size_t>(leaves_[static_cast<std::size_t>(pos)])] =
            generators.elements[static_cast<std::size_t>(u.indices[static_cast<std::size_t>(pos)] - 1)];
    // internal nodes in child-before-parent creation order
    for (int id = 0; id < static_cast<int>(values_.size()); ++id) {
        auto [lc, rc] = children_[static_cast<std::size_t>(id)];
        if (lc >= 0)
            values_[static_cast<std::size_t>(id)] =
                group.mul(values_[static_cast<std::size_t>(lc)], values_[static_cast<std::size_t>(rc)]);
    }
}

const GroupElement& ProductTree::root() const {
    return values_[static_cast<std::size_t>(root_)];
}

void ProductTree::update_leaves(const std::vector<std::pair<int, GroupElement>>& replacements,
                                const BlackBoxGroup& group) {
    // union of strict ancestors, ordered root first
    std::map<int, int> depth_of;  // node -> depth
    std::vector<int> ancestors;
    for (const auto& [pos, value] : replacements) {
        int node = leaves_[static_cast<std::size_t>(pos)];
        int d = 0;
        for (int a = parent_[static_cast<std::size_t>(node)]; a >= 0;
             a = parent_[static_cast<std::size_t>(a)])
            ++d;
        int cur = parent_[static_cast<std::size_t>(node)];
        int cur_depth = d - 1;
        while (cur >= 0) {
            if (depth_of.emplace(cur, cur_depth).second) ancestors.push_back(cur);
            cur = parent_[static_cast<std::size_t>(cur)];
            --cur_depth;
        }
    }
    std::sort(ancestors.begin(), ancestors.end(),
              [&](int a, int b) { return depth_of[a] < depth_of[b]; });

    // uncompute root-to-leaf
    for (int node : ancestors) {
        auto [lc, rc] = children_[static_cast<std::size_t>(node)];
        (void)group.inv_mul(values_[static_cast<std::size_t>(lc)],
                            values_[static_cast<std::size_t>(node)]);
    }
    for (const auto& [pos, value] : replacements)
        values_[static_cast<std::size_t>(leaves_[static_cast<std::size_t>(pos)])] = value;
    // recompute leaf-to-root
    for (auto it = ancestors.rbegin(); it != ancestors.rend(); ++it) {
        auto [lc, rc] = children_[static_cast<std::size_t>(*it)];
        values_[static_cast<std::size_t>(*it)] = group.mul(
            values_[static_cast<std::size_t>(lc)], values_[static_cast<std::size_t>(rc)]);
    }
}

WalkDraw draw_walk_step(int l, int k, Rng& rng) {
    WalkDraw d{};
    d.lazy = randrange(rng, 2) == 0;
    d.position = 1 + static_cast<int>(randrange(rng, static_cast<std::uint64_t>(l)));
    d.index = 1 + static_cast<int>(randrange(rng, static_cast<std::uint64_t>(k)));
    return d;
}

namespace {

// Applies the (i, j) move to the tuple only; returns the 0-based leaf
// positions whose generators changed (empty for no-ops).
std::vector<int> apply_draw_to_tuple(TupleState& u, const WalkDraw& draw) {
    if (draw.lazy) return {};
    const int i = draw.position - 1;
    const int j = draw.index;
    auto it = std::find(u.indices.begin(), u.indices.end(), j);
    if (it != u.indices.end()) {
        const int m = static_cast<int>(it - u.indices.begin());
        if (m == i) return {};
        std::swap(u.indices[static_cast<std::size_t>(i)], u.indices[static_cast<std::size_t>(m)]);
        return {i, m};
    }
    u.indices[static_cast<std::size_t>(i)] = j;
    return {i};
}

}  // namespace

void apply_walk_draw(TupleState& u, ProductTree& tree, const WalkDraw& draw,
                     const GeneratorList& generators, const BlackBoxGroup& group) {
    auto changed = apply_draw_to_tuple(u, draw);
    if (changed.empty()) return;
    std::vector<std::pair<int, GroupElement>> replacements;
    for (int pos : changed)
        replacements.emplace_back(
            pos, generators.elements[static_cast<std::size_t>(
                     u.indices[static_cast<std::size_t>(pos)] - 1)]);
    tree.update_leaves(replacements, group);
}

void walk_step(TupleState& u, ProductTree& tree, Rng& rng, const GeneratorList& generators,
               const BlackBoxGroup& group) {
    apply_walk_draw(u, tree, draw_walk_step(u.l(), generators.k(), rng), generators, group);
}

std::vector<std::pair<TupleState, Rational>> transition_support(const TupleState& u, int k) {
    const int l = u.l();
    if (!is_valid_tuple(u, k)) throw std::invalid_argument("tuple not in S_l");
    std::map<TupleState, Rational> out;
    const Rational unit(1, 2LL * l * k);
    out[u] = Rational(1, 2);
    for (int i = 1; i <= l; ++i) {
        for (int j = 1; j <= k; ++j) {
            TupleState v = u;
            WalkDraw d{false, i, j};
            apply_draw_to_tuple(v, d);
            out[v] += unit;
        }
    }
    return {out.begin(), out.end()};
}

std::vector<TupleState> enumerate_tuples(int k, int l, std::uint64_t cap) {
    std::uint64_t count = 1;
    for (int i = 0; i < l; ++i) {
        count *= static_cast<std::uint64_t>(k - i);
        if (count > cap) throw cap_exceeded_error("|S_l| exceeds enumeration cap");
    }
    std::vector<TupleState> out;
    out.reserve(count);
    TupleState cur;
    std::vector<bool> used(static_cast<std::size_t>(k + 1), false);
    std::function<void()> rec = [&]() {
        if (cur.l() == l) {
            out.push_back(cur);
            return;
        }
        for (int j = 1; j <= k; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = true;
            cur.indices.push_back(j);
            rec();
            cur.indices.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
    };
    rec();
    return out;
}

TupleState sample_tuple(int k, int l, Rng& rng) {
    std::vector<int> pool(static_cast<std::size_t>(k));
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < l; ++i) {
        auto j = i + static_cast<int>(randrange(rng, static_cast<std::uint64_t>(k - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    return TupleState{std::vector<int>(pool.begin(), pool.begin() + l)};
}

GroupElement tuple_product(const TupleState& u, const GeneratorList& generators,
                           const BlackBoxGroup& group) {
    GroupElement acc = generators.elements[static_cast<std::size_t>(u.indices[0] - 1)];
    for (int i = 1; i < u.l(); ++i)
        acc = group.mul(acc, generators.elements[static_cast<std::size_t>(
                                 u.indices[static_cast<std::size_t>(i)] - 1)]);
    return acc;
}

Rational sample_gu_not_in_K(const BlackBoxGroup& group, const GeneratorList& generators,
                            const std::set<GroupElement>& K, int l, SampleMode mode, int samples,
                            std::uint64_t seed, std::uint64_t cap) {
    const int k = generators.k();
    if (mode == SampleMode::Exact) {
        auto tuples = enumerate_tuples(k, l, cap);
        long long hits = 0;
        for (const auto& u : tuples)
            if (!K.count(tuple_product(u, generators, group))) ++hits;
        return Rational(hits, static_cast<long long>(tuples.size()));
    }
    Rng rng(seed);
    long long hits = 0;
    for (int t = 0; t < samples; ++t)
        if (!K.count(tuple_product(sample_tuple(k, l, rng), generators, group))) ++hits;
    return Rational(hits, samples);
}

Rational sample_noncommuting_pair(const BlackBoxGroup& group, const GeneratorList& generators,
                                  int l, SampleMode mode, int samples, std::uint64_t seed,
                                  std::uint64_t cap) {
    const int k = generators.k();
    auto noncommuting = [&](const GroupElement& a, const GroupElement& b) {
        return group.mul(a, b) != group.mul(b, a);
    };
    if (mode == SampleMode::Exact) {
        auto tuples = enumerate_tuples(k, l, cap);
        std::map<GroupElement, long long> counts;
        for (const auto& u : tuples) ++counts[tuple_product(u, generators, group)];
        long long bad = 0;
        const long long total = static_cast<long long>(tuples.size());
        for (const auto& [a, ca] : counts)
            for (const auto& [b, cb] : counts)
                if (noncommuting(a, b)) bad += ca * cb;
        return Rational(bad, total * total);
    }
    Rng rng(seed);
    long long bad = 0;
    for (int t = 0; t < samples; ++t) {
        auto gu = tuple_product(sample_tuple(k, l, rng), generators, group);
        auto gv = tuple_product(sample_tuple(k, l, rng), generators, group);
        if (noncommuting(gu, gv)) ++bad;
    }
    return Rational(bad, samples);
}

bool randomized_commutativity_test(const BlackBoxGroup& group, const GeneratorList& generators,
                                   int trials, std::uint64_t seed) {
    const int k = generators.k();
    if (k < 2) throw std::invalid_argument("need k >= 2");
    const int l = k / 2;
    Rng rng(seed);
    bool commutative = true;
    for (int t = 0; t < trials; ++t) {
        TupleState u = sample_tuple(k, l, rng);
        TupleState v = sample_tuple(k, l, rng);
        // products of the concatenated tuples, one per ordering: 2(2l-1)
        // = 4(l-1)+2 queries per trial; all trials run so the query count
        // is exactly trials * (4(l-1)+2)
        TupleState uv{u.indices}, vu{v.indices};
        uv.indices.insert(uv.indices.end(), v.indices.begin(), v.indices.end());
        vu.indices.insert(vu.indices.end(), u.indices.begin(), u.indices.end());
        if (tuple_product(uv, generators, group) != tuple_product(vu, generators, group))
            commutative = false;  // witnessed non-commutativity
    }
    return commutative;
}

void coupled_step(TupleState& u, TupleState& v, const WalkDraw& draw) {
    apply_draw_to_tuple(u, draw);
    apply_draw_to_tuple(v, draw);
}

int hamming_distance(const TupleState& u, const TupleState& v) {
    int d = 0;
    for (std::size_t i = 0; i < u.indices.size(); ++i)
        if (u.indices[i] != v.indices[i]) ++d;
    return d;
}

CouplingEstimate estimate_coupling_time(int k, int l, int trials, std::uint64_t seed) {
    if (2 * l > k) throw std::invalid_argument("disjoint starts require 2l <= k");
    Rng rng(seed);
    double sum = 0, sumsq = 0;
    for (int t = 0; t < trials; ++t) {
        TupleState u, v;
        for (int i = 1; i <= l; ++i) u.indices.push_back(i);
        for (int i = l + 1; i <= 2 * l; ++i) v.indices.push_back(i);
        long long steps = 0;
        while (u != v) {
            // The coupling argument is over the shared (position, index)
            // draw; lazy steps leave both copies untouched, so only the
            // effective draws are counted against the 2l(ln l + 1) budget.
            WalkDraw draw = draw_walk_step(l, k, rng);
            draw.lazy = false;
            coupled_step(u, v, draw);
            ++steps;
        }
        sum += static_cast<double>(steps);
        sumsq += static_cast<double>(steps) * static_cast<double>(steps);
    }
    CouplingEstimate est;
    est.trials = trials;
    est.mean = sum / trials;
    est.stddev = trials > 1 ? std::sqrt(std::max(0.0, (sumsq - sum * sum / trials) / (trials - 1)))
                            : 0.0;
    return est;
}

}  // namespace bbwalk
