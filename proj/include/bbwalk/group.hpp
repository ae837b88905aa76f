#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbwalk/common.hpp"

namespace bbwalk {

// An opaque fixed-length binary word encoding one group element. Equality of
// encodings is equality of elements (unique-encoding model).
struct GroupElement {
    std::string word;  // '0'/'1' characters, length = encoding length n

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class QueryCounter {
  public:
    void increment() { calls_.fetch_add(1, std::memory_order_relaxed); }
    std::uint64_t oracle_calls() const { return calls_.load(std::memory_order_relaxed); }

  private:
    std::atomic<std::uint64_t> calls_{0};
};

// Oracle pair (mul, inv_mul) over opaque encodings. Each invocation of either
// oracle adds one to the query counter. Immutable after construction apart
// from the counter.
class BlackBoxGroup {
  public:
    virtual ~BlackBoxGroup() = default;

    GroupElement mul(const GroupElement& g, const GroupElement& h) const {
        counter_.increment();
        return do_mul(g, h);
    }
    // Returns g^{-1} h.
    GroupElement inv_mul(const GroupElement& g, const GroupElement& h) const {
        counter_.increment();
        return do_inv_mul(g, h);
    }

    const GroupElement& identity() const { return identity_; }
    int encoding_length() const { return n_; }
    // 0 when unknown (non-enumerated groups).
    std::uint64_t order() const { return order_; }
    QueryCounter& counter() const { return counter_; }

  protected:
    BlackBoxGroup(int n, GroupElement identity, std::uint64_t order)
        : n_(n), identity_(std::move(identity)), order_(order) {}

    virtual GroupElement do_mul(const GroupElement&, const GroupElement&) const = 0;
    virtual GroupElement do_inv_mul(const GroupElement&, const GroupElement&) const = 0;

    void set_identity(GroupElement e) { identity_ = std::move(e); }

  private:
    int n_;
    GroupElement identity_;
    std::uint64_t order_;
    mutable QueryCounter counter_;
};

// Ordered generator list; elements[0] is always the group identity.
struct GeneratorList {
    std::vector<GroupElement> elements;

    int k() const { return static_cast<int>(elements.size()); }
};

// Finite group backed by an explicit multiplication table. Elements are
// encoded as little-endian binary indices zero-padded to ceil(log2 m) bits.
class TableGroup : public BlackBoxGroup {
  public:
    // `table` is m x m over {0..m-1}; all four group axioms are validated.
    explicit TableGroup(std::vector<std::vector<int>> table);

    std::uint64_t size() const { return table_.size(); }
    GroupElement element(int index) const;
    int index_of(const GroupElement& g) const;  // throws invalid_encoding_error
    int identity_index() const { return identity_index_; }
    int inverse_index(int index) const { return inverse_[index]; }
    int mul_index(int a, int b) const { return table_[a][b]; }
    std::vector<GroupElement> elements() const;

  protected:
    GroupElement do_mul(const GroupElement& g, const GroupElement& h) const override;
    GroupElement do_inv_mul(const GroupElement& g, const GroupElement& h) const override;

  private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int identity_index_ = -1;
};

std::shared_ptr<TableGroup> make_table_group(std::vector<std::vector<int>> table);

// Plain-text table format: first line m, then m lines of m space-separated
// 1-based indices.
std::shared_ptr<TableGroup> load_table_group(const std::string& path);

using Permutation = std::vector<int>;  // images of 0..m-1

// Enumerates the group generated by the given permutations of {0..m-1} by
// closure, builds the table oracle and returns generators prefixed by the
// identity.
std::pair<std::shared_ptr<TableGroup>, GeneratorList> make_permutation_group(
    int degree, const std::vector<Permutation>& generator_perms,
    std::uint64_t cap = kDefaultGroupCap);

// Every proper subgroup K of the group, each as a sorted set of element
// indices. Exhaustive closure search; intended for desk-scale groups only.
std::vector<std::vector<int>> list_proper_subgroups(const TableGroup& group,
                                                    std::uint64_t cap = kDefaultGroupCap);

bool is_abelian(const TableGroup& group);

}  // namespace bbwalk
