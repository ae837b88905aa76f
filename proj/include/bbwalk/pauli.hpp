#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bbwalk/common.hpp"
#include "bbwalk/group.hpp"

namespace bbwalk {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

// A 2x2 Pauli block with its sign, sign in {+1, -1}.
struct SignedLetter {
    int sign = +1;
    PauliLetter letter = PauliLetter::I;

    friend bool operator==(const SignedLetter&, const SignedLetter&) = default;
    friend auto operator<=>(const SignedLetter&, const SignedLetter&) = default;
};

// Product of two signed Pauli blocks (2x2 matrix product; signs in {+1,-1}
// are closed since X, Z, Y=XZ only ever pick up -1 factors).
SignedLetter pauli_block_mul(const SignedLetter& a, const SignedLetter& b);

SignedLetter pauli_block_inverse(const SignedLetter& a);

// Explicit encoding of a 4k x 4k block-diagonal matrix: 2k signed 2x2 Pauli
// blocks. Never materialized as a dense matrix.
struct PauliWord {
    std::vector<SignedLetter> blocks;  // length 2k

    int half_k() const { return static_cast<int>(blocks.size()) / 2; }
    bool is_identity() const;
    friend bool operator==(const PauliWord&, const PauliWord&) = default;
};

PauliWord pauli_identity(int k);
PauliWord pauli_mul(const PauliWord& a, const PauliWord& b);
PauliWord pauli_inverse(const PauliWord& a);  // blockwise; no F-queries
bool pauli_commute(const PauliWord& a, const PauliWord& b);

// Dense complex expansion for small-k cross checks.
std::vector<std::vector<double>> dense_block(const SignedLetter& b);

// Oracle F: {1..k} -> {1..k} with an exact query counter.
class FunctionOracle {
  public:
    FunctionOracle(int k, std::vector<int> values);
    FunctionOracle(FunctionOracle&& other) noexcept
        : k_(other.k_), values_(std::move(other.values_)), calls_(other.calls_.load()) {}

    int k() const { return k_; }
    int eval(int i) const;  // 1-based; counts one F-query
    std::uint64_t f_queries() const { return calls_.load(std::memory_order_relaxed); }
    const std::vector<int>& values() const { return values_; }

    std::string to_json() const;
    static FunctionOracle from_json(const std::string& text);

  private:
    int k_;
    std::vector<int> values_;  // values_[i-1] = F(i), 1-based values
    mutable std::atomic<std::uint64_t> calls_{0};
};

// Either a generator index i in {1..k} or an explicit PauliWord. Generators
// are only ever encoded by their indices.
struct ReducedEncoding {
    std::variant<int, PauliWord> value;

    bool is_index() const { return std::holds_alternative<int>(value); }
    int index() const { return std::get<int>(value); }
    const PauliWord& word() const { return std::get<PauliWord>(value); }
    friend bool operator==(const ReducedEncoding&, const ReducedEncoding&) = default;
};

// g_i = a_{iF(i)} for i <= k/2, b_{iF(i)} otherwise: all blocks +I except
// block i = Y and block F(i)+k = Z (a-type) or X (b-type). One F-query.
PauliWord make_generator(int i, const FunctionOracle& F);

// x * y (or x^{-1} * y when inverse_flag), spending at most four F-queries:
// two per integer-encoded operand (build + erase) and two for the output
// re-encoding check, which is skipped when both operands are integers.
ReducedEncoding reduced_group_op(const ReducedEncoding& x, const ReducedEncoding& y,
                                 const FunctionOracle& F, bool inverse_flag = false);

// Whether generators g_i and g_j commute, decided via reduced_group_op in
// both orders.
bool commutes(int i, int j, const FunctionOracle& F);

enum class UscKind { Permutation, SplitCollision };

// Permutation kind: a uniformly random permutation of {1..k}. Split-collision
// kind: exactly one colliding pair (x, y) with x <= k/2 < y, injective on
// each half.
FunctionOracle usc_instance(int k, UscKind kind, std::uint64_t seed);

// Position of the unique split collision of F, if any.
std::optional<std::pair<int, int>> find_split_collision(const FunctionOracle& F);

// Decides Unique Collision via a Unique Split Collision solver: runs the
// solver on F composed with two independent random domain permutations and
// accepts iff either run accepts.
template <typename UscSolver>
bool uc_to_usc(const FunctionOracle& F, UscSolver&& usc_solver, std::uint64_t seed) {
    Rng rng(seed);
    for (int run = 0; run < 2; ++run) {
        std::vector<int> perm(static_cast<std::size_t>(F.k()));
        for (int i = 0; i < F.k(); ++i) perm[static_cast<std::size_t>(i)] = i + 1;
        for (int i = F.k() - 1; i > 0; --i) {
            auto j = static_cast<int>(randrange(rng, static_cast<std::uint64_t>(i + 1)));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        std::vector<int> composed(static_cast<std::size_t>(F.k()));
        for (int i = 1; i <= F.k(); ++i)
            composed[static_cast<std::size_t>(i - 1)] =
                F.values()[static_cast<std::size_t>(perm[static_cast<std::size_t>(i - 1)] - 1)];
        FunctionOracle permuted(F.k(), std::move(composed));
        if (usc_solver(permuted)) return true;
    }
    return false;
}

// Black-box group over reduced encodings; every oracle call routes through
// reduced_group_op and therefore spends at most four F-queries.
class PauliGroup : public BlackBoxGroup {
  public:
    explicit PauliGroup(std::shared_ptr<FunctionOracle> F);

    GroupElement encode(const ReducedEncoding& e) const;
    ReducedEncoding decode(const GroupElement& g) const;
    const FunctionOracle& oracle() const { return *F_; }

    // Identity-prefixed generator list (e, g_1, ..., g_k) encoded as indices.
    GeneratorList generators() const;

  protected:
    GroupElement do_mul(const GroupElement& g, const GroupElement& h) const override;
    GroupElement do_inv_mul(const GroupElement& g, const GroupElement& h) const override;

  private:
    std::shared_ptr<FunctionOracle> F_;
};

}  // namespace bbwalk
