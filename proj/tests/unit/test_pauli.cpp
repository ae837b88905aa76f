#include <doctest.h>

#include <array>
#include <memory>
#include <vector>

#include "bbwalk/pauli.hpp"

using namespace bbwalk;

namespace {

const std::array<SignedLetter, 8> kAllSigned = {
    SignedLetter{+1, PauliLetter::I}, SignedLetter{-1, PauliLetter::I},
    SignedLetter{+1, PauliLetter::X}, SignedLetter{-1, PauliLetter::X},
    SignedLetter{+1, PauliLetter::Y}, SignedLetter{-1, PauliLetter::Y},
    SignedLetter{+1, PauliLetter::Z}, SignedLetter{-1, PauliLetter::Z},
};

std::vector<std::vector<double>> dense_mul(const std::vector<std::vector<double>>& a,
                                           const std::vector<std::vector<double>>& b) {
    std::vector<std::vector<double>> c(2, std::vector<double>(2, 0.0));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int t = 0; t < 2; ++t) c[i][j] += a[i][t] * b[t][j];
    return c;
}

}  // namespace

TEST_CASE("signed-letter products match the 2x2 matrices") {
    auto mul = [](int sa, PauliLetter a, int sb, PauliLetter b) {
        return pauli_block_mul(SignedLetter{sa, a}, SignedLetter{sb, b});
    };
    using L = PauliLetter;
    CHECK(mul(+1, L::X, +1, L::Z) == SignedLetter{+1, L::Y});  // Y = XZ
    CHECK(mul(+1, L::Z, +1, L::X) == SignedLetter{-1, L::Y});
    CHECK(mul(+1, L::X, +1, L::Y) == SignedLetter{+1, L::Z});
    CHECK(mul(+1, L::Y, +1, L::X) == SignedLetter{-1, L::Z});
    CHECK(mul(+1, L::Y, +1, L::Z) == SignedLetter{+1, L::X});
    CHECK(mul(+1, L::Z, +1, L::Y) == SignedLetter{-1, L::X});
    CHECK(mul(+1, L::X, +1, L::X) == SignedLetter{+1, L::I});
    CHECK(mul(+1, L::Z, +1, L::Z) == SignedLetter{+1, L::I});
    CHECK(mul(+1, L::Y, +1, L::Y) == SignedLetter{-1, L::I});
    for (const auto& b : kAllSigned) {
        CHECK(mul(+1, L::I, b.sign, b.letter) == b);
        CHECK(mul(b.sign, b.letter, +1, L::I) == b);
    }

    // full cross-check against explicit 2x2 matrix multiplication
    for (const auto& a : kAllSigned)
        for (const auto& b : kAllSigned) {
            auto expected = dense_mul(dense_block(a), dense_block(b));
            auto got = dense_block(pauli_block_mul(a, b));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) CHECK(got[i][j] == doctest::Approx(expected[i][j]));
        }
}

TEST_CASE("signed-letter algebra: associativity, anticommutation, inverses") {
    for (const auto& a : kAllSigned)
        for (const auto& b : kAllSigned)
            for (const auto& c : kAllSigned)
                CHECK(pauli_block_mul(pauli_block_mul(a, b), c) ==
                      pauli_block_mul(a, pauli_block_mul(b, c)));

    using L = PauliLetter;
    for (L a : {L::X, L::Y, L::Z})
        for (L b : {L::X, L::Y, L::Z}) {
            if (a == b) continue;
            auto ab = pauli_block_mul(SignedLetter{+1, a}, SignedLetter{+1, b});
            auto ba = pauli_block_mul(SignedLetter{+1, b}, SignedLetter{+1, a});
            CHECK(ab.letter == ba.letter);
            CHECK(ab.sign == -ba.sign);
        }

    for (const auto& a : kAllSigned) {
        CHECK(pauli_block_mul(a, pauli_block_inverse(a)) == SignedLetter{+1, L::I});
        CHECK(pauli_block_mul(pauli_block_inverse(a), a) == SignedLetter{+1, L::I});
    }
}

TEST_CASE("generator words from the function oracle") {
    using L = PauliLetter;
    FunctionOracle F(4, {2, 1, 2, 4});
    auto g1 = make_generator(1, F);  // a-type, F(1)=2
    REQUIRE(g1.blocks.size() == 8);
    for (int pos = 1; pos <= 8; ++pos) {
        const auto& b = g1.blocks[static_cast<std::size_t>(pos - 1)];
        CHECK(b.sign == +1);
        if (pos == 1)
            CHECK(b.letter == L::Y);
        else if (pos == 6)
            CHECK(b.letter == L::Z);
        else
            CHECK(b.letter == L::I);
    }
    auto g3 = make_generator(3, F);  // b-type since 3 > k/2, F(3)=2
    CHECK(g3.blocks[2] == SignedLetter{+1, L::Y});
    CHECK(g3.blocks[5] == SignedLetter{+1, L::X});

    FunctionOracle id2(2, {1, 2});
    auto h1 = make_generator(1, id2);
    auto h2 = make_generator(2, id2);
    CHECK(h1.blocks[0].letter == L::Y);
    CHECK(h1.blocks[2].letter == L::Z);
    CHECK(h2.blocks[1].letter == L::Y);
    CHECK(h2.blocks[3].letter == L::X);
    CHECK(pauli_commute(h1, h2));

    CHECK_THROWS_AS(make_generator(0, F), std::out_of_range);
    CHECK_THROWS_AS(make_generator(5, F), std::out_of_range);
}

TEST_CASE("reduced group operation and its F-query budget") {
    using L = PauliLetter;
    FunctionOracle F(4, {2, 1, 2, 4});

    // index * index: explicit word, exactly 4 F-queries (build + erase twice)
    auto before = F.f_queries();
    auto sq = reduced_group_op(ReducedEncoding{1}, ReducedEncoding{1}, F);
    CHECK(F.f_queries() - before == 4);
    REQUIRE_FALSE(sq.is_index());
    CHECK(sq.word().blocks[0] == SignedLetter{-1, L::I});  // Y^2 = -I
    for (int pos = 2; pos <= 8; ++pos)
        CHECK(sq.word().blocks[static_cast<std::size_t>(pos - 1)] == SignedLetter{+1, L::I});

    // explicit identity * index: re-encoded back to the index, 4 F-queries
    before = F.f_queries();
    auto same = reduced_group_op(ReducedEncoding{pauli_identity(4)}, ReducedEncoding{2}, F);
    CHECK(F.f_queries() - before == 4);
    REQUIRE(same.is_index());
    CHECK(same.index() == 2);

    // explicit non-generator * explicit non-generator: at most 2 F-queries
    before = F.f_queries();
    auto prod = reduced_group_op(sq, sq, F);
    CHECK(F.f_queries() - before <= 2);
    REQUIRE_FALSE(prod.is_index());
    CHECK(prod.word().is_identity());  // (-I block)^2 = identity

    // inverse flag: g^{-1} (g h) = h, and word inversion costs no F-queries
    auto g = make_generator(1, F);
    before = F.f_queries();
    auto ginv = pauli_inverse(g);
    CHECK(F.f_queries() == before);
    CHECK(pauli_mul(ginv, g).is_identity());
    auto gh = reduced_group_op(ReducedEncoding{1}, ReducedEncoding{2}, F);
    auto h_again = reduced_group_op(ReducedEncoding{1}, gh, F, true);
    REQUIRE(h_again.is_index());
    CHECK(h_again.index() == 2);

    // budget holds across random operand mixes
    Rng rng(99);
    FunctionOracle G(8, usc_instance(8, UscKind::SplitCollision, 5).values());
    std::vector<ReducedEncoding> pool;
    for (int i = 1; i <= 8; ++i) pool.push_back(ReducedEncoding{i});
    for (int t = 0; t < 400; ++t) {
        const auto& x = pool[randrange(rng, pool.size())];
        const auto& y = pool[randrange(rng, pool.size())];
        before = G.f_queries();
        auto out = reduced_group_op(x, y, G, randrange(rng, 2) == 1);
        CHECK(G.f_queries() - before <= 4);
        if (pool.size() < 64) pool.push_back(out);
    }
}

TEST_CASE("commutation structure follows the collision structure") {
    FunctionOracle inj(4, {3, 1, 2, 4});
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) CHECK(commutes(i, j, inj));

    FunctionOracle split(4, {2, 1, 2, 4});  // F(1) = F(3) = 2, split pair
    CHECK_FALSE(commutes(1, 3, split));
    CHECK(commutes(1, 2, split));
    CHECK(commutes(2, 3, split));

    FunctionOracle same_side(4, {2, 2, 1, 3});  // F(1) = F(2), both a-type
    CHECK(commutes(1, 2, same_side));

    CHECK_THROWS_AS(commutes(2, 2, split), std::invalid_argument);
}

TEST_CASE("exhaustive split-collision census, k in {2, 4, 6}") {
    for (int k : {2, 4, 6}) {
        long long instances = 0;
        std::vector<int> values(static_cast<std::size_t>(k), 1);
        while (true) {
            // keep only functions injective on each half with exactly one
            // cross collision
            auto injective_on = [&](int lo, int hi) {
                for (int a = lo; a < hi; ++a)
                    for (int b = a + 1; b <= hi; ++b)
                        if (values[static_cast<std::size_t>(a - 1)] ==
                            values[static_cast<std::size_t>(b - 1)])
                            return false;
                return true;
            };
            if (injective_on(1, k / 2) && injective_on(k / 2 + 1, k)) {
                int cross = 0, cx = 0, cy = 0;
                for (int x = 1; x <= k / 2; ++x)
                    for (int y = k / 2 + 1; y <= k; ++y)
                        if (values[static_cast<std::size_t>(x - 1)] ==
                            values[static_cast<std::size_t>(y - 1)]) {
                            ++cross;
                            cx = x;
                            cy = y;
                        }
                if (cross == 1) {
                    ++instances;
                    FunctionOracle F(k, values);
                    for (int i = 1; i <= k; ++i)
                        for (int j = i + 1; j <= k; ++j) {
                            const bool expect_noncommute = (i == cx && j == cy);
                            CHECK(commutes(i, j, F) == !expect_noncommute);
                        }
                }
            }
            // odometer over all k^k functions
            int pos = 0;
            while (pos < k && values[static_cast<std::size_t>(pos)] == k) {
                values[static_cast<std::size_t>(pos)] = 1;
                ++pos;
            }
            if (pos == k) break;
            ++values[static_cast<std::size_t>(pos)];
        }
        CHECK(instances > 0);
    }
}

TEST_CASE("instance generation and the collision finder") {
    auto p2 = usc_instance(2, UscKind::Permutation, 3);
    CHECK((p2.values() == std::vector<int>{1, 2} || p2.values() == std::vector<int>{2, 1}));
    CHECK_FALSE(find_split_collision(p2).has_value());

    auto c2 = usc_instance(2, UscKind::SplitCollision, 3);
    CHECK(c2.values()[0] == c2.values()[1]);
    CHECK(find_split_collision(c2) == std::make_pair(1, 2));

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto F = usc_instance(6, UscKind::SplitCollision, seed);
        auto col = find_split_collision(F);
        REQUIRE(col.has_value());
        CHECK(col->first <= 3);
        CHECK(col->second > 3);
        // exactly one colliding (unordered) pair overall
        int collisions = 0;
        for (int a = 1; a <= 6; ++a)
            for (int b = a + 1; b <= 6; ++b)
                if (F.values()[static_cast<std::size_t>(a - 1)] ==
                    F.values()[static_cast<std::size_t>(b - 1)])
                    ++collisions;
        CHECK(collisions == 1);

        auto again = usc_instance(6, UscKind::SplitCollision, seed);
        CHECK(again.values() == F.values());
    }

    CHECK_THROWS_AS(usc_instance(3, UscKind::Permutation, 0), std::invalid_argument);
}

TEST_CASE("unique-collision reduction via random domain permutations") {
    auto exact_solver = [](const FunctionOracle& f) {
        return find_split_collision(f).has_value();
    };

    auto perm = usc_instance(8, UscKind::Permutation, 17);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK_FALSE(uc_to_usc(perm, exact_solver, seed));

    // unique collision on the same side: accepted with probability >= 3/4
    FunctionOracle uc(4, {2, 2, 1, 3});
    int accepted = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        if (uc_to_usc(uc, exact_solver, seed)) ++accepted;
    CHECK(accepted >= 140);  // well above the 3/4 guarantee minus noise

    CHECK(uc_to_usc(uc, exact_solver, 12345) == uc_to_usc(uc, exact_solver, 12345));
}

TEST_CASE("oracle JSON round trip and query counting") {
    FunctionOracle F(4, {2, 1, 2, 4});
    auto before = F.f_queries();
    CHECK(F.eval(1) == 2);
    CHECK(F.eval(3) == 2);
    CHECK(F.f_queries() == before + 2);
    CHECK_THROWS_AS(F.eval(0), std::out_of_range);
    CHECK_THROWS_AS(F.eval(5), std::out_of_range);

    auto G = FunctionOracle::from_json(F.to_json());
    CHECK(G.k() == 4);
    CHECK(G.values() == F.values());

    CHECK_THROWS_AS(FunctionOracle(4, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionOracle(4, {1, 2, 3, 5}), std::invalid_argument);
}

TEST_CASE("reduced black-box group: encodings and oracle contracts") {
    auto F = std::make_shared<FunctionOracle>(4, std::vector<int>{2, 1, 2, 4});
    PauliGroup group(F);
    CHECK(group.encoding_length() == 1 + 6 * 4);

    auto gens = group.generators();
    REQUIRE(gens.k() == 5);
    CHECK(gens.elements[0] == group.identity());

    // round trips
    for (int i = 1; i <= 4; ++i) {
        auto enc = group.encode(ReducedEncoding{i});
        auto dec = group.decode(enc);
        REQUIRE(dec.is_index());
        CHECK(dec.index() == i);
    }
    auto word_enc = group.encode(ReducedEncoding{make_generator(1, *F)});
    REQUIRE_FALSE(group.decode(word_enc).is_index());

    // oracle pair consistency and counting on the reduced group
    const auto g = gens.elements[1];
    const auto h = gens.elements[3];
    auto before = group.counter().oracle_calls();
    auto gh = group.mul(g, h);
    CHECK(group.counter().oracle_calls() == before + 1);
    CHECK(group.inv_mul(g, gh) == h);
    CHECK(group.mul(group.identity(), h) == h);
    CHECK(group.inv_mul(group.identity(), h) == h);

    // every oracle call spends at most 4 F-queries
    Rng rng(7);
    std::vector<GroupElement> pool = gens.elements;
    for (int t = 0; t < 300; ++t) {
        const auto& a = pool[randrange(rng, pool.size())];
        const auto& b = pool[randrange(rng, pool.size())];
        auto fq = F->f_queries();
        auto out = randrange(rng, 2) == 1 ? group.mul(a, b) : group.inv_mul(a, b);
        CHECK(F->f_queries() - fq <= 4);
        if (pool.size() < 64) pool.push_back(out);
    }

    CHECK_THROWS_AS(group.decode(GroupElement{"10"}), invalid_encoding_error);
    auto stray = group.encode(ReducedEncoding{2});
    stray.word[10] = '1';  // beyond the index bits of an index encoding
    CHECK_THROWS_AS(group.decode(stray), invalid_encoding_error);
}
