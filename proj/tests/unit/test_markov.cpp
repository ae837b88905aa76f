#include <doctest.h>

#include <cmath>
#include <set>

#include "bbwalk/markov.hpp"

using namespace bbwalk;

TEST_CASE("chain enumeration: exact kernels") {
    SUBCASE("two generators, single index") {
        auto chain = enumerate_chain(2, 1);
        REQUIRE(chain.size() == 2);
        CHECK(chain.exact[0][0] == Rational(3, 4));
        CHECK(chain.exact[0][1] == Rational(1, 4));
        CHECK(chain.exact[1][0] == Rational(1, 4));
        CHECK(chain.exact[1][1] == Rational(3, 4));
    }
    SUBCASE("pairs from four generators") {
        auto chain = enumerate_chain(4, 2);
        REQUIRE(chain.size() == 12);
        CHECK(chain.is_symmetric_exact());
        CHECK(chain.rows_sum_to_one());
        // doubly stochastic: columns also sum to one
        for (int c = 0; c < 12; ++c) {
            Rational sum(0);
            for (int r = 0; r < 12; ++r) sum += chain.exact[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            CHECK(sum == Rational(1));
        }
    }
    SUBCASE("full tuples: swaps only") {
        auto chain = enumerate_chain(3, 3);
        REQUIRE(chain.size() == 6);
        // every move between distinct permutations keeps the same index set
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c)
                if (r != c && chain.exact[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] > Rational(0)) {
                    std::set<char> a(chain.state_labels[static_cast<std::size_t>(r)].begin(),
                                     chain.state_labels[static_cast<std::size_t>(r)].end());
                    std::set<char> b(chain.state_labels[static_cast<std::size_t>(c)].begin(),
                                     chain.state_labels[static_cast<std::size_t>(c)].end());
                    CHECK(a == b);
                }
    }
    SUBCASE("cap is enforced") {
        CHECK_THROWS_AS(enumerate_chain(10, 5), cap_exceeded_error);
    }
}

TEST_CASE("spectral gaps of known chains") {
    auto two = enumerate_chain(2, 1);
    auto r2 = spectral_gap(two);
    CHECK(r2.lambda2 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r2.gap == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r2.min_eigenvalue >= -1e-9);

    auto complete4 = lazy_complete_graph_chain(4);
    auto r4 = spectral_gap(complete4);
    CHECK(r4.gap == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    auto pairs = enumerate_chain(4, 2);
    auto rp = spectral_gap(pairs);
    CHECK(rp.gap >= 1.0 / (8 * 2.718281828459045 * 2 * std::log(2.0)));
    CHECK(rp.min_eigenvalue >= -1e-9);

    // non-symmetric input is rejected
    ChainMatrix bad;
    bad.state_labels = {"a", "b"};
    bad.exact = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}};
    bad.P = Eigen::MatrixXd(2, 2);
    bad.P << 0.5, 0.5, 0.25, 0.75;
    CHECK_THROWS(spectral_gap(bad));
}

TEST_CASE("mixing curves decay and respect the spectral bounds") {
    auto chain = enumerate_chain(4, 2);
    auto curve = mixing_curve(chain, 40);
    REQUIRE(curve.delta.size() == 40);
    for (std::size_t t = 1; t < curve.delta.size(); ++t)
        CHECK(curve.delta[t] <= curve.delta[t - 1] + 1e-12);

    const int tau = curve.mixing_time();
    REQUIRE(tau >= 1);
    CHECK(curve.delta[static_cast<std::size_t>(tau - 1)] <= 1.0 / (2 * 2.718281828459045));

    // after the mixing time, distance halves like 2 exp(-floor(t/tau))
    for (std::size_t t = 0; t < curve.delta.size(); ++t) {
        const int floor_ratio = static_cast<int>((t + 1) / static_cast<std::size_t>(tau));
        CHECK(curve.delta[t] <= 2.0 * std::exp(-floor_ratio) + 1e-9);
    }

    // second eigenvalue bound from the observed decay
    auto spec = spectral_gap(chain);
    for (std::size_t t = 0; t < curve.delta.size(); ++t)
        CHECK(std::pow(spec.lambda2, static_cast<double>(t + 1)) <=
              curve.delta[t] * chain.size() + 1e-9);
}

TEST_CASE("coupling-time bound implies a gap bound") {
    auto two = enumerate_chain(2, 1);
    CHECK(verify_corollary1(two, 2.0));       // 1/(8e) < 0.5
    CHECK(verify_corollary1(two, 1e6));       // vacuously true for huge T
    auto pairs = enumerate_chain(4, 2);
    const double harmonic_bound = 2 * 2 * (std::log(2.0) + 1);
    CHECK(verify_corollary1(pairs, harmonic_bound));
}

TEST_CASE("product chains: spectrum and structure") {
    auto chain = enumerate_chain(4, 2);
    auto prod = product_chain(chain);
    REQUIRE(prod.size() == 144);
    CHECK(prod.is_symmetric_exact());
    CHECK(prod.rows_sum_to_one());

    auto g1 = spectral_gap(chain);
    auto g2 = spectral_gap(prod);
    CHECK(std::abs(g1.gap - g2.gap) <= 1e-9);
    CHECK(g2.min_eigenvalue >= -1e-9);

    CHECK_THROWS_AS(product_chain(chain, 100), cap_exceeded_error);
}

TEST_CASE("serialization helpers") {
    auto chain = enumerate_chain(2, 1);
    auto csv = chain_to_csv(chain);
    CHECK(csv.find("3/4") != std::string::npos);

    auto spec = spectral_gap(chain);
    CHECK(spec.to_json().find("gap") != std::string::npos);

    auto curve = mixing_curve(chain, 5);
    CHECK(curve.to_json().find("delta") != std::string::npos);
}
