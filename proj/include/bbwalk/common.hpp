#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace bbwalk {

using Rational = boost::rational<long long>;

// Deterministic 64-bit seeded generator; every stochastic operation in the
// library takes one of these (or a seed) explicitly so runs are replayable.
using Rng = std::mt19937_64;

// Uniform draw from {0, ..., n-1}. Modulo reduction keeps the stream
// identical across standard library implementations.
inline std::uint64_t randrange(Rng& rng, std::uint64_t n) {
    return rng() % n;
}

struct invalid_encoding_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_a_group_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct cap_exceeded_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Default enumeration caps. BBWALK_CAP (CLI) or explicit arguments override.
inline constexpr std::uint64_t kDefaultGroupCap = 10080;
inline constexpr std::uint64_t kDefaultChainCap = 5040;

}  // namespace bbwalk
