#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bbwalk/common.hpp"
#include "bbwalk/tuple_walk.hpp"

namespace bbwalk {

// Dense transition matrix of a finite chain, kept both as exact rationals
// (stochasticity checks) and doubles (spectral work).
struct ChainMatrix {
    std::vector<std::string> state_labels;
    std::vector<std::vector<Rational>> exact;
    Eigen::MatrixXd P;

    int size() const { return static_cast<int>(state_labels.size()); }
    bool is_symmetric_exact() const;
    bool rows_sum_to_one() const;
};

struct SpectralReport {
    double lambda2 = 0;
    double gap = 0;
    double min_eigenvalue = 0;

    std::string to_json() const;
};

struct MixingCurve {
    std::vector<double> delta;  // delta[t-1] = worst-case TV distance after t steps
    // Smallest t with delta(t) <= 1/(2e), or 0 when not reached within range.
    int mixing_time() const;

    std::string to_json() const;
};

// Full transition matrix of the lazy tuple walk on S_l.
ChainMatrix enumerate_chain(int k, int l, std::uint64_t cap = kDefaultChainCap);

// Lazy walk on the complete graph K_m: (I + (J - I)/(m-1)) / 2.
ChainMatrix lazy_complete_graph_chain(int m);

// Kernel of two independent copies, P (x) P. Gap equals the single-chain gap.
ChainMatrix product_chain(const ChainMatrix& chain, std::uint64_t cap = 25000);

// Eigendecomposition of the symmetric kernel; gap = 1 - lambda_2.
SpectralReport spectral_gap(const ChainMatrix& chain, double symmetry_tol = 1e-12);

// Worst-case total variation distance to uniform for t = 1..t_max.
MixingCurve mixing_curve(const ChainMatrix& chain, int t_max);

// gap >= 1/(4 e T) for a coupling-time upper bound T; throws on a negative
// eigenvalue (laziness violated).
bool verify_corollary1(const ChainMatrix& chain, double coupling_time_bound);

std::string chain_to_csv(const ChainMatrix& chain);

}  // namespace bbwalk
