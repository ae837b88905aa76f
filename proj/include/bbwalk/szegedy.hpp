#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bbwalk/markov.hpp"

namespace bbwalk {

// Amplitudes over the directed edges (u, v) of the chain's support.
struct EdgeVector {
    std::vector<std::complex<double>> amplitudes;

    double norm() const;
};

struct DetectionBudget {
    double delta = 0;    // spectral gap lower bound
    double epsilon = 0;  // marked-fraction lower bound
    double C = 3.0;
    double theta = 0.75;

    int t_max() const {
        return std::max(1, static_cast<int>(std::ceil(C / std::sqrt(delta * epsilon))));
    }
};

struct DetectionResult {
    bool non_empty = false;
    double statistic = 1.0;  // time-averaged squared overlap with the start state
    int steps = 0;
    std::vector<double> trace;  // |<psi0|W^t|psi0>|^2 for t = 1..steps
};

// Szegedy quantization of a symmetric lazy chain with an absorbing marked
// set: rows of marked states are replaced by self-loops before quantization.
// The edge space is indexed over the support of the *original* chain.
class QuantizedWalk {
  public:
    QuantizedWalk(const ChainMatrix& chain, std::vector<bool> marked);
    // Unmarked quantization (plain chain).
    explicit QuantizedWalk(const ChainMatrix& chain)
        : QuantizedWalk(chain, std::vector<bool>(static_cast<std::size_t>(chain.size()), false)) {}

    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // (1/sqrt(N)) sum_{u,v} sqrt(P[u,v]) |u,v> over the original chain.
    EdgeVector start_state() const;

    // Reflection through span{ |u>|p_u> }: per-u Grover-style diffusion over
    // the rows of the absorbed chain.
    EdgeVector apply_reflection_first(const EdgeVector& v) const;
    // Mirror reflection on the second coordinate.
    EdgeVector apply_reflection_second(const EdgeVector& v) const;

    // One walk step W = R2 R1; unitary.
    EdgeVector step(const EdgeVector& v) const;

    // Independently assembled dense reflections (rank-one outer-product
    // sums), for cross-checking the matrix-free path on small chains.
    Eigen::MatrixXd dense_reflection_first() const;
    Eigen::MatrixXd dense_reflection_second() const;
    Eigen::MatrixXd dense_walk() const;

    DetectionResult detect_marked(const DetectionBudget& budget) const;

  private:
    int n_;
    std::vector<std::pair<int, int>> edges_;              // (u, v), grouped by u
    std::vector<std::pair<int, int>> u_ranges_;           // edge range per u
    std::vector<std::vector<int>> edges_by_v_;            // edge ids per v
    std::vector<double> sqrt_p_;                          // sqrt P[u,v] (original)
    std::vector<double> sqrt_pm_row_;                     // sqrt P_M[u,v]
    std::vector<double> sqrt_pm_col_;                     // sqrt P_M[v,u]
};

std::string detection_trace_csv(const DetectionResult& result);

}  // namespace bbwalk
