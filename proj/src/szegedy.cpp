#include "bbwalk/szegedy.hpp"

#include <sstream>
#include <stdexcept>

namespace bbwalk {

double EdgeVector::norm() const {
    double s = 0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

QuantizedWalk::QuantizedWalk(const ChainMatrix& chain, std::vector<bool> marked) : n_(chain.size()) {
    if (static_cast<int>(marked.size()) != n_)
        throw std::invalid_argument("marked predicate size mismatch");
    edges_by_v_.assign(static_cast<std::size_t>(n_), {});
    for (int u = 0; u < n_; ++u) {
        const int begin = static_cast<int>(edges_.size());
        for (int v = 0; v < n_; ++v) {
            const double p = chain.P(u, v);
            if (p <= 0) continue;
            const int e = static_cast<int>(edges_.size());
            edges_.emplace_back(u, v);
            edges_by_v_[static_cast<std::size_t>(v)].push_back(e);
            sqrt_p_.push_back(std::sqrt(p));
            const double pm_row = marked[static_cast<std::size_t>(u)] ? (u == v ? 1.0 : 0.0) : p;
            const double pm_col =
                marked[static_cast<std::size_t>(v)] ? (u == v ? 1.0 : 0.0) : chain.P(v, u);
            sqrt_pm_row_.push_back(std::sqrt(pm_row));
            sqrt_pm_col_.push_back(std::sqrt(pm_col));
        }
        u_ranges_.emplace_back(begin, static_cast<int>(edges_.size()));
    }
}

EdgeVector QuantizedWalk::start_state() const {
    EdgeVector psi;
    psi.amplitudes.resize(edges_.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
    for (std::size_t e = 0; e < edges_.size(); ++e) psi.amplitudes[e] = scale * sqrt_p_[e];
    return psi;
}

EdgeVector QuantizedWalk::apply_reflection_first(const EdgeVector& v) const {
    if (v.amplitudes.size() != edges_.size()) throw std::invalid_argument("edge vector size mismatch");
    EdgeVector out;
    out.amplitudes.resize(edges_.size());
    for (const auto& [begin, end] : u_ranges_) {
        std::complex<double> c = 0;
        for (int e = begin; e < end; ++e)
            c += sqrt_pm_row_[static_cast<std::size_t>(e)] * v.amplitudes[static_cast<std::size_t>(e)];
        for (int e = begin; e < end; ++e)
            out.amplitudes[static_cast<std::size_t>(e)] =
                2.0 * sqrt_pm_row_[static_cast<std::size_t>(e)] * c -
                v.amplitudes[static_cast<std::size_t>(e)];
    }
    return out;
}

EdgeVector QuantizedWalk::apply_reflection_second(const EdgeVector& v) const {
    if (v.amplitudes.size() != edges_.size()) throw std::invalid_argument("edge vector size mismatch");
    EdgeVector out;
    out.amplitudes.resize(edges_.size());
    for (const auto& ids : edges_by_v_) {
        std::complex<double> c = 0;
        for (int e : ids)
            c += sqrt_pm_col_[static_cast<std::size_t>(e)] * v.amplitudes[static_cast<std::size_t>(e)];
        for (int e : ids)
            out.amplitudes[static_cast<std::size_t>(e)] =
                2.0 * sqrt_pm_col_[static_cast<std::size_t>(e)] * c -
                v.amplitudes[static_cast<std::size_t>(e)];
    }
    return out;
}

EdgeVector QuantizedWalk::step(const EdgeVector& v) const {
    return apply_reflection_second(apply_reflection_first(v));
}

Eigen::MatrixXd QuantizedWalk::dense_reflection_first() const {
    const int m = edge_count();
    Eigen::MatrixXd R = -Eigen::MatrixXd::Identity(m, m);
    for (const auto& [begin, end] : u_ranges_) {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(m);
        for (int e = begin; e < end; ++e) p(e) = sqrt_pm_row_[static_cast<std::size_t>(e)];
        R += 2.0 * p * p.transpose();
    }
    return R;
}

Eigen::MatrixXd QuantizedWalk::dense_reflection_second() const {
    const int m = edge_count();
    Eigen::MatrixXd R = -Eigen::MatrixXd::Identity(m, m);
    for (const auto& ids : edges_by_v_) {
        Eigen::VectorXd q = Eigen::VectorXd::Zero(m);
        for (int e : ids) q(e) = sqrt_pm_col_[static_cast<std::size_t>(e)];
        R += 2.0 * q * q.transpose();
    }
    return R;
}

Eigen::MatrixXd QuantizedWalk::dense_walk() const {
    return dense_reflection_second() * dense_reflection_first();
}

DetectionResult QuantizedWalk::detect_marked(const DetectionBudget& budget) const {
    DetectionResult result;
    result.steps = budget.t_max();
    EdgeVector psi0 = start_state();
    EdgeVector psi = psi0;
    double acc = 0;
    for (int t = 1; t <= result.steps; ++t) {
        psi = step(psi);
        std::complex<double> overlap = 0;
        for (std::size_t e = 0; e < psi.amplitudes.size(); ++e)
            overlap += std::conj(psi0.amplitudes[e]) * psi.amplitudes[e];
        const double sq = std::norm(overlap);
        result.trace.push_back(sq);
        acc += sq;
    }
    result.statistic = acc / result.steps;
    result.non_empty = result.statistic < budget.theta;
    return result;
}

std::string detection_trace_csv(const DetectionResult& result) {
    std::ostringstream os;
    os << "t,overlap_sq\n";
    for (int t = 1; t <= static_cast<int>(result.trace.size()); ++t)
        os << t << "," << result.trace[static_cast<std::size_t>(t - 1)] << "\n";
    return os.str();
}

}  // namespace bbwalk
