#include "bbwalk/markov.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bbwalk {

namespace {

std::string tuple_label(const TupleState& u) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < u.l(); ++i) os << (i ? "," : "") << u.indices[static_cast<std::size_t>(i)];
    os << ")";
    return os.str();
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

void fill_double_matrix(ChainMatrix& chain) {
    const int n = chain.size();
    chain.P.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            chain.P(i, j) = to_double(chain.exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
}

}  // namespace

bool ChainMatrix::is_symmetric_exact() const {
    for (std::size_t i = 0; i < exact.size(); ++i)
        for (std::size_t j = i + 1; j < exact.size(); ++j)
            if (exact[i][j] != exact[j][i]) return false;
    return true;
}

bool ChainMatrix::rows_sum_to_one() const {
    for (const auto& row : exact) {
        Rational sum(0);
        for (const auto& v : row) sum += v;
        if (sum != Rational(1)) return false;
    }
    return true;
}

std::string SpectralReport::to_json() const {
    nlohmann::json j{{"lambda2", lambda2}, {"gap", gap}, {"min_eigenvalue", min_eigenvalue}};
    return j.dump();
}

int MixingCurve::mixing_time() const {
    const double threshold = 1.0 / (2.0 * std::exp(1.0));
    for (int t = 1; t <= static_cast<int>(delta.size()); ++t)
        if (delta[static_cast<std::size_t>(t - 1)] <= threshold) return t;
    return 0;
}

std::string MixingCurve::to_json() const {
    nlohmann::json j{{"delta", delta}, {"mixing_time", mixing_time()}};
    return j.dump();
}

ChainMatrix enumerate_chain(int k, int l, std::uint64_t cap) {
    auto states = enumerate_tuples(k, l, cap);
    std::map<TupleState, int> index;
    for (int i = 0; i < static_cast<int>(states.size()); ++i)
        index[states[static_cast<std::size_t>(i)]] = i;

    ChainMatrix chain;
    const int n = static_cast<int>(states.size());
    chain.exact.assign(static_cast<std::size_t>(n),
                       std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i) {
        chain.state_labels.push_back(tuple_label(states[static_cast<std::size_t>(i)]));
        for (const auto& [v, prob] : transition_support(states[static_cast<std::size_t>(i)], k))
            chain.exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(index.at(v))] = prob;
    }
    fill_double_matrix(chain);
    return chain;
}

ChainMatrix lazy_complete_graph_chain(int m) {
    if (m < 2) throw std::invalid_argument("need m >= 2");
    ChainMatrix chain;
    chain.exact.assign(static_cast<std::size_t>(m),
                       std::vector<Rational>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
        chain.state_labels.push_back(std::to_string(i));
        for (int j = 0; j < m; ++j)
            chain.exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                i == j ? Rational(1, 2) : Rational(1, 2LL * (m - 1));
    }
    fill_double_matrix(chain);
    return chain;
}

ChainMatrix product_chain(const ChainMatrix& chain, std::uint64_t cap) {
    const int n = chain.size();
    if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) > cap)
        throw cap_exceeded_error("product chain exceeds enumeration cap");
    ChainMatrix out;
    out.exact.assign(static_cast<std::size_t>(n) * n,
                     std::vector<Rational>(static_cast<std::size_t>(n) * n, Rational(0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            out.state_labels.push_back(chain.state_labels[static_cast<std::size_t>(a)] + "x" +
                                       chain.state_labels[static_cast<std::size_t>(b)]);
            auto& row = out.exact[static_cast<std::size_t>(a * n + b)];
            for (int c = 0; c < n; ++c) {
                const auto& pac = chain.exact[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
                if (pac == Rational(0)) continue;
                for (int d = 0; d < n; ++d) {
                    const auto& pbd =
                        chain.exact[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)];
                    if (pbd != Rational(0)) row[static_cast<std::size_t>(c * n + d)] = pac * pbd;
                }
            }
        }
    fill_double_matrix(out);
    return out;
}

SpectralReport spectral_gap(const ChainMatrix& chain, double symmetry_tol) {
    const int n = chain.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(chain.P(i, j) - chain.P(j, i)) > symmetry_tol)
                throw std::invalid_argument("spectral_gap requires a symmetric kernel");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(chain.P, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();  // ascending
    SpectralReport rep;
    rep.min_eigenvalue = ev(0);
    rep.lambda2 = n >= 2 ? ev(n - 2) : ev(0);
    rep.gap = 1.0 - rep.lambda2;
    return rep;
}

MixingCurve mixing_curve(const ChainMatrix& chain, int t_max) {
    if (t_max < 1) throw std::invalid_argument("t_max >= 1 required");
    const int n = chain.size();
    const double uniform = 1.0 / n;
    Eigen::MatrixXd Pt = Eigen::MatrixXd::Identity(n, n);
    MixingCurve curve;
    for (int t = 1; t <= t_max; ++t) {
        Pt = Pt * chain.P;  // row i of Pt = distribution after t steps from i
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            double tv = 0;
            for (int j = 0; j < n; ++j) tv += std::abs(Pt(i, j) - uniform);
            worst = std::max(worst, tv / 2.0);
        }
        curve.delta.push_back(worst);
    }
    return curve;
}

bool verify_corollary1(const ChainMatrix& chain, double coupling_time_bound) {
    SpectralReport rep = spectral_gap(chain);
    if (rep.min_eigenvalue < -1e-9)
        throw std::domain_error("negative eigenvalue: chain is not lazy");
    return rep.gap >= 1.0 / (4.0 * std::exp(1.0) * coupling_time_bound);
}

std::string chain_to_csv(const ChainMatrix& chain) {
    std::ostringstream os;
    os << "state";
    for (const auto& s : chain.state_labels) os << "," << s;
    os << "\n";
    for (int i = 0; i < chain.size(); ++i) {
        os << chain.state_labels[static_cast<std::size_t>(i)];
        for (int j = 0; j < chain.size(); ++j) {
            const auto& r = chain.exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            os << "," << r.numerator() << "/" << r.denominator();
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace bbwalk
