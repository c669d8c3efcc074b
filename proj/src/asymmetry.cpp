#include "itr/asymmetry.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace itr {

namespace {

// Strong connectivity of the positive-entry digraph: every state reachable
// from state 0 and state 0 reachable from every state.
bool irreducible(const ChannelMatrix& p) {
    const std::size_t m = p.inputs();
    auto reach = [&](bool forward) {
        std::vector<char> seen(m, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < m; ++j) {
                double w = forward ? p(i, j) : p(j, i);
                if (w > 0.0 && !seen[j]) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
            }
        }
        for (char s : seen)
            if (!s) return false;
        return true;
    };
    return reach(true) && reach(false);
}

ChannelMatrix smooth(const ChannelMatrix& p, double weight) {
    const std::size_t m = p.inputs();
    std::vector<double> flat(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            flat[i * m + j] = (1.0 - weight) * p(i, j) + weight / static_cast<double>(m);
    return ChannelMatrix(m, m, std::move(flat));
}

bool has_zero_entry(const ChannelMatrix& p) {
    for (double v : p.data())
        if (v <= 0.0) return true;
    return false;
}

}  // namespace

Distribution stationary_distribution(const ChannelMatrix& channel,
                                     const StationaryOptions& opts) {
    if (channel.inputs() != channel.outputs())
        throw std::invalid_argument("stationary_distribution: matrix must be square");
    const std::size_t m = channel.inputs();

    ChannelMatrix p = opts.smoothing > 0.0 ? smooth(channel, opts.smoothing) : channel;
    if (!irreducible(p))
        throw std::runtime_error(
            "stationary_distribution: chain is reducible, stationary distribution is not "
            "unique (enable smoothing for empirical matrices with zeros)");

    // Power iteration on ((P + I)/2)^T: same fixed point, and the self-loops
    // remove any periodicity so the iteration always settles.
    std::vector<double> v(m, 1.0 / static_cast<double>(m)), next(m);
    double residual = 1.0;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.5 * v[j];
            for (std::size_t i = 0; i < m; ++i) s += 0.5 * v[i] * p(i, j);
            next[j] = s;
        }
        double total = 0.0;
        for (double x : next) total += x;
        for (double& x : next) x /= total;
        v.swap(next);

        residual = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += v[i] * p(i, j);
            residual = std::max(residual, std::abs(s - v[j]));
        }
        if (residual < opts.residual_tol) return Distribution(std::move(v));
    }

    // Slowly mixing chain: finish with a direct solve of phi (P - I) = 0,
    // sum phi = 1 (bordered system).
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + 1, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            a(static_cast<long>(j), static_cast<long>(i)) =
                p(i, j) - (i == j ? 1.0 : 0.0);
    for (std::size_t i = 0; i < m; ++i) a(static_cast<long>(m), static_cast<long>(i)) = 1.0;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
    b(static_cast<long>(m)) = 1.0;
    Eigen::VectorXd phi = a.colPivHouseholderQr().solve(b);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = std::max(phi(static_cast<long>(i)), 0.0);
    return Distribution(std::move(out));
}

AsymmetryReport asymmetry_report(const ChannelMatrix& channel) {
    if (channel.inputs() != channel.outputs())
        throw std::invalid_argument("asymmetry_report: matrix must be square");
    const std::size_t m = channel.inputs();

    bool smoothed = has_zero_entry(channel);
    StationaryOptions opts;
    opts.smoothing = smoothed ? 1e-8 : 0.0;
    Distribution phi = stationary_distribution(channel, opts);
    ChannelMatrix p = smoothed ? smooth(channel, 1e-8) : channel;

    // Gamma = Phi^{1/2} (I - P) Phi^{-1/2}; the skew part K = (Gamma - Gamma^T)/2.
    Eigen::MatrixXd k(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double gij = std::sqrt(phi[i] / phi[j]) * ((i == j ? 1.0 : 0.0) - p(i, j));
            double gji = std::sqrt(phi[j] / phi[i]) * ((i == j ? 1.0 : 0.0) - p(j, i));
            k(static_cast<long>(i), static_cast<long>(j)) = 0.5 * (gij - gji);
        }
    }
    // sigma_max via the spectrum of K^T K (symmetric PSD).
    Eigen::MatrixXd ktk = k.transpose() * k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ktk);
    double lambda_max = es.eigenvalues().maxCoeff();
    return AsymmetryReport{std::sqrt(std::max(lambda_max, 0.0)), phi, smoothed};
}

double asymmetry_score(const ChannelMatrix& channel) {
    return asymmetry_report(channel).delta_asm;
}

double delta_itr(double itr_proposed, double itr_conventional) {
    if (!(itr_conventional > 0.0))
        throw std::domain_error("delta_itr: conventional ITR must be positive");
    return (itr_proposed - itr_conventional) / itr_conventional;
}

}  // namespace itr
