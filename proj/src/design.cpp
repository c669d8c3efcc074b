#include "itr/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "itr/capacity.hpp"
#include "itr/info.hpp"

namespace itr {

ChannelMatrix balanced_matrix(double accuracy, std::size_t m) {
    return balanced_matrix(std::vector<double>(m, accuracy), m);
}

ChannelMatrix balanced_matrix(const std::vector<double>& per_class_accuracy, std::size_t m) {
    if (m < 2) throw std::invalid_argument("balanced_matrix: M must be at least 2");
    if (per_class_accuracy.size() != m)
        throw std::invalid_argument("balanced_matrix: accuracy vector length mismatch");
    std::vector<double> flat(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        double p = per_class_accuracy[i];
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("balanced_matrix: accuracy outside [0,1]");
        double off = (1.0 - p) / static_cast<double>(m - 1);
        for (std::size_t j = 0; j < m; ++j) flat[i * m + j] = (i == j) ? p : off;
    }
    return ChannelMatrix(m, m, std::move(flat));
}

FanoErrorBound fano_error_lower_bound(const ChannelMatrix& channel, const Distribution& px) {
    if (channel.inputs() != channel.outputs())
        throw std::invalid_argument(
            "fano_error_lower_bound: error events need a square channel");
    const std::size_t m = channel.inputs();
    InfoSummary s = info_summary(channel, px);
    const double hyx = s.conditional_entropy;

    // Weak form: (H(Y) - I - 1)/log2(M) = (H(Y|X) - 1)/log2(M).
    double weak = (hyx - 1.0) / std::log2(static_cast<double>(m));
    double bound = std::max(weak, 0.0);
    if (m == 2) return {bound, false};

    // Tight form: smallest eps with h(eps) + eps log2(M-1) >= H(Y|X).
    // The left side increases on [0, (M-1)/M]; bisection keeps the lower
    // endpoint so the returned value never overshoots the true error.
    const double logm1 = std::log2(static_cast<double>(m - 1));
    double lo = 0.0, hi = static_cast<double>(m - 1) / static_cast<double>(m);
    if (binary_entropy(hi) + hi * logm1 >= hyx) {
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (binary_entropy(mid) + mid * logm1 >= hyx)
                hi = mid;
            else
                lo = mid;
        }
        bound = std::max(bound, lo);
    }
    return {bound, true};
}

double fano_conditional_entropy_bound(double eps, std::size_t m) {
    if (m < 2) throw std::invalid_argument("fano_conditional_entropy_bound: M must be >= 2");
    return binary_entropy(eps) + eps * std::log2(static_cast<double>(m - 1));
}

namespace {

// Euclidean projection onto the probability simplex (sort-based). The
// threshold comes from the last prefix where u_k > (css_k - 1)/(k+1).
void simplex_project(std::vector<double>& v) {
    std::vector<double> u(v);
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        css += u[k];
        double t = (css - 1.0) / static_cast<double>(k + 1);
        if (u[k] > t) theta = t;
    }
    for (double& x : v) x = std::max(x - theta, 0.0);
}

// Dykstra's alternating projections onto the intersection of the product of
// row simplices with the accuracy hyperplane sum_i px_i p_ii = A. Plain POCS
// is not a projection and cancels tangential movement, which stalls the
// gradient iterates short of the optimal vertex. The row-feasible iterate z
// is the one that converges to the projection; it is always row-stochastic,
// so it is what gets returned.
void project_feasible(std::vector<double>& p, std::size_t m, const std::vector<double>& px,
                      double target_acc) {
    const double nrm = std::inner_product(px.begin(), px.end(), px.begin(), 0.0);
    std::vector<double> corr1(m * m, 0.0), corr2(m * m, 0.0), row(m), y(m * m), z(m * m),
        z_prev(m * m, -1.0), x(p);
    for (int round = 0; round < 2000; ++round) {
        for (std::size_t k = 0; k < m * m; ++k) y[k] = x[k] + corr1[k];
        for (std::size_t i = 0; i < m; ++i) {
            std::copy(y.begin() + static_cast<long>(i * m),
                      y.begin() + static_cast<long>((i + 1) * m), row.begin());
            simplex_project(row);
            std::copy(row.begin(), row.end(), z.begin() + static_cast<long>(i * m));
        }
        for (std::size_t k = 0; k < m * m; ++k) corr1[k] = y[k] - z[k];

        for (std::size_t k = 0; k < m * m; ++k) y[k] = z[k] + corr2[k];
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) acc += px[i] * y[i * m + i];
        double shift = (target_acc - acc) / nrm;
        x = y;
        for (std::size_t i = 0; i < m; ++i) x[i * m + i] += shift * px[i];
        for (std::size_t k = 0; k < m * m; ++k) corr2[k] = y[k] - x[k];

        double delta = 0.0, z_acc = 0.0;
        for (std::size_t k = 0; k < m * m; ++k)
            delta = std::max(delta, std::abs(z[k] - z_prev[k]));
        for (std::size_t i = 0; i < m; ++i) z_acc += px[i] * z[i * m + i];
        if (delta < 1e-15 && std::abs(z_acc - target_acc) < 1e-12) break;
        z_prev = z;
    }
    p = z;
}

double mutual_information_flat(const std::vector<double>& p, std::size_t m,
                               const std::vector<double>& px) {
    std::vector<double> py(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) py[j] += px[i] * p[i * m + j];
    double info = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double pij = p[i * m + j];
            if (pij > 0.0 && py[j] > 0.0) info += px[i] * pij * std::log2(pij / py[j]);
        }
    return info;
}

// Fix px, climb I(X;Y) over the feasible channels. I is convex in P, so the
// ascent flows to a vertex of the polytope; the clamped log-ratio gradient
// keeps the steps finite near the boundary.
void maximize_channel(std::vector<double>& p, std::size_t m, const std::vector<double>& px,
                      double target_acc, int steps) {
    project_feasible(p, m, px, target_acc);
    std::vector<double> best(p);
    double best_info = mutual_information_flat(p, m, px);
    std::vector<double> py(m), grad(m * m);
    for (int s = 0; s < steps; ++s) {
        std::fill(py.begin(), py.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) py[j] += px[i] * p[i * m + j];
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                double pij = std::max(p[i * m + j], 1e-30);
                double ratio = std::log2(pij / std::max(py[j], 1e-30));
                grad[i * m + j] = px[i] * std::clamp(ratio, -16.0, 16.0);
            }
        for (std::size_t k = 0; k < m * m; ++k) p[k] += 0.25 * grad[k];
        project_feasible(p, m, px, target_acc);
        double info = mutual_information_flat(p, m, px);
        if (info > best_info + 1e-15) {
            best_info = info;
            best = p;
        }
    }
    p = best;
}

}  // namespace

DesignResult joint_optimize(std::size_t m, AccuracyTarget target, int restarts,
                            std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("joint_optimize: M must be at least 2");
    if (restarts < 1) throw std::invalid_argument("joint_optimize: restarts must be >= 1");
    const double eps = 1.0 - target.accuracy;
    if (eps < 0.0 || eps >= 1.0 - 1.0 / static_cast<double>(m))
        throw std::invalid_argument(
            "joint_optimize: target error must satisfy 0 <= eps < 1 - 1/M");

    if (eps == 0.0) {
        // Zero-error limit: the identity channel with uniform input, exactly.
        return DesignResult{ChannelMatrix::identity(m), Distribution::uniform(m),
                            std::log2(static_cast<double>(m)), 0.0,
                            fano_conditional_entropy_bound(0.0, m), restarts, true};
    }

    BAConfig ba_cfg;
    bool have_best = false;
    double best_capacity = -1.0;
    std::vector<double> best_p;
    Distribution best_px = Distribution::uniform(m);
    double best_acc = 0.0;

    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(r));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> p(m * m);
        for (std::size_t i = 0; i < m; ++i) {
            double rowsum = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                p[i * m + j] = unif(rng) + 1e-9;
                rowsum += p[i * m + j];
            }
            for (std::size_t j = 0; j < m; ++j) p[i * m + j] /= rowsum;
        }

        std::vector<double> px(m, 1.0 / static_cast<double>(m));
        double prev_capacity = -1.0;
        for (int outer = 0; outer < 500; ++outer) {
            maximize_channel(p, m, px, target.accuracy, 120);
            CapacityResult ba = blahut_arimoto(ChannelMatrix(m, m, p), ba_cfg);
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) acc += ba.optimal_input[i] * p[i * m + i];
            if (std::abs(acc - target.accuracy) <= 1e-4 &&
                (!have_best || ba.capacity > best_capacity)) {
                have_best = true;
                best_capacity = ba.capacity;
                best_p = p;
                best_px = ba.optimal_input;
                best_acc = acc;
            }
            if (std::abs(ba.capacity - prev_capacity) < 1e-7) break;
            prev_capacity = ba.capacity;
            px = ba.optimal_input.probs();
        }
    }

    if (!have_best) {
        // No iterate hit the accuracy consistency gate; fall back to the
        // balanced channel at the target (always a valid fixed point) and
        // flag non-convergence.
        ChannelMatrix fallback = balanced_matrix(target.accuracy, m);
        CapacityResult ba = blahut_arimoto(fallback, ba_cfg);
        double acc = fallback.accuracy(ba.optimal_input);
        return DesignResult{fallback,       ba.optimal_input,
                            ba.capacity,    1.0 - acc,
                            fano_conditional_entropy_bound(1.0 - acc, m), restarts, false};
    }

    double achieved_error = 1.0 - best_acc;
    return DesignResult{ChannelMatrix(m, m, best_p),
                        best_px,
                        best_capacity,
                        achieved_error,
                        fano_conditional_entropy_bound(achieved_error, m),
                        restarts,
                        true};
}

std::pair<ChannelMatrix, ChannelMatrix> binary_extremal_channels(double accuracy) {
    if (!(accuracy > 0.5 && accuracy <= 1.0))
        throw std::invalid_argument(
            "binary_extremal_channels: accuracy must lie in (0.5, 1]");
    double e = 1.0 - accuracy;
    return {ChannelMatrix::binary(2.0 * e, 0.0), ChannelMatrix::binary(e, e)};
}

}  // namespace itr
