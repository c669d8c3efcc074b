#include "itr/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "itr/info.hpp"

namespace itr {

namespace {

// Columns an output symbol never lands in carry no information and break the
// KL terms (0/0); the iteration runs on the reduced matrix.
std::vector<std::size_t> nonzero_columns(const ChannelMatrix& p) {
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < p.outputs(); ++j) {
        double colsum = 0.0;
        for (std::size_t i = 0; i < p.inputs(); ++i) colsum += p(i, j);
        if (colsum > 0.0) keep.push_back(j);
    }
    return keep;
}

}  // namespace

CapacityResult blahut_arimoto(const ChannelMatrix& channel, const BAConfig& cfg) {
    if (cfg.gamma_th <= 0.0) throw std::invalid_argument("blahut_arimoto: gamma_th must be > 0");
    if (cfg.max_iter < 1) throw std::invalid_argument("blahut_arimoto: max_iter must be >= 1");

    const std::size_t m = channel.inputs();
    const auto cols = nonzero_columns(channel);
    const std::size_t n = cols.size();
    if (n < 1) throw std::invalid_argument("blahut_arimoto: channel has no reachable outputs");

    std::vector<double> p(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) p[i * n + j] = channel(i, cols[j]);

    std::vector<double> px(m, 1.0 / static_cast<double>(m));
    if (cfg.initial_input) {
        if (cfg.initial_input->size() != m)
            throw std::invalid_argument("blahut_arimoto: initial_input size mismatch");
        px = cfg.initial_input->probs();
    }

    std::vector<double> py(n), div(m);
    auto update_divergences = [&]() {
        std::fill(py.begin(), py.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) py[j] += px[i] * p[i * n + j];
        for (std::size_t i = 0; i < m; ++i) {
            double d = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double pij = p[i * n + j];
                if (pij > 0.0) d += pij * std::log2(pij / py[j]);
            }
            div[i] = d;
        }
    };

    double lower = 0.0, gap = 0.0;
    std::size_t iter = 0;
    bool converged = false;
    for (iter = 1; iter <= cfg.max_iter; ++iter) {
        update_divergences();
        double scale = *std::max_element(div.begin(), div.end());
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            px[i] *= std::exp2(div[i] - scale);
            total += px[i];
        }
        for (double& v : px) v /= total;

        update_divergences();
        lower = 0.0;
        double upper = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            lower += px[i] * div[i];
            upper = std::max(upper, div[i]);
        }
        gap = upper - lower;
        if (gap < cfg.gamma_th) {
            converged = true;
            break;
        }
    }
    if (!converged) iter = cfg.max_iter;

    return CapacityResult{std::max(lower, 0.0), Distribution(std::move(px)), iter, gap,
                          converged};
}

BinaryCapacityResult binary_capacity(double p12, double p21) {
    if (!(p12 >= 0.0 && p12 <= 1.0) || !(p21 >= 0.0 && p21 <= 1.0))
        throw std::invalid_argument("binary_capacity: probabilities must lie in [0,1]");
    const double denom = 1.0 - p12 - p21;
    // Identical rows: I(X;Y) = 0 for every input; removable singularity.
    if (std::abs(denom) < 1e-12) return {0.0, 0.5};
    const double ha = binary_entropy(p12);
    const double hb = binary_entropy(p21);
    const double beta = std::exp2((ha - hb) / denom);
    const double capacity =
        std::log2(1.0 + beta) - ((1.0 - p21) * ha - p12 * hb) / denom;
    const double z = 1.0 / (1.0 + beta);  // optimal P_Y(y1)
    const double px = std::clamp((z - p21) / denom, 0.0, 1.0);
    return {std::max(capacity, 0.0), px};
}

double binary_optimal_input(double p12, double p21) { return binary_capacity(p12, p21).optimal_px; }

CapacityItr capacity_itr(const ChannelMatrix& channel, double seconds, const BAConfig& cfg) {
    if (!(seconds > 0.0)) throw std::invalid_argument("capacity_itr: T must be positive");
    CapacityResult r = blahut_arimoto(channel, cfg);
    return CapacityItr{r.capacity * 60.0 / seconds, r.converged};
}

double mutual_information_fixed_input(const ChannelMatrix& channel, const Distribution& px) {
    return info_summary(channel, px).mutual_information;
}

}  // namespace itr
