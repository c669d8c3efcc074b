#include "itr/info.hpp"

#include <cmath>
#include <stdexcept>

namespace itr {

namespace {
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }
}  // namespace

double entropy(const Distribution& d) {
    double h = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) h -= xlog2x(d[i]);
    return h;
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("binary_entropy: argument outside [0,1]");
    return -xlog2x(x) - xlog2x(1.0 - x);
}

double kl_divergence(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("kl_divergence: length mismatch");
    double d = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0.0) continue;
        if (q[j] == 0.0)
            throw std::domain_error("kl_divergence: q has zero mass where p does not");
        d += p[j] * std::log2(p[j] / q[j]);
    }
    return d;
}

Distribution output_distribution(const ChannelMatrix& channel, const Distribution& px) {
    if (px.size() != channel.inputs())
        throw std::invalid_argument("output_distribution: input size mismatch");
    std::vector<double> py(channel.outputs(), 0.0);
    for (std::size_t i = 0; i < channel.inputs(); ++i)
        for (std::size_t j = 0; j < channel.outputs(); ++j) py[j] += px[i] * channel(i, j);
    return Distribution(std::move(py));
}

InfoSummary info_summary(const ChannelMatrix& channel, const Distribution& px) {
    if (px.size() != channel.inputs())
        throw std::invalid_argument("info_summary: input size mismatch");
    InfoSummary s{};
    s.input_entropy = entropy(px);
    Distribution py = output_distribution(channel, px);
    s.output_entropy = entropy(py);
    s.conditional_entropy = 0.0;
    for (std::size_t i = 0; i < channel.inputs(); ++i) {
        double hrow = 0.0;
        for (std::size_t j = 0; j < channel.outputs(); ++j) hrow -= xlog2x(channel(i, j));
        s.conditional_entropy += px[i] * hrow;
    }
    s.mutual_information = s.output_entropy - s.conditional_entropy;
    return s;
}

ConventionalItr conventional_itr(std::size_t m, double accuracy, double seconds) {
    if (m < 2) throw std::invalid_argument("conventional_itr: M must be at least 2");
    if (!(accuracy >= 0.0 && accuracy <= 1.0))
        throw std::invalid_argument("conventional_itr: accuracy outside [0,1]");
    if (!(seconds > 0.0)) throw std::invalid_argument("conventional_itr: T must be positive");
    double bits = std::log2(static_cast<double>(m)) + xlog2x(accuracy);
    if (accuracy < 1.0)
        bits += (1.0 - accuracy) * std::log2((1.0 - accuracy) / static_cast<double>(m - 1));
    return ConventionalItr{bits, bits * 60.0 / seconds,
                           accuracy < 1.0 / static_cast<double>(m)};
}

}  // namespace itr
