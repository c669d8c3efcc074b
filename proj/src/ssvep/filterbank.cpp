#include "itr/ssvep/filterbank.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace itr::ssvep {

namespace {

using cd = std::complex<double>;

cd bilinear(cd s, double fs2) { return (fs2 + s) / (fs2 - s); }

// Denominator of one biquad from a conjugate pole pair.
void pole_pair_to_denominator(cd pole, Biquad& q) {
    q.a1 = -2.0 * pole.real();
    q.a2 = std::norm(pole);
}

double cascade_gain_at(const std::vector<Biquad>& cascade, double omega) {
    cd z = std::polar(1.0, omega);
    cd h = 1.0;
    for (const Biquad& q : cascade) {
        cd num = q.b0 + q.b1 / z + q.b2 / (z * z);
        cd den = 1.0 + q.a1 / z + q.a2 / (z * z);
        h *= num / den;
    }
    return std::abs(h);
}

}  // namespace

std::vector<Biquad> butter_bandpass(double low_hz, double high_hz, double sample_rate_hz,
                                    const BandPassDesign& design) {
    const double nyquist = sample_rate_hz / 2.0;
    const double f1 = low_hz * design.low_edge_factor;
    const double f2 = std::min(high_hz, design.high_edge_cap * nyquist);
    if (!(f1 > 0.0) || !(f1 < f2) || !(f2 < nyquist))
        throw std::invalid_argument("butter_bandpass: invalid band edges");
    const int n = design.prototype_order;
    if (n < 1) throw std::invalid_argument("butter_bandpass: prototype order must be >= 1");

    // Analog edges (prewarped), center and bandwidth.
    const double fs2 = 2.0 * sample_rate_hz;
    const double w1 = fs2 * std::tan(std::numbers::pi * f1 / sample_rate_hz);
    const double w2 = fs2 * std::tan(std::numbers::pi * f2 / sample_rate_hz);
    const double w0 = std::sqrt(w1 * w2);
    const double bw = w2 - w1;

    // Lowpass prototype poles on the unit circle, left half plane.
    std::vector<Biquad> cascade;
    auto add_pair = [&](cd pole) {
        Biquad q{1.0, 0.0, -1.0, 0.0, 0.0};  // zeros at z = +1 and z = -1
        pole_pair_to_denominator(pole, q);
        cascade.push_back(q);
    };

    for (int k = 1; k <= n; ++k) {
        double angle = std::numbers::pi * (2.0 * k + n - 1.0) / (2.0 * n);
        cd p = std::polar(1.0, angle);
        if (std::abs(p.imag()) < 1e-14) {
            // Real prototype pole: its two band-pass poles are conjugates (or
            // a real pair for very wide bands); either way one biquad.
            cd disc = std::sqrt(cd(p.real() * bw * p.real() * bw - 4.0 * w0 * w0, 0.0));
            cd s_hi = (p.real() * bw + disc) / 2.0;
            cd s_lo = (p.real() * bw - disc) / 2.0;
            cd z_hi = bilinear(s_hi, fs2), z_lo = bilinear(s_lo, fs2);
            if (std::abs(s_hi.imag()) > 1e-12) {
                add_pair(z_hi);
            } else {
                Biquad q{1.0, 0.0, -1.0, 0.0, 0.0};
                q.a1 = -(z_hi.real() + z_lo.real());
                q.a2 = z_hi.real() * z_lo.real();
                cascade.push_back(q);
            }
        } else if (p.imag() > 0.0) {
            // One biquad per band-pass pole; the conjugate partners come from
            // the conjugate prototype pole.
            cd pb = p * bw;
            cd disc = std::sqrt(pb * pb - 4.0 * w0 * w0);
            add_pair(bilinear((pb + disc) / 2.0, fs2));
            add_pair(bilinear((pb - disc) / 2.0, fs2));
        }
    }

    // Unit gain at the (digital) center frequency, spread across sections.
    const double wc = 2.0 * std::atan(w0 / fs2);
    const double gain = cascade_gain_at(cascade, wc);
    const double per_section = std::pow(1.0 / gain, 1.0 / static_cast<double>(cascade.size()));
    for (Biquad& q : cascade) {
        q.b0 *= per_section;
        q.b1 *= per_section;
        q.b2 *= per_section;
    }
    return cascade;
}

namespace {

// One DF2T pass over a signal, cascading sections with steady-state initial
// conditions scaled to the first sample (step-response zi, scipy style).
void sosfilt_inplace(std::span<const Biquad> cascade, std::vector<double>& x) {
    double level = x.empty() ? 0.0 : x.front();
    for (const Biquad& q : cascade) {
        double dc = (q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2);
        double s2 = (q.b2 - q.a2 * dc) * level;
        double s1 = (q.b1 + q.b2 - (q.a1 + q.a2) * dc) * level;
        for (double& v : x) {
            double in = v;
            double out = q.b0 * in + s1;
            s1 = q.b1 * in - q.a1 * out + s2;
            s2 = q.b2 * in - q.a2 * out;
            v = out;
        }
        level *= dc;
    }
}

}  // namespace

void filtfilt(std::span<const Biquad> cascade, Eigen::MatrixXd& x) {
    const long t = x.cols();
    const long pad = 3 * (2 * static_cast<long>(cascade.size()) + 1);
    if (t <= pad + 1)
        throw std::invalid_argument("filtfilt: signal shorter than the reflection padding (" +
                                    std::to_string(pad + 2) + " samples needed)");
    std::vector<double> ext(static_cast<std::size_t>(t + 2 * pad));
    for (long row = 0; row < x.rows(); ++row) {
        for (long i = 0; i < pad; ++i)
            ext[static_cast<std::size_t>(i)] = 2.0 * x(row, 0) - x(row, pad - i);
        for (long i = 0; i < t; ++i) ext[static_cast<std::size_t>(pad + i)] = x(row, i);
        for (long i = 0; i < pad; ++i)
            ext[static_cast<std::size_t>(pad + t + i)] = 2.0 * x(row, t - 1) - x(row, t - 2 - i);

        sosfilt_inplace(cascade, ext);
        std::reverse(ext.begin(), ext.end());
        sosfilt_inplace(cascade, ext);
        std::reverse(ext.begin(), ext.end());

        for (long i = 0; i < t; ++i) x(row, i) = ext[static_cast<std::size_t>(pad + i)];
    }
}

void FilterBankSpec::validate(double sample_rate_hz) const {
    if (bands_hz.empty()) throw std::invalid_argument("FilterBankSpec: need at least one band");
    if (bands_hz.size() != weights.size())
        throw std::invalid_argument("FilterBankSpec: band/weight length mismatch");
    const double nyquist = sample_rate_hz / 2.0;
    for (auto [lo, hi] : bands_hz)
        if (!(lo > 0.0) || !(lo < hi) || !(std::min(hi, design.high_edge_cap * nyquist) > lo))
            throw std::invalid_argument("FilterBankSpec: band edges must satisfy 0 < low < high "
                                        "within the Nyquist range");
}

FilterBankSpec FilterBankSpec::harmonic_bands(std::size_t n_bands, double high_hz) {
    if (n_bands == 0) throw std::invalid_argument("harmonic_bands: need at least one band");
    FilterBankSpec spec;
    for (std::size_t b = 1; b <= n_bands; ++b) {
        spec.bands_hz.emplace_back(8.0 * static_cast<double>(b), high_hz);
        spec.weights.push_back(std::pow(static_cast<double>(b), -1.25) + 0.25);
    }
    return spec;
}

std::vector<Eigen::MatrixXd> filter_bank_decompose(const Eigen::MatrixXd& x,
                                                   const FilterBankSpec& spec,
                                                   double sample_rate_hz) {
    spec.validate(sample_rate_hz);
    std::vector<Eigen::MatrixXd> out;
    out.reserve(spec.bands_hz.size());
    for (auto [lo, hi] : spec.bands_hz) {
        auto cascade = butter_bandpass(lo, hi, sample_rate_hz, spec.design);
        Eigen::MatrixXd y = x;
        filtfilt(cascade, y);
        out.push_back(std::move(y));
    }
    return out;
}

double combine_subbands(std::span<const double> rho, std::span<const double> weights) {
    if (rho.empty() || rho.size() != weights.size())
        throw std::invalid_argument("combine_subbands: need matching nonempty rho/weights");
    double score = 0.0;
    for (std::size_t b = 0; b < rho.size(); ++b) score += weights[b] * rho[b] * rho[b];
    return score;
}

}  // namespace itr::ssvep
