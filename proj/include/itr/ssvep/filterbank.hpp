#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace itr::ssvep {

struct Biquad {
    double b0, b1, b2;  // numerator
    double a1, a2;      // denominator (a0 = 1)
};

struct BandPassDesign {
    int prototype_order = 5;       // analog lowpass prototype; band-pass order is 2x
    double low_edge_factor = 0.82;  // -3 dB low edge placed at factor * band_low
    double high_edge_cap = 0.98;    // high edge capped at cap * Nyquist
};

/// Digital Butterworth band-pass as a biquad cascade (bilinear transform with
/// prewarping); unit gain at the geometric center frequency.
std::vector<Biquad> butter_bandpass(double low_hz, double high_hz, double sample_rate_hz,
                                    const BandPassDesign& design = {});

/// Zero-phase forward-backward filtering with odd-reflection padding and
/// steady-state initial conditions, applied in place per row of x.
void filtfilt(std::span<const Biquad> cascade, Eigen::MatrixXd& x);

struct FilterBankSpec {
    std::vector<std::pair<double, double>> bands_hz;  // (low, high) per sub-band
    std::vector<double> weights;                      // combination weight per sub-band
    BandPassDesign design;

    void validate(double sample_rate_hz) const;

    /// The b x 8 .. 90 Hz grid, b = 1..n_bands, with weights w(b) = b^-1.25 + 0.25.
    static FilterBankSpec harmonic_bands(std::size_t n_bands = 5, double high_hz = 90.0);
};

/// One band-pass filtered copy of the multichannel signal per sub-band.
std::vector<Eigen::MatrixXd> filter_bank_decompose(const Eigen::MatrixXd& x,
                                                   const FilterBankSpec& spec,
                                                   double sample_rate_hz);

/// Weighted sum of squares: score = sum_b w_b * rho_b^2.
double combine_subbands(std::span<const double> rho, std::span<const double> weights);

}  // namespace itr::ssvep
