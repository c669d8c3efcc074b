#pragma once

#include "itr/channel.hpp"
#include "itr/distribution.hpp"

namespace itr {

struct StationaryOptions {
    double smoothing = 0.0;      // mix weight toward the uniform matrix (0 = strict)
    double residual_tol = 1e-12;  // on ||phi P - phi||_inf
    std::size_t max_iter = 200000;
};

/// Stationary distribution of the Markov chain with transition matrix P,
/// by power iteration on (P + I)/2 transposed (same fixed point, always
/// aperiodic). Strict mode (no smoothing) rejects reducible chains.
Distribution stationary_distribution(const ChannelMatrix& channel,
                                     const StationaryOptions& opts = {});

struct AsymmetryReport {
    double delta_asm;         // largest singular value of (Gamma - Gamma^T)/2
    Distribution stationary;  // phi
    bool smoothed;            // 1e-8 uniform mix was applied (zeros in P)
};

/// Skewed-Laplacian asymmetry score: Gamma = Phi^{1/2} (I - P) Phi^{-1/2},
/// delta_asm = sigma_max((Gamma - Gamma^T)/2). Channels with zero entries are
/// smoothed with a 1e-8 uniform mix before the stationary solve; the report
/// says so.
AsymmetryReport asymmetry_report(const ChannelMatrix& channel);

double asymmetry_score(const ChannelMatrix& channel);

/// (proposed - conventional) / conventional. Throws if conventional <= 0.
double delta_itr(double itr_proposed, double itr_conventional);

}  // namespace itr
