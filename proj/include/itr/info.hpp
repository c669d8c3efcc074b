#pragma once

#include "itr/channel.hpp"
#include "itr/distribution.hpp"

namespace itr {

/// Shannon entropy in bits, with the 0*log(0) = 0 convention.
double entropy(const Distribution& d);

/// h(x) = -x log2 x - (1-x) log2 (1-x). Throws std::domain_error outside [0,1].
double binary_entropy(double x);

/// D(p || q) in bits. Requires absolute continuity: q_j = 0 implies p_j = 0.
double kl_divergence(const Distribution& p, const Distribution& q);

/// P_Y(y_j) = sum_i P_X(x_i) p_{i,j}.
Distribution output_distribution(const ChannelMatrix& channel, const Distribution& px);

struct InfoSummary {
    double input_entropy;        // H(X), bits
    double output_entropy;       // H(Y), bits
    double conditional_entropy;  // H(Y|X), bits
    double mutual_information;   // I(X;Y) = H(Y) - H(Y|X), bits
};

InfoSummary info_summary(const ChannelMatrix& channel, const Distribution& px);

struct ConventionalItr {
    double bits_per_trial;
    double bits_per_min;
    bool below_chance;  // accuracy < 1/M: the value is emitted (negative) but flagged
};

/// The symmetric-channel ITR formula:
/// log2(M) + P log2 P + (1-P) log2((1-P)/(M-1)), scaled by 60/T for bits/min.
ConventionalItr conventional_itr(std::size_t m, double accuracy, double seconds);

}  // namespace itr
