#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "itr/channel.hpp"
#include "itr/distribution.hpp"

namespace itr {

/// Accuracy p on the diagonal, errors split equally over the other M-1 classes.
ChannelMatrix balanced_matrix(double accuracy, std::size_t m);
/// Per-class diagonal accuracies (row i gets accuracy[i]).
ChannelMatrix balanced_matrix(const std::vector<double>& per_class_accuracy, std::size_t m);

struct FanoErrorBound {
    double bound;     // lower bound on P(Y != X) at the given input
    bool tight_form;  // false when only the weak (H(Y|X)-1)/log2(M) form applied (M = 2)
};

/// Largest valid lower bound on the identification error from Fano's
/// inequality: the implicit form eps >= (H(Y|X) - h(eps)) / log2(M-1) solved
/// by bisection for M >= 3, and the weak form (H(Y) - I - 1)/log2(M) always.
FanoErrorBound fano_error_lower_bound(const ChannelMatrix& channel, const Distribution& px);

/// H(Y|X) <= h(eps) + eps log2(M-1); reduces to h(eps) at M = 2.
double fano_conditional_entropy_bound(double eps, std::size_t m);

struct AccuracyTarget {
    double accuracy;  // A; the target error is eps = 1 - A
};

struct DesignResult {
    ChannelMatrix channel;  // P*
    Distribution input;     // P*_X, the BA-optimal input of P*
    double capacity;        // bits
    double achieved_error;  // 1 - sum_i input_i p_ii
    double fano_bound;      // h(eps) + eps log2(M-1) at the achieved error
    int restarts_used;
    bool converged;  // a candidate satisfying |achieved - target| <= 1e-4 was found
};

/// Joint optimization of the transition matrix and input distribution under an
/// average-accuracy target: alternates projected-gradient ascent on P (rows on
/// the simplex, diagonal on the accuracy hyperplane, Dykstra projection) with
/// Blahut-Arimoto on the input, keeping the best pair whose BA-optimal input
/// meets the accuracy target. Restarts draw independent random channels.
DesignResult joint_optimize(std::size_t m, AccuracyTarget target, int restarts,
                            std::uint64_t seed);

/// The capacity-maximizing asymmetric channel (2(1-A), 0) and the
/// capacity-minimizing symmetric channel (1-A, 1-A) at average accuracy A
/// under uniform input. Requires 0.5 < A <= 1.
std::pair<ChannelMatrix, ChannelMatrix> binary_extremal_channels(double accuracy);

}  // namespace itr
