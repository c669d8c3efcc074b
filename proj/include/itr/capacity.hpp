#pragma once

#include <cstddef>
#include <optional>

#include "itr/channel.hpp"
#include "itr/distribution.hpp"

namespace itr {

struct BAConfig {
    double gamma_th = 1e-9;  // stopping threshold, bits
    std::size_t max_iter = 10000;
    std::optional<Distribution> initial_input;  // default: uniform
};

struct CapacityResult {
    double capacity;  // bits/symbol, I(X;Y) at optimal_input
    Distribution optimal_input;
    std::size_t iterations;
    double gap;  // final value of max_i D_i - sum_i px_i D_i; bounds |C_true - capacity|
    bool converged;
};

/// Blahut-Arimoto iteration for the capacity of a discrete memoryless channel.
/// Zero output columns are dropped before iterating (they carry no information
/// and would make the KL terms 0/0). Non-convergence within max_iter returns
/// the best iterate with converged = false.
CapacityResult blahut_arimoto(const ChannelMatrix& channel, const BAConfig& cfg = {});

struct BinaryCapacityResult {
    double capacity;    // bits
    double optimal_px;  // P_X(x1) achieving it
};

/// Closed-form capacity of the binary channel [[1-p12,p12],[p21,1-p21]].
/// The singular case p12 + p21 = 1 (identical rows) returns capacity 0 with
/// optimal_px = 0.5 by convention.
BinaryCapacityResult binary_capacity(double p12, double p21);

/// The input probability P_X(x1) maximizing mutual information, in closed form.
double binary_optimal_input(double p12, double p21);

struct CapacityItr {
    double bits_per_min;  // (60/T) * capacity
    bool converged;
};

CapacityItr capacity_itr(const ChannelMatrix& channel, double seconds, const BAConfig& cfg = {});

/// I(X;Y) at a fixed input distribution (thin alias over info_summary).
double mutual_information_fixed_input(const ChannelMatrix& channel, const Distribution& px);

}  // namespace itr
