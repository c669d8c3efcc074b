#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "itr/channel.hpp"

namespace itr {

struct ConfusionRecord {
    std::size_t m = 0;
    std::vector<std::int64_t> counts;  // row-major M x M, rows = true class
    std::string subject;
    double window_s = 0.0;  // observation window (without gaze shift)
    std::string method;

    std::int64_t at(std::size_t i, std::size_t j) const { return counts[i * m + j]; }
    std::int64_t total() const;
    double accuracy() const;  // trace / total
};

/// Row-normalizes the counts into a transition-matrix estimate. A row with no
/// trials aborts with an error naming the class; add-alpha smoothing is only
/// applied when alpha > 0 is passed explicitly.
ChannelMatrix normalize_confusion(const ConfusionRecord& record, double alpha = 0.0);

/// Elementwise sum of counts. Records must agree in M, window length and method.
ConfusionRecord pool_confusions(std::span<const ConfusionRecord> records);

enum class ItrMode { conventional, capacity };

/// One bits/min value per record; T_total = window_s + gaze_s per trial.
std::vector<double> per_subject_itr(std::span<const ConfusionRecord> records, ItrMode mode,
                                    double gaze_s = 0.0);

enum class Tail { two_sided, right };

struct TTestResult {
    double t;
    double p;
    double critical_95;  // at the requested tail
    std::size_t dof;
};

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, Tail tail);

struct FTestResult {
    double f;        // var(a)/var(b)
    double p;        // two-tailed
    double p_lower;  // P(F' <= f)
    double p_upper;  // P(F' >= f)
    std::size_t dof1, dof2;
};

FTestResult variance_f_test(std::span<const double> a, std::span<const double> b);

enum class RegressionModel { linear, logarithmic };

struct RegressionFit {
    RegressionModel model;
    double slope;      // on x (linear) or ln x (logarithmic)
    double intercept;
    double r_squared;
};

RegressionFit fit_regression(std::span<const double> x, std::span<const double> y,
                             RegressionModel model);

// Distribution-function kernels (exposed for the statistics oracles).
double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double dof);
double f_distribution_cdf(double x, double d1, double d2);

}  // namespace itr
