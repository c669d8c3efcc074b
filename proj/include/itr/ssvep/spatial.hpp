#pragma once

#include <Eigen/Dense>
#include <vector>

namespace itr::ssvep {

/// Inter-trial covariance matrix S of task-related component analysis,
/// computed via the identity sum_{h1 != h2} Cov = Cov(sum of trials) - sum of
/// per-trial Cov. Each trial is channels x samples.
Eigen::MatrixXd trca_intertrial_covariance(const std::vector<Eigen::MatrixXd>& trials);

struct TrcaResult {
    Eigen::VectorXd w;  // principal generalized eigenvector, w^T Q w = 1
    double lambda;
    double residual;  // ||S w - lambda Q w||_2
    bool regularized;
};

/// Principal generalized eigenvector of (S, Q): the spatial filter maximizing
/// inter-trial reproducibility. Q gets a 1e-6 * trace/N_c ridge when needed.
TrcaResult trca_weights(const std::vector<Eigen::MatrixXd>& trials);

struct SscorResult {
    Eigen::VectorXd w_template;             // template-space filter used for classification
    std::vector<Eigen::VectorXd> w_trials;  // per-trial filters
    double objective;
    std::size_t iterations;
    bool regularized;
};

/// Sum-of-squared-correlations filters by alternating maximization: the
/// template filter solves a generalized eigenproblem, each trial filter has a
/// closed form under its unit-variance constraint. Objective is nondecreasing
/// across sweeps; stops when the change drops below 1e-9.
SscorResult sscor_weights(const std::vector<Eigen::MatrixXd>& trials);

}  // namespace itr::ssvep
