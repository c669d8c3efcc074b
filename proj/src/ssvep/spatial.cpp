#include "itr/ssvep/spatial.hpp"

#include <stdexcept>

namespace itr::ssvep {

namespace {

constexpr double kRidge = 1e-6;

// Centered cross-covariance, (samples - 1) normalization.
Eigen::MatrixXd covariance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    Eigen::MatrixXd xc = x.colwise() - x.rowwise().mean();
    Eigen::MatrixXd yc = y.colwise() - y.rowwise().mean();
    return xc * yc.transpose() / static_cast<double>(x.cols() - 1);
}

bool add_ridge_if_needed(Eigen::MatrixXd& q) {
    // Short windows make sample covariances rank-deficient; a small
    // trace-scaled ridge keeps the Cholesky inside the solvers alive.
    Eigen::LLT<Eigen::MatrixXd> llt(q);
    q += kRidge * q.trace() / static_cast<double>(q.rows()) *
         Eigen::MatrixXd::Identity(q.rows(), q.cols());
    return llt.info() != Eigen::Success;
}

void check_trials(const std::vector<Eigen::MatrixXd>& trials, const char* who) {
    if (trials.size() < 2)
        throw std::invalid_argument(std::string(who) + ": no cross-trial pairs (need >= 2 trials)");
    for (const auto& t : trials)
        if (t.rows() != trials[0].rows() || t.cols() != trials[0].cols())
            throw std::invalid_argument(std::string(who) + ": inconsistent trial shapes");
    if (trials[0].cols() < 2)
        throw std::invalid_argument(std::string(who) + ": trials too short");
}

}  // namespace

Eigen::MatrixXd trca_intertrial_covariance(const std::vector<Eigen::MatrixXd>& trials) {
    check_trials(trials, "trca_intertrial_covariance");
    // sum_{h1 != h2} Cov(x^{(h1)}, x^{(h2)}) = Cov(sum_h x^{(h)}) - sum_h Cov(x^{(h)})
    Eigen::MatrixXd total = trials[0];
    for (std::size_t h = 1; h < trials.size(); ++h) total += trials[h];
    Eigen::MatrixXd s = covariance(total, total);
    for (const auto& t : trials) s -= covariance(t, t);
    return 0.5 * (s + s.transpose());
}

TrcaResult trca_weights(const std::vector<Eigen::MatrixXd>& trials) {
    check_trials(trials, "trca_weights");
    Eigen::MatrixXd s = trca_intertrial_covariance(trials);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(trials[0].rows(), trials[0].rows());
    for (const auto& t : trials) q += covariance(t, t);
    bool regularized = add_ridge_if_needed(q);

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, q);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("trca_weights: generalized eigensolver failed");
    long last = solver.eigenvalues().size() - 1;
    Eigen::VectorXd w = solver.eigenvectors().col(last);  // normalized so w^T Q w = 1
    double lambda = solver.eigenvalues()(last);
    double residual = (s * w - lambda * q * w).norm();
    return TrcaResult{w, lambda, residual, regularized};
}

SscorResult sscor_weights(const std::vector<Eigen::MatrixXd>& trials) {
    check_trials(trials, "sscor_weights");
    const std::size_t nt = trials.size();
    const long nc = trials[0].rows();

    Eigen::MatrixXd tmpl = trials[0];
    for (std::size_t h = 1; h < nt; ++h) tmpl += trials[h];
    tmpl /= static_cast<double>(nt);

    Eigen::MatrixXd cxx = covariance(tmpl, tmpl);
    bool regularized = add_ridge_if_needed(cxx);
    std::vector<Eigen::MatrixXd> cross(nt), cii(nt);
    std::vector<Eigen::LDLT<Eigen::MatrixXd>> cii_solver(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        cross[i] = covariance(tmpl, trials[i]);
        cii[i] = covariance(trials[i], trials[i]);
        regularized |= add_ridge_if_needed(cii[i]);
        cii_solver[i].compute(cii[i]);
    }

    // Start from the flat direction, normalized to w^T Cxx w = 1.
    Eigen::VectorXd w_x = Eigen::VectorXd::Ones(nc);
    w_x /= std::sqrt(w_x.dot(cxx * w_x));

    std::vector<Eigen::VectorXd> w_i(nt, Eigen::VectorXd::Zero(nc));
    double objective = -1.0;
    std::size_t sweep = 0;
    for (sweep = 1; sweep <= 200; ++sweep) {
        // Trial filters: maximize (w_x^T M_i w_i)^2 under w_i^T C_ii w_i = 1
        // -> w_i proportional to C_ii^{-1} M_i^T w_x.
        for (std::size_t i = 0; i < nt; ++i) {
            Eigen::VectorXd v = cross[i].transpose() * w_x;
            Eigen::VectorXd u = cii_solver[i].solve(v);
            double denom = std::sqrt(v.dot(u));
            w_i[i] = denom > 0.0 ? Eigen::VectorXd(u / denom) : u;
        }
        // Template filter: principal generalized eigenvector of
        // (sum_i (M_i w_i)(M_i w_i)^T, Cxx).
        Eigen::MatrixXd outer = Eigen::MatrixXd::Zero(nc, nc);
        for (std::size_t i = 0; i < nt; ++i) {
            Eigen::VectorXd mv = cross[i] * w_i[i];
            outer += mv * mv.transpose();
        }
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(outer, cxx);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("sscor_weights: generalized eigensolver failed");
        w_x = solver.eigenvectors().col(nc - 1);

        double obj = 0.0;
        for (std::size_t i = 0; i < nt; ++i) {
            double c = w_x.dot(cross[i] * w_i[i]);
            obj += c * c;
        }
        if (obj < objective - 1e-12)
            throw std::runtime_error("sscor_weights: objective decreased (numerical failure)");
        if (obj - objective < 1e-9) {
            objective = obj;
            break;
        }
        objective = obj;
    }
    return SscorResult{w_x, w_i, objective, sweep, regularized};
}

}  // namespace itr::ssvep
