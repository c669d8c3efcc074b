#include "itr/ssvep/pipeline.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "itr/ssvep/spatial.hpp"

namespace itr::ssvep {

double ConfusionCounts::accuracy() const {
    std::int64_t diag = 0, total = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            total += at(i, j);
            if (i == j) diag += at(i, j);
        }
    return static_cast<double>(diag) / static_cast<double>(total);
}

namespace {

// Pearson correlation; nullopt when either side has zero variance.
std::optional<double> pearson(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    Eigen::VectorXd uc = u.array() - u.mean();
    Eigen::VectorXd vc = v.array() - v.mean();
    double du = uc.norm(), dv = vc.norm();
    if (du <= 0.0 || dv <= 0.0) return std::nullopt;
    return uc.dot(vc) / (du * dv);
}

Eigen::VectorXd stack_projection(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w) {
    Eigen::MatrixXd proj = x.transpose() * w;  // samples x filters
    return Eigen::Map<Eigen::VectorXd>(proj.data(), proj.size());
}

}  // namespace

SpatialFilters train_filters(const std::vector<std::vector<std::vector<Eigen::MatrixXd>>>& bands,
                             const TiConfig& config) {
    if (bands.empty() || bands[0].empty())
        throw std::invalid_argument("train_filters: no training data");
    const std::size_t n_bands = bands.size();
    const std::size_t n_classes = bands[0].size();

    SpatialFilters f;
    f.n_classes = n_classes;
    f.weights.resize(n_bands);
    f.templates.resize(n_bands);
    for (std::size_t b = 0; b < n_bands; ++b) {
        f.weights[b].resize(n_classes);
        f.templates[b].resize(n_classes);
        for (std::size_t n = 0; n < n_classes; ++n) {
            const auto& trials = bands[b][n];
            if (config.method == TiMethod::trca) {
                TrcaResult r = trca_weights(trials);
                f.weights[b][n] = r.w;
                f.max_eigen_residual = std::max(f.max_eigen_residual, r.residual);
            } else {
                f.weights[b][n] = sscor_weights(trials).w_template;
            }
            Eigen::MatrixXd tmpl = trials[0];
            for (std::size_t h = 1; h < trials.size(); ++h) tmpl += trials[h];
            f.templates[b][n] = tmpl / static_cast<double>(trials.size());
        }
    }
    return f;
}

std::size_t classify(const std::vector<Eigen::MatrixXd>& test_bands,
                     const SpatialFilters& filters, const TiConfig& config) {
    const std::size_t n_bands = filters.weights.size();
    if (test_bands.size() != n_bands)
        throw std::invalid_argument("classify: band count mismatch");
    const std::size_t n_classes = filters.n_classes;

    // Ensemble mode concatenates all class filters into one matrix W and
    // correlates the stacked projections.
    std::vector<Eigen::MatrixXd> ensemble_w(n_bands);
    if (config.ensemble) {
        for (std::size_t b = 0; b < n_bands; ++b) {
            Eigen::MatrixXd w(filters.weights[b][0].size(), n_classes);
            for (std::size_t n = 0; n < n_classes; ++n)
                w.col(static_cast<long>(n)) = filters.weights[b][n];
            ensemble_w[b] = std::move(w);
        }
    }

    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_class = 0;
    bool any_valid = false;
    for (std::size_t n = 0; n < n_classes; ++n) {
        double score = 0.0;
        bool valid = false;
        for (std::size_t b = 0; b < n_bands; ++b) {
            std::optional<double> rho;
            if (config.ensemble) {
                rho = pearson(stack_projection(test_bands[b], ensemble_w[b]),
                              stack_projection(filters.templates[b][n], ensemble_w[b]));
            } else {
                const Eigen::VectorXd& w = filters.weights[b][n];
                rho = pearson(test_bands[b].transpose() * w,
                              filters.templates[b][n].transpose() * w);
            }
            if (rho) {
                score += config.bank.weights[b] * (*rho) * (*rho);
                valid = true;
            }
        }
        if (!valid) continue;  // zero-variance projections in every band: excluded
        if (!any_valid || score > best) {
            any_valid = true;
            best = score;
            best_class = n;
        }
    }
    if (!any_valid) throw std::runtime_error("classify: all classes had degenerate projections");
    return best_class;
}

ConfusionCounts evaluate_loto(const TrialDataset& dataset, const TiConfig& config) {
    const std::size_t n_classes = dataset.n_classes();
    const std::size_t n_trials = dataset.n_trials();
    if (n_trials < 3)
        throw std::invalid_argument("evaluate_loto: need at least 3 trials per class");
    config.bank.validate(dataset.sample_rate());

    const std::size_t n_bands = config.bank.bands_hz.size();
    const long lat = static_cast<long>(dataset.latency_samples());

    // Band-decompose every trial once, discarding pre-latency samples first.
    std::vector<std::vector<std::vector<Eigen::MatrixXd>>> filtered(
        n_bands, std::vector<std::vector<Eigen::MatrixXd>>(n_classes));
    for (std::size_t n = 0; n < n_classes; ++n) {
        for (std::size_t h = 0; h < n_trials; ++h) {
            const Eigen::MatrixXd& raw = dataset.trial(n, h);
            Eigen::MatrixXd win = raw.rightCols(raw.cols() - lat);
            auto bands = filter_bank_decompose(win, config.bank, dataset.sample_rate());
            for (std::size_t b = 0; b < n_bands; ++b)
                filtered[b][n].push_back(std::move(bands[b]));
        }
    }

    ConfusionCounts confusion;
    confusion.m = n_classes;
    confusion.counts.assign(n_classes * n_classes, 0);
    for (std::size_t hold = 0; hold < n_trials; ++hold) {
        std::vector<std::vector<std::vector<Eigen::MatrixXd>>> train(
            n_bands, std::vector<std::vector<Eigen::MatrixXd>>(n_classes));
        for (std::size_t b = 0; b < n_bands; ++b)
            for (std::size_t n = 0; n < n_classes; ++n)
                for (std::size_t h = 0; h < n_trials; ++h)
                    if (h != hold) train[b][n].push_back(filtered[b][n][h]);

        SpatialFilters filters = train_filters(train, config);
        confusion.max_eigen_residual =
            std::max(confusion.max_eigen_residual, filters.max_eigen_residual);

        for (std::size_t n = 0; n < n_classes; ++n) {
            std::vector<Eigen::MatrixXd> test;
            test.reserve(n_bands);
            for (std::size_t b = 0; b < n_bands; ++b) test.push_back(filtered[b][n][hold]);
            std::size_t predicted = classify(test, filters, config);
            ++confusion.at(n, predicted);
        }
    }
    return confusion;
}

}  // namespace itr::ssvep
