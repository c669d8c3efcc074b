#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "itr/ssvep/filterbank.hpp"
#include "itr/ssvep/synth.hpp"

namespace itr::ssvep {

enum class TiMethod { trca, sscor };

struct TiConfig {
    TiMethod method = TiMethod::trca;
    bool ensemble = true;
    FilterBankSpec bank = FilterBankSpec::harmonic_bands();
};

/// Per-band, per-class spatial filters and training templates.
struct SpatialFilters {
    std::size_t n_classes = 0;
    std::vector<std::vector<Eigen::VectorXd>> weights;     // [band][class]
    std::vector<std::vector<Eigen::MatrixXd>> templates;   // [band][class] (Nc x T)
    double max_eigen_residual = 0.0;  // worst ||Sw - lambda Q w|| across TRCA solves
};

/// Trains filters and templates from band-decomposed trials
/// (bands[band][class][trial], channels x samples).
SpatialFilters train_filters(const std::vector<std::vector<std::vector<Eigen::MatrixXd>>>& bands,
                             const TiConfig& config);

/// Pearson-correlation decision rule over band-decomposed test data:
/// tau = argmax_n combined score of rho(X^T w_n, template_n^T w_n) per band.
/// Ensemble mode stacks projections through all class filters. Classes whose
/// projections have zero variance in every band are excluded. Ties break to
/// the lowest class index.
std::size_t classify(const std::vector<Eigen::MatrixXd>& test_bands,
                     const SpatialFilters& filters, const TiConfig& config);

struct ConfusionCounts {
    std::size_t m = 0;
    std::vector<std::int64_t> counts;  // row-major, rows = true class
    double max_eigen_residual = 0.0;

    std::int64_t& at(std::size_t i, std::size_t j) { return counts[i * m + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return counts[i * m + j]; }
    double accuracy() const;
};

/// Leave-one-trial-out evaluation: for each held-out trial index, trains on
/// the rest and classifies every class's held-out trial. Pre-latency samples
/// are discarded before filtering. Row sums equal the trial count.
ConfusionCounts evaluate_loto(const TrialDataset& dataset, const TiConfig& config);

}  // namespace itr::ssvep
