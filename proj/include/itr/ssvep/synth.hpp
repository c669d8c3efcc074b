#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace itr::ssvep {

struct StimulusTable {
    std::vector<double> frequencies_hz;
    std::vector<double> phases_rad;

    std::size_t size() const { return frequencies_hz.size(); }
    void validate() const;
};

/// First n entries of the 40-target speller grid: frequencies 8:0.2:15.8 Hz,
/// phases 0:0.5pi, both proportional to the stimulus index.
StimulusTable speller_grid(std::size_t n);

struct SynthConfig {
    std::size_t n_channels = 4;
    std::size_t n_trials = 6;
    double window_s = 1.0;
    double sample_rate_hz = 250.0;
    double snr_db = 0.0;
    std::size_t harmonics = 3;
    double latency_s = 0.13;  // visual-pathway delay; trials carry latency + window samples
};

/// Multichannel synthetic trials indexed by (class, trial); each trial is an
/// N_c x T matrix with T = round((latency + window) * fs) samples.
class TrialDataset {
   public:
    TrialDataset(StimulusTable stimuli, SynthConfig config,
                 std::vector<std::vector<Eigen::MatrixXd>> data);

    std::size_t n_classes() const { return data_.size(); }
    std::size_t n_trials() const { return data_.empty() ? 0 : data_[0].size(); }
    std::size_t n_channels() const { return config_.n_channels; }
    double sample_rate() const { return config_.sample_rate_hz; }
    std::size_t latency_samples() const;

    const Eigen::MatrixXd& trial(std::size_t cls, std::size_t tr) const {
        return data_[cls][tr];
    }
    const StimulusTable& stimuli() const { return stimuli_; }
    const SynthConfig& config() const { return config_; }

    /// Self-describing binary container (dims, rates, stimulus table, float64
    /// samples); layout documented in the README.
    void save(const std::string& path) const;
    static TrialDataset load(const std::string& path);

   private:
    StimulusTable stimuli_;
    SynthConfig config_;
    std::vector<std::vector<Eigen::MatrixXd>> data_;  // [class][trial] (Nc x T)
};

/// Sinusoid-plus-noise generator following the linear model x_j = a_j s + b_j n_j:
/// per class, s(t) = sum_k alpha_k sin(2 pi k f t + k phi) with alpha_k = 1/k,
/// mixed by random channel gains; independent per-channel Gaussian noise scaled
/// to the requested SNR (channel-averaged powers). Deterministic per seed.
TrialDataset synth_ssvep(const StimulusTable& stimuli, const SynthConfig& config,
                         std::uint64_t seed);

}  // namespace itr::ssvep
