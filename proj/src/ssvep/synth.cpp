#include "itr/ssvep/synth.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace itr::ssvep {

void StimulusTable::validate() const {
    if (frequencies_hz.empty())
        throw std::invalid_argument("StimulusTable: no stimuli");
    if (frequencies_hz.size() != phases_rad.size())
        throw std::invalid_argument("StimulusTable: frequency/phase length mismatch");
    for (double f : frequencies_hz)
        if (!(f > 0.0)) throw std::invalid_argument("StimulusTable: frequencies must be positive");
}

StimulusTable speller_grid(std::size_t n) {
    if (n == 0 || n > 40)
        throw std::invalid_argument("speller_grid: n must lie in 1..40");
    StimulusTable t;
    for (std::size_t i = 0; i < n; ++i) {
        t.frequencies_hz.push_back(8.0 + 0.2 * static_cast<double>(i));
        t.phases_rad.push_back(std::fmod(0.5 * std::numbers::pi * static_cast<double>(i),
                                         2.0 * std::numbers::pi));
    }
    return t;
}

namespace {

// splitmix64: seed scrambler for per-(class, trial) streams so generation is
// order-independent and reproducible.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    double uniform() {  // (0, 1)
        state_ = splitmix64(state_ + 0x9e3779b97f4a7c15ULL);
        return (static_cast<double>(state_ >> 11) + 0.5) * 0x1.0p-53;
    }

    double gaussian() {  // Box-Muller, one value per call
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

   private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

TrialDataset::TrialDataset(StimulusTable stimuli, SynthConfig config,
                           std::vector<std::vector<Eigen::MatrixXd>> data)
    : stimuli_(std::move(stimuli)), config_(config), data_(std::move(data)) {
    stimuli_.validate();
    if (data_.size() != stimuli_.size())
        throw std::invalid_argument("TrialDataset: class count mismatch");
    if (!data_.empty() && data_[0].size() < 2)
        throw std::invalid_argument("TrialDataset: need at least 2 trials per class");
}

std::size_t TrialDataset::latency_samples() const {
    return static_cast<std::size_t>(std::lround(config_.latency_s * config_.sample_rate_hz));
}

TrialDataset synth_ssvep(const StimulusTable& stimuli, const SynthConfig& config,
                         std::uint64_t seed) {
    stimuli.validate();
    if (config.n_channels < 1 || config.n_trials < 2)
        throw std::invalid_argument("synth_ssvep: need >= 1 channel and >= 2 trials");
    if (!(config.window_s > 0.0) || !(config.sample_rate_hz > 0.0) || config.harmonics < 1)
        throw std::invalid_argument("synth_ssvep: window, sample rate, harmonics must be positive");
    if (config.latency_s < 0.0)
        throw std::invalid_argument("synth_ssvep: latency must be nonnegative");
    const double nyquist = config.sample_rate_hz / 2.0;
    for (double f : stimuli.frequencies_hz)
        if (static_cast<double>(config.harmonics) * f >= nyquist)
            throw std::invalid_argument("synth_ssvep: harmonic above Nyquist for stimulus at " +
                                        std::to_string(f) + " Hz");

    const std::size_t nf = stimuli.size();
    const std::size_t nc = config.n_channels;
    const std::size_t n_lat =
        static_cast<std::size_t>(std::lround(config.latency_s * config.sample_rate_hz));
    const std::size_t n_win =
        static_cast<std::size_t>(std::lround(config.window_s * config.sample_rate_hz));
    const std::size_t n_total = n_lat + n_win;

    // Channel mixing gains for the source and the noise, one draw per dataset.
    Rng gains_rng(splitmix64(seed) ^ 0x5ca1ab1e5ca1ab1eULL);
    Eigen::VectorXd a(nc), b(nc);
    for (std::size_t j = 0; j < nc; ++j) a(static_cast<long>(j)) = 0.5 + gains_rng.uniform();
    for (std::size_t j = 0; j < nc; ++j) b(static_cast<long>(j)) = 0.5 + gains_rng.uniform();

    // Task-related components per class, stimulus onset delayed by the latency.
    std::vector<Eigen::VectorXd> protos(nf);
    double signal_var = 0.0;
    for (std::size_t n = 0; n < nf; ++n) {
        Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<long>(n_win));
        double f = stimuli.frequencies_hz[n], ph = stimuli.phases_rad[n];
        for (std::size_t k = 1; k <= config.harmonics; ++k) {
            double amp = 1.0 / static_cast<double>(k);
            for (std::size_t t = 0; t < n_win; ++t) {
                double time = static_cast<double>(t) / config.sample_rate_hz;
                s(static_cast<long>(t)) +=
                    amp * std::sin(2.0 * std::numbers::pi * static_cast<double>(k) * f * time +
                                   static_cast<double>(k) * ph);
            }
        }
        signal_var += s.squaredNorm() / static_cast<double>(n_win);
        protos[n] = s;
    }
    signal_var /= static_cast<double>(nf);

    const double p_signal = a.squaredNorm() / static_cast<double>(nc) * signal_var;
    const double p_noise_unit = b.squaredNorm() / static_cast<double>(nc);
    const double noise_scale =
        std::sqrt(p_signal / p_noise_unit * std::pow(10.0, -config.snr_db / 10.0));

    std::vector<std::vector<Eigen::MatrixXd>> data(nf);
    for (std::size_t n = 0; n < nf; ++n) {
        data[n].reserve(config.n_trials);
        for (std::size_t h = 0; h < config.n_trials; ++h) {
            Rng rng(splitmix64(splitmix64(seed ^ (0xc1a55ULL + n)) + h));
            Eigen::MatrixXd x(static_cast<long>(nc), static_cast<long>(n_total));
            for (std::size_t j = 0; j < nc; ++j) {
                double gn = b(static_cast<long>(j)) * noise_scale;
                for (std::size_t t = 0; t < n_total; ++t)
                    x(static_cast<long>(j), static_cast<long>(t)) = gn * rng.gaussian();
                for (std::size_t t = 0; t < n_win; ++t)
                    x(static_cast<long>(j), static_cast<long>(n_lat + t)) +=
                        a(static_cast<long>(j)) * protos[n](static_cast<long>(t));
            }
            data[n].push_back(std::move(x));
        }
    }
    return TrialDataset(stimuli, config, std::move(data));
}

// --- container ------------------------------------------------------------
// Layout: magic "SSVD0001", then u64 dims {classes, trials, channels, samples,
// harmonics}, f64 {sample_rate, window, latency, snr_db}, stimulus table
// (f64 freq, f64 phase per class), then samples as f64 in
// (class, trial, channel, sample) order, little endian.

namespace {
constexpr char kMagic[8] = {'S', 'S', 'V', 'D', '0', '0', '0', '1'};

template <typename T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("TrialDataset::load: truncated file");
    return v;
}
}  // namespace

void TrialDataset::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("TrialDataset::save: cannot open " + path);
    os.write(kMagic, sizeof(kMagic));
    const std::size_t samples = static_cast<std::size_t>(data_[0][0].cols());
    for (std::uint64_t v : {static_cast<std::uint64_t>(n_classes()),
                            static_cast<std::uint64_t>(n_trials()),
                            static_cast<std::uint64_t>(n_channels()),
                            static_cast<std::uint64_t>(samples),
                            static_cast<std::uint64_t>(config_.harmonics)})
        put(os, v);
    for (double v : {config_.sample_rate_hz, config_.window_s, config_.latency_s, config_.snr_db})
        put(os, v);
    for (std::size_t n = 0; n < n_classes(); ++n) {
        put(os, stimuli_.frequencies_hz[n]);
        put(os, stimuli_.phases_rad[n]);
    }
    for (const auto& cls : data_)
        for (const auto& tr : cls)
            for (long j = 0; j < tr.rows(); ++j)
                for (long t = 0; t < tr.cols(); ++t) put(os, tr(j, t));
    if (!os) throw std::runtime_error("TrialDataset::save: write failed for " + path);
}

TrialDataset TrialDataset::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("TrialDataset::load: cannot open " + path);
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("TrialDataset::load: not an SSVD0001 container: " + path);
    auto classes = get<std::uint64_t>(is);
    auto trials = get<std::uint64_t>(is);
    auto channels = get<std::uint64_t>(is);
    auto samples = get<std::uint64_t>(is);
    auto harmonics = get<std::uint64_t>(is);
    SynthConfig cfg;
    cfg.n_channels = channels;
    cfg.n_trials = trials;
    cfg.harmonics = harmonics;
    cfg.sample_rate_hz = get<double>(is);
    cfg.window_s = get<double>(is);
    cfg.latency_s = get<double>(is);
    cfg.snr_db = get<double>(is);
    StimulusTable stim;
    for (std::uint64_t n = 0; n < classes; ++n) {
        stim.frequencies_hz.push_back(get<double>(is));
        stim.phases_rad.push_back(get<double>(is));
    }
    std::vector<std::vector<Eigen::MatrixXd>> data(classes);
    for (std::uint64_t n = 0; n < classes; ++n) {
        data[n].reserve(trials);
        for (std::uint64_t h = 0; h < trials; ++h) {
            Eigen::MatrixXd x(static_cast<long>(channels), static_cast<long>(samples));
            for (long j = 0; j < x.rows(); ++j)
                for (long t = 0; t < x.cols(); ++t) x(j, t) = get<double>(is);
            data[n].push_back(std::move(x));
        }
    }
    return TrialDataset(std::move(stim), cfg, std::move(data));
}

}  // namespace itr::ssvep
