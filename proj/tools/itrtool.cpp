// Command-line front end: capacity | itr | design | simulate | evaluate.
// Exit codes: 0 success, 1 non-convergence (results still emitted), 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "itr/asymmetry.hpp"
#include "itr/capacity.hpp"
#include "itr/design.hpp"
#include "itr/info.hpp"
#include "itr/io/matrix_io.hpp"
#include "itr/ssvep/pipeline.hpp"
#include "itr/ssvep/synth.hpp"
#include "itr/stats.hpp"

namespace {

using itr::io::format_double;

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string format = "table";  // table | json
};

void print_distribution(const itr::Distribution& d, std::ostream& os) {
    os << "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) os << ", ";
        os << format_double(d[i], 6);
    }
    os << ")";
}

int run_capacity(const GlobalOpts& g, const std::string& matrix_path, double bsc, double bec,
                 std::vector<double> binary, double gamma_th, std::size_t max_iter) {
    std::optional<itr::ChannelMatrix> channel;
    if (!matrix_path.empty()) channel = itr::io::read_matrix_csv(matrix_path);
    if (bsc >= 0) channel = itr::ChannelMatrix::bsc(bsc);
    if (bec >= 0) channel = itr::ChannelMatrix::bec(bec);
    if (!binary.empty()) {
        if (binary.size() != 2) throw std::runtime_error("--binary needs exactly p12 p21");
        channel = itr::ChannelMatrix::binary(binary[0], binary[1]);
    }
    if (!channel) throw std::runtime_error("capacity: give one of --matrix/--bsc/--bec/--binary");

    itr::BAConfig cfg;
    cfg.gamma_th = gamma_th;
    cfg.max_iter = max_iter;
    itr::CapacityResult r = itr::blahut_arimoto(*channel, cfg);

    if (g.format == "json") {
        nlohmann::json j;
        j["capacity_bits"] = r.capacity;
        j["optimal_input"] = r.optimal_input.probs();
        j["iterations"] = r.iterations;
        j["gap_bits"] = r.gap;
        j["converged"] = r.converged;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "capacity        " << format_double(r.capacity, 6) << " bits/symbol\n";
        std::cout << "optimal input   ";
        print_distribution(r.optimal_input, std::cout);
        std::cout << "\niterations      " << r.iterations << "\n";
        std::cout << "stopping gap    " << format_double(r.gap, 12) << " bits\n";
        if (!r.converged) std::cout << "WARNING: not converged within max-iter\n";
    }
    return r.converged ? 0 : 1;
}

int run_itr(const GlobalOpts& g, const std::vector<std::string>& files, double window,
            double gaze, bool pooled, double alpha) {
    std::vector<itr::ConfusionRecord> records;
    for (const auto& f : files) {
        itr::ConfusionRecord rec = itr::io::read_confusion_any(f);
        if (rec.window_s <= 0) rec.window_s = window;
        if (rec.window_s <= 0)
            throw std::runtime_error(f + ": window length unknown; pass --window");
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw std::runtime_error("itr: no confusion files given");
    if (pooled && records.size() > 1) {
        records = {itr::pool_confusions(records)};
    }

    bool all_converged = true;
    nlohmann::json rows = nlohmann::json::array();
    if (g.format == "table") {
        std::cout << "# T_total = window + gaze, gaze = " << format_double(gaze, 3) << " s\n";
        if (alpha > 0)
            std::cout << "# pseudo-count smoothing alpha = " << format_double(alpha, 3) << "\n";
        std::printf("%-18s %8s %12s %14s %12s %10s %10s\n", "subject", "T_total",
                    "conventional", "balanced+opt", "asym+opt", "delta_asm", "delta_itr");
    }
    for (const auto& rec : records) {
        double t_total = rec.window_s + gaze;
        itr::ChannelMatrix p = itr::normalize_confusion(rec, alpha);
        double conv = itr::conventional_itr(rec.m, rec.accuracy(), t_total).bits_per_min;

        // Same aggregate accuracy, error mass spread evenly: the channel the
        // conventional formula implicitly assumes, scored by BA.
        itr::ChannelMatrix balanced = itr::balanced_matrix(rec.accuracy(), rec.m);
        itr::CapacityItr bal = itr::capacity_itr(balanced, t_total);
        itr::CapacityItr asym = itr::capacity_itr(p, t_total);
        all_converged = all_converged && bal.converged && asym.converged;

        double dasm = itr::asymmetry_score(p);
        double ditr = conv > 0 ? itr::delta_itr(asym.bits_per_min, conv)
                               : std::numeric_limits<double>::quiet_NaN();
        if (g.format == "json") {
            nlohmann::json row;
            row["subject"] = rec.subject;
            if (alpha > 0) row["smoothing_alpha"] = alpha;
            row["t_total_s"] = t_total;
            row["conventional_bpm"] = conv;
            row["balanced_optimal_bpm"] = bal.bits_per_min;
            row["asym_optimal_bpm"] = asym.bits_per_min;
            row["delta_asm"] = dasm;
            row["delta_itr"] = ditr;
            rows.push_back(row);
        } else {
            std::printf("%-18s %8s %12s %14s %12s %10s %10s\n", rec.subject.c_str(),
                        format_double(t_total, 3).c_str(), format_double(conv, 3).c_str(),
                        format_double(bal.bits_per_min, 3).c_str(),
                        format_double(asym.bits_per_min, 3).c_str(),
                        format_double(dasm, 5).c_str(), format_double(ditr, 5).c_str());
        }
    }
    if (g.format == "json") std::cout << rows.dump(2) << "\n";
    return all_converged ? 0 : 1;
}

int run_design(const GlobalOpts& g, std::size_t m, std::vector<double> targets, int restarts,
               const std::string& save_channel) {
    if (targets.empty()) targets = {0.99, 0.95, 0.9, 0.85, 0.8, 0.75};
    std::vector<itr::DesignResult> results;
    results.reserve(targets.size());
    bool all_converged = true;
    for (double a : targets) {
        results.push_back(itr::joint_optimize(m, itr::AccuracyTarget{a}, restarts, g.seed));
        all_converged = all_converged && results.back().converged;
    }
    if (!save_channel.empty())
        itr::io::write_matrix_csv(save_channel, results.front().channel);
    if (g.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (std::size_t i = 0; i < targets.size(); ++i) {
            nlohmann::json row;
            row["target_accuracy"] = targets[i];
            row["capacity_bits"] = results[i].capacity;
            double hyx =
                itr::info_summary(results[i].channel, results[i].input).conditional_entropy;
            row["conditional_entropy_bits"] = hyx;
            row["fano_bound_bits"] = results[i].fano_bound;
            row["achieved_error"] = results[i].achieved_error;
            row["optimal_input"] = results[i].input.probs();
            row["channel"] = results[i].channel.data();
            row["converged"] = results[i].converged;
            j.push_back(row);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%-22s", "Avg. Accuracy Target");
        for (double a : targets) std::printf(" %9s", format_double(a, 2).c_str());
        std::printf("\n%-22s", "Capacity");
        for (const auto& r : results) std::printf(" %9s", format_double(r.capacity, 4).c_str());
        std::printf("\n%-22s", "Conditional Entropy");
        for (const auto& r : results) {
            double hyx = itr::info_summary(r.channel, r.input).conditional_entropy;
            std::printf(" %9s", format_double(hyx, 4).c_str());
        }
        std::printf("\n%-22s", "Fano's Bound");
        for (const auto& r : results) std::printf(" %9s", format_double(r.fano_bound, 4).c_str());
        std::printf("\n");
        if (!all_converged) std::cout << "WARNING: some targets did not converge\n";
    }
    return all_converged ? 0 : 1;
}

itr::ssvep::TiConfig make_ti_config(const std::string& method, bool no_ensemble,
                                    std::size_t bands) {
    itr::ssvep::TiConfig cfg;
    if (method == "trca")
        cfg.method = itr::ssvep::TiMethod::trca;
    else if (method == "sscor")
        cfg.method = itr::ssvep::TiMethod::sscor;
    else
        throw std::runtime_error("unknown method '" + method + "' (trca|sscor)");
    cfg.ensemble = !no_ensemble;
    cfg.bank = itr::ssvep::FilterBankSpec::harmonic_bands(bands);
    return cfg;
}

itr::ConfusionRecord to_record(const itr::ssvep::ConfusionCounts& c, const std::string& subject,
                               double window, const std::string& method, bool ensemble) {
    itr::ConfusionRecord rec;
    rec.m = c.m;
    rec.counts = c.counts;
    rec.subject = subject;
    rec.window_s = window;
    rec.method = method + (ensemble ? "-ensemble" : "-single");
    return rec;
}

int run_simulate(const GlobalOpts& g, std::size_t classes, std::size_t channels,
                 std::size_t trials, double window, double rate, double snr,
                 std::size_t harmonics, const std::string& method, bool no_ensemble,
                 std::size_t bands, std::size_t subjects, const std::string& out_dir,
                 const std::string& dataset_path, bool json_out) {
    itr::ssvep::StimulusTable stimuli = itr::ssvep::speller_grid(classes);
    itr::ssvep::SynthConfig synth_cfg;
    synth_cfg.n_channels = channels;
    synth_cfg.n_trials = trials;
    synth_cfg.window_s = window;
    synth_cfg.sample_rate_hz = rate;
    synth_cfg.snr_db = snr;
    synth_cfg.harmonics = harmonics;
    itr::ssvep::TiConfig ti_cfg = make_ti_config(method, no_ensemble, bands);

    std::filesystem::create_directories(out_dir);
    for (std::size_t s = 0; s < subjects; ++s) {
        std::uint64_t subject_seed = g.seed + s;
        itr::ssvep::TrialDataset data = itr::ssvep::synth_ssvep(stimuli, synth_cfg, subject_seed);
        if (!dataset_path.empty() && s == 0) data.save(dataset_path);
        itr::ssvep::ConfusionCounts conf = itr::ssvep::evaluate_loto(data, ti_cfg);

        char name[32];
        std::snprintf(name, sizeof(name), "confusion_s%02zu", s + 1);
        itr::ConfusionRecord rec =
            to_record(conf, name, window, method, ti_cfg.ensemble);
        std::string base = out_dir + "/" + name;
        if (json_out)
            itr::io::write_confusion_json(base + ".json", rec, 0.5);
        else
            itr::io::write_confusion_csv(base + ".csv", rec);
        std::cout << name << ": accuracy " << format_double(conf.accuracy(), 4) << " -> " << base
                  << (json_out ? ".json" : ".csv") << "\n";
    }
    return 0;
}

int run_evaluate(const GlobalOpts& g, const std::string& dataset_path, const std::string& method,
                 bool no_ensemble, std::size_t bands, const std::string& out_path) {
    itr::ssvep::TrialDataset data = itr::ssvep::TrialDataset::load(dataset_path);
    itr::ssvep::TiConfig cfg = make_ti_config(method, no_ensemble, bands);
    itr::ssvep::ConfusionCounts conf = itr::ssvep::evaluate_loto(data, cfg);
    itr::ConfusionRecord rec =
        to_record(conf, dataset_path, data.config().window_s, method, cfg.ensemble);
    if (!out_path.empty()) {
        if (out_path.size() > 5 && out_path.substr(out_path.size() - 5) == ".json")
            itr::io::write_confusion_json(out_path, rec, 0.5);
        else
            itr::io::write_confusion_csv(out_path, rec);
    }
    if (g.format == "json") {
        nlohmann::json j;
        j["accuracy"] = conf.accuracy();
        j["max_eigen_residual"] = conf.max_eigen_residual;
        nlohmann::json counts = nlohmann::json::array();
        for (std::size_t i = 0; i < conf.m; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < conf.m; ++k) row.push_back(conf.at(i, k));
            counts.push_back(row);
        }
        j["counts"] = counts;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "accuracy " << format_double(conf.accuracy(), 4) << "\n";
        for (std::size_t i = 0; i < conf.m; ++i) {
            for (std::size_t k = 0; k < conf.m; ++k)
                std::printf("%6lld", static_cast<long long>(conf.at(i, k)));
            std::printf("\n");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information transfer rate toolkit for discrete memoryless BCI channels"};
    app.require_subcommand(1);
    app.fallthrough();  // let --seed/--format appear after the subcommand too

    GlobalOpts g;
    app.add_option("--seed", g.seed, "global RNG seed");
    app.add_option("--format", g.format, "output format: table | json")
        ->check(CLI::IsMember({"table", "json"}));

    auto* cap = app.add_subcommand("capacity", "Blahut-Arimoto capacity of a channel");
    std::string cap_matrix;
    double cap_bsc = -1, cap_bec = -1, cap_gamma = 1e-9;
    std::size_t cap_maxit = 10000;
    std::vector<double> cap_binary;
    cap->add_option("--matrix", cap_matrix, "row-stochastic matrix CSV");
    cap->add_option("--bsc", cap_bsc, "binary symmetric channel, crossover p");
    cap->add_option("--bec", cap_bec, "binary erasure channel, erasure e");
    cap->add_option("--binary", cap_binary, "binary channel p12 p21")->expected(2);
    cap->add_option("--gamma-th", cap_gamma, "stopping threshold (bits)");
    cap->add_option("--max-iter", cap_maxit, "iteration budget");

    auto* itr_cmd = app.add_subcommand("itr", "ITR report from confusion matrices");
    std::vector<std::string> itr_files;
    double itr_window = 0.0, itr_gaze = 0.5, itr_alpha = 0.0;
    bool itr_pooled = false;
    itr_cmd->add_option("--confusion", itr_files, "confusion CSV/JSON file(s)")->required();
    itr_cmd->add_option("--window", itr_window, "observation window (s) for CSV inputs");
    itr_cmd->add_option("--gaze", itr_gaze, "gaze-shift time added to T (s)");
    itr_cmd->add_flag("--pooled", itr_pooled, "pool all files into one confusion first");
    itr_cmd->add_option("--alpha", itr_alpha, "pseudo-count smoothing for zero rows");

    auto* design = app.add_subcommand("design", "joint channel/input optimization table");
    std::size_t design_m = 2;
    std::vector<double> design_targets;
    int design_restarts = 16;
    std::string design_save;
    design->add_option("--alphabet", design_m, "alphabet size M");
    design->add_option("--targets", design_targets, "accuracy targets (default 0.99 0.95 0.9 0.85 0.8 0.75)");
    design->add_option("--restarts", design_restarts, "random restarts");
    design->add_option("--save-channel", design_save, "write the first target's optimized matrix (CSV)");

    auto* sim = app.add_subcommand("simulate", "synthesize SSVEP data and emit confusions");
    std::size_t sim_classes = 8, sim_channels = 4, sim_trials = 6, sim_harm = 3, sim_bands = 5,
                sim_subjects = 1;
    double sim_window = 1.0, sim_rate = 250.0, sim_snr = 0.0;
    std::string sim_method = "trca", sim_out = ".", sim_dataset;
    bool sim_no_ensemble = false, sim_json = false;
    sim->add_option("--classes", sim_classes, "number of stimuli (speller grid prefix)");
    sim->add_option("--channels", sim_channels, "EEG channels");
    sim->add_option("--trials", sim_trials, "trials per class");
    sim->add_option("--window", sim_window, "window length (s)");
    sim->add_option("--rate", sim_rate, "sample rate (Hz)");
    sim->add_option("--snr", sim_snr, "SNR (dB)");
    sim->add_option("--harmonics", sim_harm, "harmonics per stimulus");
    sim->add_option("--method", sim_method, "trca | sscor");
    sim->add_flag("--no-ensemble", sim_no_ensemble, "single-filter decision rule");
    sim->add_option("--bands", sim_bands, "filter-bank sub-bands");
    sim->add_option("--subjects", sim_subjects, "independent synthetic subjects");
    sim->add_option("--out", sim_out, "output directory for confusion files");
    sim->add_option("--save-dataset", sim_dataset, "persist the first subject's trials");
    sim->add_flag("--json-out", sim_json, "write confusion JSON instead of CSV");

    auto* eval = app.add_subcommand("evaluate", "run target identification on a saved dataset");
    std::string eval_dataset, eval_method = "trca", eval_out;
    bool eval_no_ensemble = false;
    std::size_t eval_bands = 5;
    eval->add_option("--dataset", eval_dataset, "SSVD0001 container")->required();
    eval->add_option("--method", eval_method, "trca | sscor");
    eval->add_flag("--no-ensemble", eval_no_ensemble, "single-filter decision rule");
    eval->add_option("--bands", eval_bands, "filter-bank sub-bands");
    eval->add_option("--out", eval_out, "write the confusion here (CSV or .json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cap->parsed())
            return run_capacity(g, cap_matrix, cap_bsc, cap_bec, cap_binary, cap_gamma,
                                cap_maxit);
        if (itr_cmd->parsed())
            return run_itr(g, itr_files, itr_window, itr_gaze, itr_pooled, itr_alpha);
        if (design->parsed())
            return run_design(g, design_m, design_targets, design_restarts, design_save);
        if (sim->parsed())
            return run_simulate(g, sim_classes, sim_channels, sim_trials, sim_window, sim_rate,
                                sim_snr, sim_harm, sim_method, sim_no_ensemble, sim_bands,
                                sim_subjects, sim_out, sim_dataset, sim_json);
        if (eval->parsed())
            return run_evaluate(g, eval_dataset, eval_method, eval_no_ensemble, eval_bands,
                                eval_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
