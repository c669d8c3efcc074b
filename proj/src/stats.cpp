#include "itr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "itr/capacity.hpp"
#include "itr/info.hpp"

namespace itr {

std::int64_t ConfusionRecord::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

double ConfusionRecord::accuracy() const {
    std::int64_t diag = 0;
    for (std::size_t i = 0; i < m; ++i) diag += at(i, i);
    return static_cast<double>(diag) / static_cast<double>(total());
}

ChannelMatrix normalize_confusion(const ConfusionRecord& record, double alpha) {
    if (record.m < 2 || record.counts.size() != record.m * record.m)
        throw std::invalid_argument("normalize_confusion: malformed record");
    std::vector<double> flat(record.m * record.m);
    for (std::size_t i = 0; i < record.m; ++i) {
        double rowsum = 0.0;
        for (std::size_t j = 0; j < record.m; ++j) {
            if (record.at(i, j) < 0)
                throw std::invalid_argument("normalize_confusion: negative count");
            flat[i * record.m + j] = static_cast<double>(record.at(i, j)) + alpha;
            rowsum += flat[i * record.m + j];
        }
        if (rowsum <= 0.0)
            throw std::runtime_error("normalize_confusion: class " + std::to_string(i + 1) +
                                     " has no test trials");
        for (std::size_t j = 0; j < record.m; ++j) flat[i * record.m + j] /= rowsum;
    }
    return ChannelMatrix(record.m, record.m, std::move(flat));
}

ConfusionRecord pool_confusions(std::span<const ConfusionRecord> records) {
    if (records.empty()) throw std::invalid_argument("pool_confusions: no records");
    ConfusionRecord out = records[0];
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.m != out.m)
            throw std::invalid_argument("pool_confusions: alphabet size mismatch");
        if (rec.window_s != out.window_s || rec.method != out.method)
            throw std::invalid_argument("pool_confusions: incompatible metadata (T or method)");
        for (std::size_t k = 0; k < out.counts.size(); ++k) out.counts[k] += rec.counts[k];
        if (rec.subject != out.subject) out.subject = "pooled";
    }
    return out;
}

std::vector<double> per_subject_itr(std::span<const ConfusionRecord> records, ItrMode mode,
                                    double gaze_s) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& rec : records) {
        double t_total = rec.window_s + gaze_s;
        if (!(t_total > 0.0))
            throw std::invalid_argument("per_subject_itr: window + gaze must be positive");
        if (mode == ItrMode::conventional) {
            out.push_back(conventional_itr(rec.m, rec.accuracy(), t_total).bits_per_min);
        } else {
            out.push_back(capacity_itr(normalize_confusion(rec), t_total).bits_per_min);
        }
    }
    return out;
}

// --- distribution-function kernels ---------------------------------------

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15, kTiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double sample_variance(std::span<const double> v) {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0)
        throw std::domain_error("regularized_incomplete_beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
    double tail = 0.5 * regularized_incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
    return t >= 0.0 ? 1.0 - tail : tail;
}

double f_distribution_cdf(double x, double d1, double d2) {
    if (x <= 0.0) return 0.0;
    return regularized_incomplete_beta(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2));
}

namespace {

// Quantile by bisection on the CDF; the t distribution is unbounded but
// critical values of interest live well inside [0, 1e6].
double t_quantile(double prob, double dof) {
    double lo = 0.0, hi = 1e6;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, dof) < prob)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, Tail tail) {
    if (a.size() != b.size()) throw std::invalid_argument("paired_t_test: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("paired_t_test: need at least 2 pairs");
    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    double var = sample_variance(d);
    if (var <= 0.0)
        throw std::domain_error("paired_t_test: differences have zero variance");
    double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double t = mean / std::sqrt(var / static_cast<double>(n));
    double dof = static_cast<double>(n - 1);
    double p, crit;
    if (tail == Tail::two_sided) {
        p = 2.0 * (1.0 - student_t_cdf(std::abs(t), dof));
        crit = t_quantile(0.975, dof);
    } else {
        p = 1.0 - student_t_cdf(t, dof);
        crit = t_quantile(0.95, dof);
    }
    return TTestResult{t, p, crit, n - 1};
}

FTestResult variance_f_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("variance_f_test: need at least 2 samples per group");
    double va = sample_variance(a), vb = sample_variance(b);
    if (vb <= 0.0) throw std::domain_error("variance_f_test: denominator variance is zero");
    double f = va / vb;
    double d1 = static_cast<double>(a.size() - 1), d2 = static_cast<double>(b.size() - 1);
    double cdf = f_distribution_cdf(f, d1, d2);
    double p = 2.0 * std::min(cdf, 1.0 - cdf);
    return FTestResult{f, std::min(p, 1.0), cdf, 1.0 - cdf, a.size() - 1, b.size() - 1};
}

RegressionFit fit_regression(std::span<const double> x, std::span<const double> y,
                             RegressionModel model) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_regression: length mismatch");
    if (x.size() < 3) throw std::invalid_argument("fit_regression: need at least 3 points");
    const std::size_t n = x.size();
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (model == RegressionModel::logarithmic) {
            if (!(x[i] > 0.0))
                throw std::domain_error("fit_regression: logarithmic model needs x > 0");
            t[i] = std::log(x[i]);
        } else {
            t[i] = x[i];
        }
    }
    double tm = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(n);
    double ym = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        stt += (t[i] - tm) * (t[i] - tm);
        sty += (t[i] - tm) * (y[i] - ym);
        syy += (y[i] - ym) * (y[i] - ym);
    }
    if (stt <= 0.0) throw std::invalid_argument("fit_regression: regressor is constant");
    double slope = sty / stt;
    double intercept = ym - slope * tm;
    double r2 = syy > 0.0 ? std::clamp(slope * sty / syy, 0.0, 1.0) : 1.0;
    return RegressionFit{model, slope, intercept, r2};
}

}  // namespace itr
