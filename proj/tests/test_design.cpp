#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "itr/capacity.hpp"
#include "itr/design.hpp"
#include "itr/info.hpp"

using namespace itr;

namespace {

// Independent oracle for the binary design problem: the one-parameter family
// of Z channels (c, 0) whose BA-optimal input hits the accuracy target
// exactly. Accuracy 1 - px*(c) * c is decreasing in c, so bisection finds the
// consistent crossover; capacity comes from the closed form.
double z_family_capacity(double target_accuracy) {
    auto consistent_acc = [](double c) {
        auto r = binary_capacity(c, 0.0);
        return 1.0 - r.optimal_px * c;
    };
    double lo = 1e-12, hi = 1.0 - 1e-9;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (consistent_acc(mid) > target_accuracy)
            lo = mid;
        else
            hi = mid;
    }
    return binary_capacity(0.5 * (lo + hi), 0.0).capacity;
}

Distribution random_input(std::mt19937_64& rng, std::size_t m) {
    std::uniform_real_distribution<double> unif(0.01, 1.0);
    std::vector<double> v(m);
    double sum = 0.0;
    for (double& x : v) {
        x = unif(rng);
        sum += x;
    }
    for (double& x : v) x /= sum;
    return Distribution(std::move(v));
}

ChannelMatrix random_square_channel(std::mt19937_64& rng, std::size_t m) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> flat(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            flat[i * m + j] = unif(rng) + 1e-6;
            sum += flat[i * m + j];
        }
        for (std::size_t j = 0; j < m; ++j) flat[i * m + j] /= sum;
    }
    return ChannelMatrix(m, m, std::move(flat));
}

}  // namespace

TEST_CASE("balanced_matrix examples") {
    SUBCASE("perfect channel is the identity") {
        auto c = balanced_matrix(1.0, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(c(i, j) == (i == j ? 1.0 : 0.0));
    }
    SUBCASE("p = 0.7, M = 3 puts 0.15 off diagonal") {
        auto c = balanced_matrix(0.7, 3);
        CHECK(c(0, 1) == doctest::Approx(0.15));
        CHECK(c(2, 2) == doctest::Approx(0.7));
    }
    SUBCASE("per-class accuracies land on the right rows") {
        auto c = balanced_matrix(std::vector<double>{0.9, 0.6}, 2);
        CHECK(c(0, 0) == doctest::Approx(0.9));
        CHECK(c(1, 1) == doctest::Approx(0.6));
        CHECK(c(1, 0) == doctest::Approx(0.4));
    }
    CHECK_THROWS_AS(balanced_matrix(std::vector<double>{0.9}, 2), std::invalid_argument);
    CHECK_THROWS_AS(balanced_matrix(1.2, 3), std::invalid_argument);
}

TEST_CASE("balanced matrix: BA capacity equals the ITR formula, uniform optimum") {
    auto c = balanced_matrix(0.9, 40);
    auto r = blahut_arimoto(c);
    CHECK(r.capacity ==
          doctest::Approx(conventional_itr(40, 0.9, 1.0).bits_per_trial).epsilon(1e-6));
    for (std::size_t i = 0; i < 40; ++i)
        CHECK(r.optimal_input[i] == doctest::Approx(0.025).epsilon(1e-6));
}

TEST_CASE("fano_conditional_entropy_bound examples") {
    CHECK(fano_conditional_entropy_bound(0.0, 17) == 0.0);
    CHECK(fano_conditional_entropy_bound(0.01, 2) ==
          doctest::Approx(0.08079313589591118).epsilon(1e-12));
    CHECK(fano_conditional_entropy_bound(0.05, 40) ==
          doctest::Approx(0.5506670680590686).epsilon(1e-12));
    CHECK_THROWS_AS(fano_conditional_entropy_bound(1.5, 4), std::domain_error);
}

TEST_CASE("fano_error_lower_bound examples") {
    SUBCASE("identity channel bounds error by zero") {
        auto b = fano_error_lower_bound(ChannelMatrix::identity(4), Distribution::uniform(4));
        CHECK(b.bound == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("balanced M=40 p=0.9 is tight at the true error") {
        auto c = balanced_matrix(0.9, 40);
        auto b = fano_error_lower_bound(c, Distribution::uniform(40));
        CHECK(b.tight_form);
        CHECK(b.bound <= 0.1 + 1e-9);
        CHECK(b.bound == doctest::Approx(0.1).epsilon(1e-6));
    }
    SUBCASE("uninformative channel, M=4 uniform") {
        ChannelMatrix c(4, 4, std::vector<double>(16, 0.25));
        auto b = fano_error_lower_bound(c, Distribution::uniform(4));
        CHECK(b.bound >= 0.5);           // weak form gives (2 - 0 - 1)/2
        CHECK(b.bound <= 0.75 + 1e-9);   // true error
    }
    SUBCASE("M=2 falls back to the weak form, flagged") {
        auto b = fano_error_lower_bound(ChannelMatrix::bsc(0.3), Distribution::uniform(2));
        CHECK_FALSE(b.tight_form);
        CHECK(b.bound >= 0.0);
    }
}

TEST_CASE("Fano bounds hold on random channels and inputs") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::size_t> dim(2, 10);
    for (int rep = 0; rep < 300; ++rep) {
        std::size_t m = dim(rng);
        auto c = random_square_channel(rng, m);
        auto px = random_input(rng, m);
        double err = 1.0 - c.accuracy(px);
        double hyx = info_summary(c, px).conditional_entropy;
        CHECK(hyx <= fano_conditional_entropy_bound(err, m) + 1e-9);
        CHECK(fano_error_lower_bound(c, px).bound <= err + 1e-9);
    }
}

TEST_CASE("joint_optimize reproduces the binary design table") {
    const double targets[] = {0.99, 0.95, 0.9, 0.85, 0.8, 0.75};
    const double capacity_row[] = {0.9277, 0.746, 0.5787, 0.4412, 0.3219, 0.2155};
    const double cond_entropy_row[] = {0.0703, 0.2271, 0.3367, 0.3908, 0.4001, 0.3655};
    for (int k = 0; k < 6; ++k) {
        auto r = joint_optimize(2, AccuracyTarget{targets[k]}, 16, 99);
        CHECK(r.converged);
        CHECK(std::abs(r.capacity - capacity_row[k]) <= 0.01);
        double hyx = info_summary(r.channel, r.input).conditional_entropy;
        CHECK(std::abs(hyx - cond_entropy_row[k]) <= 0.02);
        CHECK(std::abs(r.achieved_error - (1.0 - targets[k])) <= 1e-4);
        CHECK(hyx <= r.fano_bound + 1e-9);
        // the independent Z-family oracle pins the value much tighter
        CHECK(r.capacity == doctest::Approx(z_family_capacity(targets[k])).epsilon(2e-3));
    }
}

TEST_CASE("joint_optimize beats the symmetric channel at the same accuracy") {
    for (double a : {0.75, 0.8, 0.85, 0.9, 0.95, 0.99}) {
        auto r = joint_optimize(2, AccuracyTarget{a}, 8, 7);
        CHECK(r.capacity >= binary_capacity(1.0 - a, 1.0 - a).capacity - 1e-6);
    }
}

TEST_CASE("joint_optimize degenerate and infeasible targets") {
    auto perfect = joint_optimize(2, AccuracyTarget{1.0}, 4, 3);
    CHECK(perfect.capacity == doctest::Approx(1.0));
    CHECK(perfect.channel(0, 0) == 1.0);
    CHECK(perfect.achieved_error == 0.0);

    CHECK_THROWS_AS(joint_optimize(2, AccuracyTarget{0.4}, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(joint_optimize(2, AccuracyTarget{0.5}, 4, 3), std::invalid_argument);
}

TEST_CASE("joint_optimize against a closed-form scan of the consistent manifold") {
    // Every (p12, p21) pair whose BA-optimal input meets the accuracy target
    // is a feasible fixed point; the optimizer must not fall short of the
    // best of them (up to the scan's band tolerance).
    const double target = 0.9;
    double best_scan = 0.0;
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            double a = static_cast<double>(i) / n, b = static_cast<double>(j) / n;
            if (std::abs(1.0 - a - b) < 1e-9) continue;
            auto r = binary_capacity(a, b);
            double acc = 1.0 - (r.optimal_px * a + (1.0 - r.optimal_px) * b);
            if (std::abs(acc - target) <= 1.5e-3) best_scan = std::max(best_scan, r.capacity);
        }
    }
    auto r = joint_optimize(2, AccuracyTarget{target}, 16, 1234);
    CHECK(r.capacity >= best_scan - 3e-3);
}

TEST_CASE("binary_extremal_channels examples") {
    SUBCASE("A = 1 gives the identity twice") {
        auto [mx, mn] = binary_extremal_channels(1.0);
        CHECK(mx(0, 0) == 1.0);
        CHECK(mn(0, 0) == 1.0);
    }
    SUBCASE("A = 0.99") {
        auto [mx, mn] = binary_extremal_channels(0.99);
        CHECK(mx(0, 1) == doctest::Approx(0.02));
        CHECK(mx(1, 0) == doctest::Approx(0.0));
        double cmax = binary_capacity(0.02, 0.0).capacity;
        double cmin = binary_capacity(0.01, 0.01).capacity;
        CHECK(cmax == doctest::Approx(0.9296405133612715).epsilon(1e-9));
        CHECK(cmin == doctest::Approx(0.9192068641040888).epsilon(1e-9));
        CHECK(cmax >= cmin);
        // both meet accuracy A under uniform input
        CHECK(mx.accuracy(Distribution::uniform(2)) == doctest::Approx(0.99).epsilon(1e-12));
        CHECK(mn.accuracy(Distribution::uniform(2)) == doctest::Approx(0.99).epsilon(1e-12));
    }
    SUBCASE("A = 0.75") {
        auto [mx, mn] = binary_extremal_channels(0.75);
        CHECK(binary_capacity(mx(0, 1), mx(1, 0)).capacity ==
              doctest::Approx(0.3219280948873622).epsilon(1e-9));
        CHECK(binary_capacity(mn(0, 1), mn(1, 0)).capacity ==
              doctest::Approx(0.18872187554086717).epsilon(1e-9));
    }
    CHECK_THROWS_AS(binary_extremal_channels(0.5), std::invalid_argument);
    CHECK_THROWS_AS(binary_extremal_channels(0.3), std::invalid_argument);
}
