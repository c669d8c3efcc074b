#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "itr/info.hpp"

using namespace itr;

namespace {

Distribution random_distribution(std::mt19937_64& rng, std::size_t n, double floor = 0.0) {
    std::uniform_real_distribution<double> unif(floor, 1.0);
    std::vector<double> v(n);
    double sum = 0.0;
    for (double& x : v) {
        x = unif(rng);
        sum += x;
    }
    for (double& x : v) x /= sum;
    return Distribution(std::move(v));
}

ChannelMatrix random_channel(std::mt19937_64& rng, std::size_t m, std::size_t n) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> flat(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            flat[i * n + j] = unif(rng) + 1e-6;
            sum += flat[i * n + j];
        }
        for (std::size_t j = 0; j < n; ++j) flat[i * n + j] /= sum;
    }
    return ChannelMatrix(m, n, std::move(flat));
}

}  // namespace

TEST_CASE("Distribution construction rules") {
    CHECK_THROWS_AS(Distribution({0.5, 0.6}), std::invalid_argument);     // sum 1.1
    CHECK_THROWS_AS(Distribution({-0.1, 1.1}), std::invalid_argument);    // negative
    CHECK_THROWS_AS(Distribution(std::vector<double>{}), std::invalid_argument);
    // dust within 1e-6 renormalizes
    Distribution d({0.5, 0.5 + 5e-7});
    CHECK(d[0] + d[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Distribution::uniform(4)[2] == doctest::Approx(0.25));
    CHECK(Distribution::point_mass(3, 1)[1] == 1.0);
}

TEST_CASE("entropy examples") {
    CHECK(entropy(Distribution::uniform(4)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(entropy(Distribution::point_mass(3, 0)) == 0.0);
    CHECK(entropy(Distribution({0.9, 0.1})) ==
          doctest::Approx(0.4689955935892812).epsilon(1e-12));
}

TEST_CASE("binary_entropy examples and domain") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.02) == doctest::Approx(0.14144054254182067).epsilon(1e-12));
    CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-15));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
}

TEST_CASE("kl_divergence examples") {
    Distribution u = Distribution::uniform(3);
    CHECK(kl_divergence(u, u) == 0.0);
    CHECK(kl_divergence(Distribution({1.0, 0.0}), Distribution({0.5, 0.5})) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kl_divergence(Distribution({0.5, 0.5}), Distribution({0.9, 0.1})) ==
          doctest::Approx(0.7369655941662061).epsilon(1e-12));
    CHECK_THROWS_AS(kl_divergence(Distribution({0.5, 0.5}), Distribution({1.0, 0.0})),
                    std::domain_error);
    CHECK_THROWS_AS(kl_divergence(Distribution({0.5, 0.5}), Distribution::uniform(3)),
                    std::invalid_argument);
}

TEST_CASE("kl_divergence nonnegative on random full-support pairs") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        auto p = random_distribution(rng, 5, 0.01);
        auto q = random_distribution(rng, 5, 0.01);
        CHECK(kl_divergence(p, q) >= -1e-12);
    }
}

TEST_CASE("output_distribution examples") {
    Distribution px({0.7, 0.3});
    SUBCASE("identity passes the input through") {
        auto py = output_distribution(ChannelMatrix::identity(2), px);
        CHECK(py[0] == doctest::Approx(0.7));
        CHECK(py[1] == doctest::Approx(0.3));
    }
    SUBCASE("input-independent channel returns its row") {
        ChannelMatrix c = ChannelMatrix::from_rows({{0.2, 0.8}, {0.2, 0.8}});
        auto py = output_distribution(c, px);
        CHECK(py[0] == doctest::Approx(0.2));
        CHECK(py[1] == doctest::Approx(0.8));
    }
    SUBCASE("BSC(0.1) with (0.7, 0.3)") {
        auto py = output_distribution(ChannelMatrix::bsc(0.1), px);
        CHECK(py[0] == doctest::Approx(0.66).epsilon(1e-12));
        CHECK(py[1] == doctest::Approx(0.34).epsilon(1e-12));
    }
    CHECK_THROWS_AS(output_distribution(ChannelMatrix::identity(3), px),
                    std::invalid_argument);
}

TEST_CASE("info_summary examples") {
    SUBCASE("noiseless M=4") {
        auto s = info_summary(ChannelMatrix::identity(4), Distribution::uniform(4));
        CHECK(s.mutual_information == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(s.conditional_entropy == doctest::Approx(0.0));
    }
    SUBCASE("useless channel") {
        ChannelMatrix c = ChannelMatrix::from_rows({{0.3, 0.7}, {0.3, 0.7}});
        auto s = info_summary(c, Distribution({0.4, 0.6}));
        CHECK(s.mutual_information == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("BSC(0.1) uniform") {
        auto s = info_summary(ChannelMatrix::bsc(0.1), Distribution::uniform(2));
        CHECK(s.mutual_information == doctest::Approx(0.5310044064107188).epsilon(1e-12));
    }
}

TEST_CASE("info_summary identities and bounds on random channels") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> dim(2, 8);
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t m = dim(rng), n = dim(rng);
        auto c = random_channel(rng, m, n);
        auto px = random_distribution(rng, m);
        auto s = info_summary(c, px);
        CHECK(s.mutual_information ==
              doctest::Approx(s.output_entropy - s.conditional_entropy).epsilon(1e-9));
        CHECK(s.mutual_information >= -1e-9);
        CHECK(s.mutual_information <=
              std::min(s.input_entropy, std::log2(static_cast<double>(n))) + 1e-9);
    }
}

TEST_CASE("entropy is concave under mixture") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> lam(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        auto p = random_distribution(rng, 6);
        auto q = random_distribution(rng, 6);
        double l = lam(rng);
        std::vector<double> mix(6);
        for (std::size_t i = 0; i < 6; ++i) mix[i] = l * p[i] + (1 - l) * q[i];
        CHECK(entropy(Distribution(mix)) >= l * entropy(p) + (1 - l) * entropy(q) - 1e-12);
    }
}

TEST_CASE("conventional_itr examples") {
    auto perfect = conventional_itr(40, 1.0, 1.0);
    CHECK(perfect.bits_per_trial == doctest::Approx(5.321928094887363).epsilon(1e-12));
    CHECK(perfect.bits_per_min == doctest::Approx(319.31568569324173).epsilon(1e-12));
    CHECK_FALSE(perfect.below_chance);

    CHECK(conventional_itr(2, 0.5, 1.0).bits_per_trial == doctest::Approx(0.0).epsilon(1e-12));

    auto r = conventional_itr(40, 0.9, 0.5);
    CHECK(r.bits_per_trial == doctest::Approx(4.324392279411857).epsilon(1e-12));
    CHECK(r.bits_per_min == doctest::Approx(518.9270735294228).epsilon(1e-12));

    CHECK(conventional_itr(40, 0.01, 1.0).below_chance);
    CHECK_FALSE(conventional_itr(40, 0.025, 1.0).below_chance);

    CHECK_THROWS_AS(conventional_itr(1, 0.9, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(conventional_itr(4, 1.2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(conventional_itr(4, 0.9, 0.0), std::invalid_argument);
}

TEST_CASE("balanced channel with uniform input reproduces the ITR formula") {
    // max I(X;Y) = log2(M) - H(row) for the balanced matrix, which is the
    // conventional ITR expression term for term.
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> msize(2, 40);
    std::uniform_real_distribution<double> acc(0.05, 0.999);
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t m = msize(rng);
        double p = acc(rng);
        double off = (1.0 - p) / static_cast<double>(m - 1);
        std::vector<double> flat(m * m, off);
        for (std::size_t i = 0; i < m; ++i) flat[i * m + i] = p;
        auto s = info_summary(ChannelMatrix(m, m, flat), Distribution::uniform(m));
        CHECK(s.mutual_information ==
              doctest::Approx(conventional_itr(m, p, 1.0).bits_per_trial).epsilon(1e-9));
    }
}

TEST_CASE("erasure extension keeps rows stochastic") {
    ChannelMatrix c = ChannelMatrix::bsc(0.1).with_erasure(0.3);
    CHECK(c.outputs() == 3);
    CHECK(c(0, 0) == doctest::Approx(0.63));
    CHECK(c(0, 2) == doctest::Approx(0.3));
    CHECK(c(0, 0) + c(0, 1) + c(0, 2) == doctest::Approx(1.0).epsilon(1e-12));
}
