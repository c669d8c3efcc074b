#include "itr/distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace itr {

namespace {
constexpr double kSumSlack = 1e-6;   // renormalize silently below this
constexpr double kNegSlack = 1e-12;  // tolerate arithmetic dust below zero
}  // namespace

Distribution::Distribution(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw std::invalid_argument("Distribution: empty vector");
    double sum = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_[i]))
            throw std::invalid_argument("Distribution: non-finite entry at index " +
                                        std::to_string(i));
        if (p_[i] < -kNegSlack)
            throw std::invalid_argument("Distribution: negative entry at index " +
                                        std::to_string(i));
        if (p_[i] < 0.0) p_[i] = 0.0;
        sum += p_[i];
    }
    if (std::abs(sum - 1.0) > kSumSlack)
        throw std::invalid_argument("Distribution: entries sum to " + std::to_string(sum) +
                                    ", expected 1");
    if (sum != 1.0) {
        for (double& v : p_) v /= sum;
    }
}

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Distribution::uniform: n must be positive");
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t index) {
    if (index >= n) throw std::invalid_argument("Distribution::point_mass: index out of range");
    std::vector<double> v(n, 0.0);
    v[index] = 1.0;
    return Distribution(std::move(v));
}

}  // namespace itr
