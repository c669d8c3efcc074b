#pragma once

#include <cstddef>
#include <vector>

namespace itr {

/// Probability vector over a finite alphabet. Construction validates:
/// entries must be nonnegative and sum to 1; deviations of the sum up to
/// 1e-6 are renormalized away, anything larger is rejected.
class Distribution {
   public:
    explicit Distribution(std::vector<double> probs);

    static Distribution uniform(std::size_t n);
    static Distribution point_mass(std::size_t n, std::size_t index);

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double>& probs() const { return p_; }

    bool operator==(const Distribution& other) const { return p_ == other.p_; }

   private:
    std::vector<double> p_;
};

}  // namespace itr
