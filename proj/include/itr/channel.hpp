#pragma once

#include <cstddef>
#include <vector>

#include "itr/distribution.hpp"

namespace itr {

/// Row-stochastic M x N transition matrix of a discrete memoryless channel.
/// N = M for the plain channel or M+1 when an erasure output is appended.
/// Every row must be a valid Distribution.
class ChannelMatrix {
   public:
    ChannelMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    static ChannelMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static ChannelMatrix identity(std::size_t m);
    /// Binary channel [[1-p12, p12], [p21, 1-p21]].
    static ChannelMatrix binary(double p12, double p21);
    /// Binary symmetric channel with crossover p.
    static ChannelMatrix bsc(double p);
    /// Binary erasure channel (2x3), erasure probability e.
    static ChannelMatrix bec(double e);
    /// Appends an erasure column: each row keeps (1-e) of its mass, e goes
    /// to the new output symbol.
    ChannelMatrix with_erasure(double e) const;

    std::size_t inputs() const { return rows_; }
    std::size_t outputs() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return p_[i * cols_ + j]; }
    double& at(std::size_t i, std::size_t j) { return p_[i * cols_ + j]; }

    Distribution row(std::size_t i) const;
    const std::vector<double>& data() const { return p_; }

    /// Average accuracy sum_i px_i * p_ii; requires a square matrix.
    double accuracy(const Distribution& px) const;

   private:
    std::size_t rows_, cols_;
    std::vector<double> p_;
};

}  // namespace itr
