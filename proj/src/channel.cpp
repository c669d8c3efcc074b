#include "itr/channel.hpp"

#include <stdexcept>
#include <string>

namespace itr {

ChannelMatrix::ChannelMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), p_(std::move(row_major)) {
    if (rows_ < 2 || cols_ < 2)
        throw std::invalid_argument("ChannelMatrix: alphabet sizes must be at least 2");
    if (p_.size() != rows_ * cols_)
        throw std::invalid_argument("ChannelMatrix: expected " + std::to_string(rows_ * cols_) +
                                    " entries, got " + std::to_string(p_.size()));
    for (std::size_t i = 0; i < rows_; ++i) {
        // Row validation (including the sum-to-1 check) goes through Distribution.
        try {
            Distribution row(std::vector<double>(p_.begin() + static_cast<long>(i * cols_),
                                                 p_.begin() + static_cast<long>((i + 1) * cols_)));
            for (std::size_t j = 0; j < cols_; ++j) p_[i * cols_ + j] = row[j];
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("ChannelMatrix: row " + std::to_string(i + 1) + ": " +
                                        e.what());
        }
    }
}

ChannelMatrix ChannelMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("ChannelMatrix: no rows");
    std::size_t cols = rows[0].size();
    std::vector<double> flat;
    flat.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols)
            throw std::invalid_argument("ChannelMatrix: ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return ChannelMatrix(rows.size(), cols, std::move(flat));
}

ChannelMatrix ChannelMatrix::identity(std::size_t m) {
    std::vector<double> flat(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) flat[i * m + i] = 1.0;
    return ChannelMatrix(m, m, std::move(flat));
}

ChannelMatrix ChannelMatrix::binary(double p12, double p21) {
    if (p12 < 0 || p12 > 1 || p21 < 0 || p21 > 1)
        throw std::invalid_argument("ChannelMatrix::binary: probabilities must lie in [0,1]");
    return ChannelMatrix(2, 2, {1.0 - p12, p12, p21, 1.0 - p21});
}

ChannelMatrix ChannelMatrix::bsc(double p) { return binary(p, p); }

ChannelMatrix ChannelMatrix::bec(double e) {
    if (e < 0 || e > 1)
        throw std::invalid_argument("ChannelMatrix::bec: erasure probability must lie in [0,1]");
    return ChannelMatrix(2, 3, {1.0 - e, 0.0, e, 0.0, 1.0 - e, e});
}

ChannelMatrix ChannelMatrix::with_erasure(double e) const {
    if (e < 0 || e > 1)
        throw std::invalid_argument("ChannelMatrix::with_erasure: probability must lie in [0,1]");
    std::vector<double> flat;
    flat.reserve(rows_ * (cols_ + 1));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) flat.push_back((1.0 - e) * (*this)(i, j));
        flat.push_back(e);
    }
    return ChannelMatrix(rows_, cols_ + 1, std::move(flat));
}

Distribution ChannelMatrix::row(std::size_t i) const {
    return Distribution(std::vector<double>(p_.begin() + static_cast<long>(i * cols_),
                                            p_.begin() + static_cast<long>((i + 1) * cols_)));
}

double ChannelMatrix::accuracy(const Distribution& px) const {
    if (rows_ != cols_)
        throw std::invalid_argument("ChannelMatrix::accuracy: needs a square matrix");
    if (px.size() != rows_)
        throw std::invalid_argument("ChannelMatrix::accuracy: input size mismatch");
    double a = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) a += px[i] * (*this)(i, i);
    return a;
}

}  // namespace itr
