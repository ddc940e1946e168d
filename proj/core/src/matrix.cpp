#include "ipr/matrix.hpp"

#include <stdexcept>

namespace ipr {

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows[0].size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (const auto& r : rows) {
        if (r.size() != m.cols_) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        m.data_.insert(m.data_.end(), r.begin(), r.end());
    }
    return m;
}

std::vector<Rational> Matrix::column(std::size_t j) const {
    std::vector<Rational> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
}

bool Matrix::has_zero_row() const {
    for (std::size_t i = 0; i < rows_; ++i) {
        bool all_zero = true;
        for (std::size_t j = 0; j < cols_ && all_zero; ++j)
            all_zero = (*this)(i, j).is_zero();
        if (all_zero) return true;
    }
    return false;
}

Matrix diagonal_sum(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("diagonal_sum: no blocks");
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix m(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                m(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

Matrix schur_matrix() {
    Matrix m(3, 2);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 0) = 1;
    m(2, 1) = 1;
    return m;
}

Matrix vdw_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("vdw_matrix: n must be >= 1");
    Matrix m(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, 0) = 1;
        m(i, 1) = static_cast<long long>(i);
    }
    return m;
}

std::vector<Rational> matrix_image(const Matrix& a, const IntSeq& x) {
    if (x.size() != a.cols()) throw std::invalid_argument("matrix_image: dimension mismatch");
    for (long long e : x)
        if (e < 1) throw std::invalid_argument("matrix_image: entries of x must be >= 1");
    std::vector<Rational> out;
    out.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rational acc;
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc += a(i, j) * Rational(x[j]);
        out.push_back(acc);
    }
    return out;
}

}  // namespace ipr
