#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ipr/rational.hpp"
#include "ipr/seq.hpp"

namespace ipr {

// Dense rational matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rational> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::vector<Rational> column(std::size_t j) const;

    bool has_zero_row() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// Block-diagonal matrix of the given blocks, in order; zeros elsewhere.
// Throws std::invalid_argument if blocks is empty.
Matrix diagonal_sum(const std::vector<Matrix>& blocks);

// ((1,0),(0,1),(1,1)): the x, y, x+y system.
Matrix schur_matrix();

// Rows (1, i) for i in 0..n-1: an arithmetic progression of length n
// with value x + i*d at row i.  Throws std::invalid_argument if n == 0.
Matrix vdw_matrix(std::size_t n);

// A * x exactly.  Throws std::invalid_argument on dimension mismatch or
// if any entry of x is < 1.
std::vector<Rational> matrix_image(const Matrix& a, const IntSeq& x);

}  // namespace ipr
