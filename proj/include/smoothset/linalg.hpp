#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "smoothset/rational.hpp"

namespace smoothset {

/// Dense row-major matrix over an exact ring. Desk-scale sizes only.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    void append_row(const std::vector<T>& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;
using RationalVector = std::vector<Rational>;

RationalMatrix to_rational(const IntegerMatrix& m);

struct RowEchelon {
    RationalMatrix reduced;            // reduced row-echelon form, zero rows dropped
    std::vector<std::size_t> pivots;   // pivot column of each row
};

RowEchelon row_reduce(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);
std::size_t rank(const IntegerMatrix& m);

/// Rows form the canonical kernel basis read off the reduced row-echelon form:
/// one vector per free column, with a 1 in that column.
RationalMatrix kernel_basis(const RationalMatrix& m);

RationalVector multiply(const RationalMatrix& m, const RationalVector& v);

/// Reduce v against an echelon basis so that v vanishes at every pivot column.
void reduce_against(RationalVector& v, const RowEchelon& basis);

bool is_zero(const RationalVector& v);

/// Nonzero diagonal of the Smith normal form, each dividing the next, all positive.
std::vector<Integer> elementary_divisors(IntegerMatrix m);

/// Sparse triplet text: "rows cols nnz" followed by one "i j value" line per nonzero.
std::string write_triplets(const RationalMatrix& m);
std::string write_triplets(const IntegerMatrix& m);
RationalMatrix read_triplets(std::string_view text);

}  // namespace smoothset
