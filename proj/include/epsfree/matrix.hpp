#pragma once

// Small dense row-major matrix used for operands in both the exact
// (GaussRational) and floating-point (std::complex<double>) paths.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "epsfree/error.hpp"
#include "epsfree/exact.hpp"

namespace epsfree {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T trace() const {
        T sum(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
        return sum;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw ValidationError("matrix product: inner dimensions differ");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const T& ail = a(i, l);
                if (ail == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += ail * b(l, j);
            }
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix sum: shapes differ");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// tr(A B) without forming the product.
template <typename T>
T trace_of_product(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) throw ValidationError("trace_of_product: shapes differ");
    T sum(0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) sum += a(i, l) * b(l, i);
    return sum;
}

inline GaussRational scale_by_inverse(const GaussRational& v, std::size_t n) {
    return v / Rational(static_cast<unsigned long>(n));
}
inline Complex scale_by_inverse(const Complex& v, std::size_t n) { return v / static_cast<double>(n); }

/// Normalized trace tr(A) = Tr(A) / n.
template <typename T>
T normalized_trace(const Matrix<T>& a) {
    if (!a.square() || a.rows() == 0) throw ValidationError("normalized_trace: needs a non-empty square matrix");
    return scale_by_inverse(a.trace(), a.rows());
}

inline Matrix<Complex> to_complex(const Matrix<GaussRational>& m) {
    Matrix<Complex> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
    return out;
}

inline Matrix<Complex> to_complex(const Matrix<Complex>& m) { return m; }

}  // namespace epsfree
