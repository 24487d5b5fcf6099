// Copyright 2026 The lopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lopt/errors.hpp"

namespace lopt {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2;
inline constexpr cplx kI{0.0, 1.0};

/// Dense row-major complex matrix. Small (n <= ~50) and value-semantic.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) throw InvalidInput("ComplexMatrix: dimensions must be >= 1");
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (rows == 0 || cols == 0) throw InvalidInput("ComplexMatrix: dimensions must be >= 1");
        if (data_.size() != rows * cols) throw InvalidInput("ComplexMatrix: entry count != rows*cols");
        for (const auto &z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw InvalidInput("ComplexMatrix: non-finite entry");
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0) throw InvalidInput("ComplexMatrix: dimensions must be >= 1");
        data_.reserve(rows_ * cols_);
        for (const auto &r : rows) {
            if (r.size() != cols_) throw InvalidInput("ComplexMatrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const cplx> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const cplx> data() const { return data_; }
    std::span<cplx> data() { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix out = *this;
        for (auto &z : out.data_) z = std::conj(z);
        return out;
    }

    /// Copy of the [r0, r0+nr) x [c0, c0+nc) sub-block.
    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw InvalidInput("ComplexMatrix::block out of range");
        ComplexMatrix out(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
        return out;
    }

    /// Sub-matrix picking the listed rows and columns (repeats allowed).
    ComplexMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
        ComplexMatrix out(row_idx.size(), col_idx.size());
        for (std::size_t r = 0; r < row_idx.size(); ++r)
            for (std::size_t c = 0; c < col_idx.size(); ++c) out(r, c) = (*this)(row_idx[r], col_idx[c]);
        return out;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto &z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto &z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix &operator-=(const ComplexMatrix &o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix &operator*=(cplx s) {
        for (auto &z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
        if (a.cols_ != b.rows_) throw InvalidInput("ComplexMatrix: product shape mismatch");
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend std::vector<cplx> operator*(const ComplexMatrix &a, std::span<const cplx> x) {
        if (a.cols_ != x.size()) throw InvalidInput("ComplexMatrix: matvec shape mismatch");
        std::vector<cplx> y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) y[i] += a(i, k) * x[k];
        return y;
    }

    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream &operator<<(std::ostream &os, const ComplexMatrix &m) {
        for (std::size_t r = 0; r < m.rows_; ++r) {
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
            os << '\n';
        }
        return os;
    }

   private:
    void check_same_shape(const ComplexMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("ComplexMatrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

inline double distance(const ComplexMatrix &a, const ComplexMatrix &b) { return (a - b).frobenius_norm(); }

/// ||m^dagger m - I||_F
inline double unitarity_defect(const ComplexMatrix &m) {
    if (!m.square()) return INFINITY;
    return distance(m.adjoint() * m, ComplexMatrix::identity(m.rows()));
}

inline bool is_unitary(const ComplexMatrix &m, double tol = 1e-10) { return unitarity_defect(m) <= tol; }

/// Largest |m(i,j) - conj(m(j,i))|.
inline double hermiticity_defect(const ComplexMatrix &m) {
    if (!m.square()) return INFINITY;
    double d = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

inline ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) { return a * b - b * a; }

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline ComplexMatrix direct_sum(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

/// Square Hermitian matrix, validated on construction.
class HermitianGenerator {
   public:
    static constexpr double kTolerance = 1e-12;

    explicit HermitianGenerator(ComplexMatrix m) : matrix_(std::move(m)) {
        if (!matrix_.square()) throw InvalidInput("HermitianGenerator: matrix must be square");
        const double d = hermiticity_defect(matrix_);
        if (d > kTolerance) throw InvalidInput("HermitianGenerator: not Hermitian (defect " + std::to_string(d) + ")");
    }

    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix &matrix() const { return matrix_; }

    HermitianGenerator operator-() const { return HermitianGenerator(-matrix_); }
    friend HermitianGenerator operator*(double s, const HermitianGenerator &h) { return HermitianGenerator(h.matrix_ * s); }

   private:
    ComplexMatrix matrix_;
};

}  // namespace lopt
