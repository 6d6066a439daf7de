#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "growthforge/errors.hpp"
#include "growthforge/numeric.hpp"

namespace growthforge {

/// Dense integer matrix, row-major, exact arithmetic throughout.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Int(0)) {}

    IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw DimensionMismatch("ragged initializer for IntMatrix");
            for (long v : row) entries_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ &&
               entries_ == other.entries_;
    }
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }

    Int trace() const {
        if (!is_square()) throw NotSquare("trace of a non-square matrix");
        Int t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (v.size() != cols_)
            throw DimensionMismatch("matrix-vector product: " + std::to_string(cols_) +
                                    " columns vs vector of length " +
                                    std::to_string(v.size()));
        std::vector<Int> out(rows_, Int(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
        return out;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i == 0 ? "[" : " [";
            for (std::size_t j = 0; j < cols_; ++j) {
                s += at(i, j).get_str();
                if (j + 1 < cols_) s += ", ";
            }
            s += "]";
            if (i + 1 < rows_) s += ";";
        }
        return s + "]";
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Int> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    return os << m.to_string();
}

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix addition shape mismatch");
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix subtraction shape mismatch");
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("matrix product: " + std::to_string(a.cols()) +
                                " columns vs " + std::to_string(b.rows()) + " rows");
    IntMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

inline IntMatrix operator*(const Int& c, const IntMatrix& a) {
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = c * a.at(i, j);
    return r;
}

/// Determinant by fraction-free Bareiss elimination.
inline Int det(const IntMatrix& a) {
    if (!a.is_square()) throw NotSquare("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && m.at(pivot, k) == 0) ++pivot;
            if (pivot == n) return 0;
            for (std::size_t j = k; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = exact_div(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j),
                                       prev);
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

inline bool is_unimodular(const IntMatrix& a) {
    if (!a.is_square()) return false;
    Int d = det(a);
    return d == 1 || d == -1;
}

/// Exact inverse of a unimodular matrix (rational elimination; the result is
/// integral because det = ±1). NotUnimodular otherwise.
inline IntMatrix inverse(const IntMatrix& a) {
    if (!a.is_square()) throw NotSquare("inverse of a non-square matrix");
    Int d = det(a);
    if (d != 1 && d != -1)
        throw NotUnimodular("inverse requested with det = " + d.get_str());
    const std::size_t n = a.rows();
    // Gauss-Jordan over Q on [A | I].
    std::vector<std::vector<Rat>> w(n, std::vector<Rat>(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i][j] = Rat(a.at(i, j));
        w[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && w[pivot][col] == 0) ++pivot;
        if (pivot == n) throw NotUnimodular("singular matrix");
        std::swap(w[col], w[pivot]);
        Rat inv = 1 / w[col][col];
        for (std::size_t j = 0; j < 2 * n; ++j) w[col][j] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || w[i][col] == 0) continue;
            Rat f = w[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j) w[i][j] -= f * w[col][j];
        }
    }
    IntMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat& q = w[i][n + j];
            q.canonicalize();
            if (q.get_den() != 1)
                throw std::logic_error("inverse of unimodular matrix not integral");
            r.at(i, j) = q.get_num();
        }
    return r;
}

/// A^k for any integer k; negative powers require det(A) = ±1.
inline IntMatrix pow(const IntMatrix& a, long long k) {
    if (!a.is_square()) throw NotSquare("power of a non-square matrix");
    IntMatrix base = k < 0 ? inverse(a) : a;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1
                                 : static_cast<unsigned long long>(k);
    IntMatrix result = IntMatrix::identity(a.rows());
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

} // namespace growthforge
