#pragma once

// Dense exact matrices over Q plus the handful of kernels everything else
// leans on: product, inverse, determinant valuation.

#include <porder/rational.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace porder {

struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rat> a;  // row-major

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

// Integer matrix used internally for scaled p-local arithmetic.
struct IMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Int> a;

    IMat() = default;
    IMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw InternalError("mat_mul: shape mismatch");
    Mat z(x.rows, y.cols);
    Rat t;
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Rat& xik = x.at(i, k);
            if (xik == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                const Rat& ykj = y.at(k, j);
                if (ykj == 0) continue;
                t = xik * ykj;
                z.at(i, j) += t;
            }
        }
    return z;
}

inline Mat mat_transpose(const Mat& x) {
    Mat z(x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

inline Mat mat_scale(const Mat& x, const Rat& c) {
    Mat z = x;
    for (auto& e : z.a) e *= c;
    return z;
}

// Gauss-Jordan inverse; throws SingularMatrixError if not invertible.
inline Mat rat_inverse(const Mat& m) {
    if (m.rows != m.cols) throw SingularMatrixError("rat_inverse: not square");
    const std::size_t n = m.rows;
    Mat w = m;
    Mat inv = Mat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && w.at(piv, col) == 0) ++piv;
        if (piv == n) throw SingularMatrixError("rat_inverse: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w.at(piv, j), w.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        }
        const Rat d = w.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            w.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const Rat f = w.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w.at(i, j) -= f * w.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

inline Rat mat_det(const Mat& m) {
    if (m.rows != m.cols) throw SingularMatrixError("mat_det: not square");
    const std::size_t n = m.rows;
    Mat w = m;
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && w.at(piv, col) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j)
                std::swap(w.at(piv, j), w.at(col, j));
            det = -det;
        }
        det *= w.at(col, col);
        const Rat d = w.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            const Rat f = w.at(i, col) / d;
            if (f == 0) continue;
            for (std::size_t j = col; j < n; ++j) w.at(i, j) -= f * w.at(col, j);
        }
    }
    return det;
}

// v_p(det M); singular input is an error, not infinity.
inline long det_val(const Mat& m, Prime p) {
    const Rat d = mat_det(m);
    if (d == 0) throw SingularMatrixError("det_val: singular matrix");
    return pval(d, p);
}

}  // namespace porder
