#pragma once

// Linear algebra over the residue field F_p with machine-word entries.

#include <porder/matrix.hpp>
#include <porder/rational.hpp>

#include <cstddef>
#include <vector>

namespace porder {

struct FpMat {
    long p = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<long> a;  // residues in [0, p)

    FpMat() = default;
    FpMat(Prime pr, std::size_t r, std::size_t c)
        : p(pr.v), rows(r), cols(c), a(r * c, 0) {}

    long& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    long at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    friend bool operator==(const FpMat& x, const FpMat& y) {
        return x.p == y.p && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

inline long fp_normalize(long x, long p) {
    long r = x % p;
    return r < 0 ? r + p : r;
}

// a^(p-2) would need p prime anyway; use extended Euclid for clarity.
inline long fp_inv(long a, long p) {
    a = fp_normalize(a, p);
    if (a == 0) throw InternalError("fp_inv: zero");
    long r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    return fp_normalize(s0, p);
}

// Reduce a rational matrix mod p.  Entries must lie in Z_(p).
inline FpMat fp_reduce(const Mat& m, Prime p) {
    FpMat z(p, m.rows, m.cols);
    Int pp(p.v);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            const Rat& e = m.at(i, j);
            if (e == 0) continue;
            if (pval(e.get_den(), p) != 0)
                throw PreconditionError("fp_reduce: entry not p-integral");
            Int num, den;
            mpz_mod(num.get_mpz_t(), e.get_num().get_mpz_t(), pp.get_mpz_t());
            mpz_mod(den.get_mpz_t(), e.get_den().get_mpz_t(), pp.get_mpz_t());
            const long n = num.get_si();
            const long d = den.get_si();
            z.at(i, j) = fp_normalize(n * fp_inv(d, p.v), p.v);
        }
    return z;
}

// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> fp_rref(FpMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t piv = r;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols; ++j)
                std::swap(m.at(piv, j), m.at(r, j));
        const long inv = fp_inv(m.at(r, col), m.p);
        for (std::size_t j = 0; j < m.cols; ++j)
            m.at(r, j) = fp_normalize(m.at(r, j) * inv, m.p);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            const long f = m.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < m.cols; ++j)
                m.at(i, j) = fp_normalize(m.at(i, j) - f * m.at(r, j), m.p);
        }
        pivots.push_back(col);
        ++r;
    }
    // Drop the all-zero tail so callers see a basis of the row span.
    m.rows = r;
    m.a.resize(r * m.cols);
    return pivots;
}

inline std::size_t fp_rank(FpMat m) { return fp_rref(m).size(); }

// Basis (as rows) of the right null space {v : M v = 0}.
inline FpMat fp_kernel(const FpMat& m) {
    FpMat w = m;
    const auto pivots = fp_rref(w);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    FpMat ker(Prime(m.p), m.cols - pivots.size(), m.cols);
    std::size_t k = 0;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        ker.at(k, free_col) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            ker.at(k, pivots[r]) =
                fp_normalize(-w.at(r, free_col), m.p);
        ++k;
    }
    return ker;
}

// Row span membership: does v lie in the row space of the RREF matrix m?
inline bool fp_in_rowspan(const FpMat& rref, const std::vector<std::size_t>& pivots,
                          std::vector<long> v) {
    const long p = rref.p;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const long f = fp_normalize(v[pivots[r]], p);
        if (f == 0) continue;
        for (std::size_t j = 0; j < rref.cols; ++j)
            v[j] = fp_normalize(v[j] - f * rref.at(r, j), p);
    }
    for (long x : v)
        if (fp_normalize(x, p) != 0) return false;
    return true;
}

inline FpMat fp_mul(const FpMat& x, const FpMat& y) {
    if (x.cols != y.rows || x.p != y.p) throw InternalError("fp_mul: shape mismatch");
    FpMat z(Prime(x.p), x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const long f = x.at(i, k);
            if (f == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z.at(i, j) = fp_normalize(z.at(i, j) + f * y.at(k, j), x.p);
        }
    return z;
}

}  // namespace porder
