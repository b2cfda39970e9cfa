#pragma once

// Full Z_(p)-lattices in an ambient algebra, stored in canonical form with
// cached scaled-integer data (basis * p^t, triangular adjugate) so that
// membership, containment and index computations run in plain integer
// arithmetic.

#include <porder/algebra.hpp>
#include <porder/hnf.hpp>
#include <porder/matrix.hpp>
#include <porder/rational.hpp>
#include <porder/symform.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace porder {

struct Lattice {
    Mat basis;  // n x n, canonical (upper triangular, p-power pivots)
    Prime p;
    std::vector<long> pivot_vals;  // valuations of the diagonal pivots
    long detv = 0;                 // v_p(det basis) = sum of pivot_vals
    long tmax = 0;                 // basis * p^tmax is integral
    long gamma = 0;                // p^gamma Lambda_0 is inside the lattice
    IMat scaled;                   // U = basis * p^tmax
    IMat adj;                      // adj(U) = p^adj_den * U^{-1}, integral
    long adj_den = 0;              // = detv + n*tmax (det U is a pure p-power)
    Mat binv;                      // exact basis^{-1}
};

namespace detail {

inline Lattice lattice_from_hnf(LocalHnf h, Prime p) {
    const std::size_t n = h.basis.cols;
    if (h.basis.rows != n)
        throw InternalError("lattice_from_hnf: non-square canonical basis");
    Lattice L{std::move(h.basis), p, std::move(h.pivot_vals), 0, 0, 0,
              IMat(), IMat(), 0, Mat()};
    for (long v : L.pivot_vals) L.detv += v;
    for (const auto& e : L.basis.a)
        if (e != 0) L.tmax = std::max(L.tmax, -pval(e, p));

    // Scaled integer basis U = basis * p^tmax.
    const Int pt = int_pow(p.v, L.tmax);
    L.scaled = IMat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& e = L.basis.at(i, j);
            if (e == 0) continue;
            Int num = e.get_num() * pt;
            mpz_divexact(num.get_mpz_t(), num.get_mpz_t(),
                         e.get_den().get_mpz_t());
            L.scaled.at(i, j) = num;
        }

    // adj(U) via back substitution: U is upper triangular with diagonal
    // p^(pivot_val + tmax), so det U = p^adj_den and the divisions below are
    // exact in Z.
    L.adj_den = L.detv + static_cast<long>(n) * L.tmax;
    const Int pd = int_pow(p.v, L.adj_den);
    L.adj = IMat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        // Solve U * col = p^adj_den * e_j from the diagonal upward.
        L.adj.at(j, j) = pd / int_pow(p.v, L.pivot_vals[j] + L.tmax);
        for (std::size_t i = j; i-- > 0;) {
            Int s = 0;
            for (std::size_t k = i + 1; k <= j; ++k)
                if (L.scaled.at(i, k) != 0)
                    mpz_addmul(s.get_mpz_t(), L.scaled.at(i, k).get_mpz_t(),
                               L.adj.at(k, j).get_mpz_t());
            if (s == 0) continue;
            s = -s;
            const Int d = int_pow(p.v, L.pivot_vals[i] + L.tmax);
            mpz_divexact(s.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
            L.adj.at(i, j) = s;
        }
    }

    // binv = adj / p^(adj_den - tmax); gamma from its worst denominator.
    const long shift = L.adj_den - L.tmax;
    const Rat psh = rat_p_pow(p, shift);
    L.binv = Mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Int& a = L.adj.at(i, j);
            if (a == 0) continue;
            L.binv.at(i, j) = Rat(a) / psh;
            L.gamma = std::max(L.gamma, -pval(L.binv.at(i, j), p));
        }
    return L;
}

inline IMat imat_mul(const IMat& x, const IMat& y) {
    if (x.cols != y.rows) throw InternalError("imat_mul: shape mismatch");
    IMat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Int& f = x.at(i, k);
            if (f == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (y.at(k, j) != 0)
                    mpz_addmul(z.at(i, j).get_mpz_t(), f.get_mpz_t(),
                               y.at(k, j).get_mpz_t());
        }
    return z;
}

// Do all entries of x have valuation >= need?
inline bool imat_val_at_least(const IMat& x, Prime p, long need) {
    if (need <= 0) return true;
    const Int pn = int_pow(p.v, need);
    for (const auto& e : x.a) {
        if (e == 0) continue;
        if (!mpz_divisible_p(e.get_mpz_t(), pn.get_mpz_t())) return false;
    }
    return true;
}

}  // namespace detail

inline Lattice lattice_from_generators(
    const Mat& rows, Prime p,
    std::optional<long> contained_exp = std::nullopt) {
    return detail::lattice_from_hnf(
        local_hnf_ex(rows, p, contained_exp, true), p);
}

inline Lattice lattice_from_scaled(detail::IntRows rows, long t, std::size_t n,
                                   Prime p, std::optional<long> contained_exp) {
    return detail::lattice_from_hnf(
        local_hnf_scaled(std::move(rows), t, n, p, contained_exp, true), p);
}

inline Lattice standard_lattice(std::size_t n, Prime p) {
    return lattice_from_generators(Mat::identity(n), p, 0L);
}

inline bool lattice_eq(const Lattice& a, const Lattice& b) {
    return a.basis == b.basis;
}

// x = y * basis with y p-integral?
inline bool member(const Vec& x, const Lattice& L) {
    const std::size_t n = L.basis.rows;
    if (x.size() != n) throw PreconditionError("member: length mismatch");
    for (std::size_t j = 0; j < n; ++j) {
        Rat y;
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] != 0 && L.binv.at(i, j) != 0) y += x[i] * L.binv.at(i, j);
        if (y != 0 && pval(y, L.p) < 0) return false;
    }
    return true;
}

// Every row of `rows` (meaning rows / p^t) lies in L?
inline bool contains_scaled_rows(const Lattice& L, const IMat& rows, long t) {
    const IMat prod = detail::imat_mul(rows, L.adj);
    return detail::imat_val_at_least(prod, L.p, t + L.adj_den - L.tmax);
}

inline bool contains(const Lattice& sup, const Lattice& sub) {
    return contains_scaled_rows(sup, sub.scaled, sub.tmax);
}

// v_p of [sup : sub]; containment is a checked precondition.
inline long index_val(const Lattice& sub, const Lattice& sup) {
    if (!contains(sup, sub))
        throw PreconditionError("index_val: first lattice not inside second");
    return sub.detv - sup.detv;
}

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    if (a.p != b.p) throw PreconditionError("lattice_sum: prime mismatch");
    const std::size_t n = a.basis.cols;
    const long t = std::max(a.tmax, b.tmax);
    const Int fa = int_pow(a.p.v, t - a.tmax), fb = int_pow(a.p.v, t - b.tmax);
    detail::IntRows rows;
    rows.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = a.scaled.at(i, j) * fa;
        rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = b.scaled.at(i, j) * fb;
        rows.push_back(std::move(r));
    }
    return lattice_from_scaled(std::move(rows), t, n, a.p,
                               std::min(a.gamma, b.gamma));
}

namespace detail {

// Scaled products of all basis pairs of two lattices: integer rows over
// p^(ta+tb).  Uses the integer structure-constant kernel when available.
inline IntRows product_rows(const Lattice& a, const Lattice& b,
                            const Algebra& alg) {
    const std::size_t n = alg.dim;
    IntRows rows(n * n, std::vector<Int>(n));
    if (alg.integral_sc) {
        Int t;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto& z = rows[i * n + j];
                for (std::size_t x = 0; x < n; ++x) {
                    const Int& ax = a.scaled.at(i, x);
                    if (ax == 0) continue;
                    for (std::size_t y = 0; y < n; ++y) {
                        const Int& by = b.scaled.at(j, y);
                        if (by == 0) continue;
                        for (const auto& [k, c] : alg.pairs_z[x * n + y]) {
                            if (c == 1) {
                                mpz_addmul(z[k].get_mpz_t(), ax.get_mpz_t(),
                                           by.get_mpz_t());
                            } else {
                                t = ax * by;
                                mpz_addmul(z[k].get_mpz_t(), t.get_mpz_t(),
                                           c.get_mpz_t());
                            }
                        }
                    }
                }
            }
        return rows;
    }
    // General rationals: products over Q, then rescale by p^(ta+tb).  The
    // structure constants have p'-denominators, so the rescaled entries can
    // carry unit denominators; clear them per full row set via lcm.
    throw InternalError("product_rows: integral kernel expected");
}

}  // namespace detail

inline Lattice lattice_product(const Lattice& a, const Lattice& b,
                               const Algebra& alg) {
    const std::size_t n = alg.dim;
    if (a.p != b.p || a.p != alg.p)
        throw PreconditionError("lattice_product: prime mismatch");
    const long bound = a.gamma + b.gamma + alg.gamma0;
    if (alg.integral_sc)
        return lattice_from_scaled(detail::product_rows(a, b, alg),
                                   a.tmax + b.tmax, n, a.p, bound);
    Mat rows(n * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec ai(n);
        for (std::size_t k = 0; k < n; ++k) ai[k] = a.basis.at(i, k);
        for (std::size_t j = 0; j < n; ++j) {
            Vec bj(n);
            for (std::size_t k = 0; k < n; ++k) bj[k] = b.basis.at(j, k);
            const Vec z = element_mul(ai, bj, alg);
            for (std::size_t k = 0; k < n; ++k) rows.at(i * n + j, k) = z[k];
        }
    }
    return lattice_from_generators(rows, a.p, bound);
}

// Dual with respect to the form: basis (B * gram)^{-T}, canonicalized.  The
// dual contains p^(tmax + g0) Lambda_0, which bounds the canonicalization.
inline Lattice dual_lattice(const Lattice& L, const SymForm& f) {
    const Mat rows = mat_transpose(mat_mul(f.gram_inv, L.binv));
    return lattice_from_generators(rows, L.p, L.tmax + f.g0);
}

inline Lattice lattice_intersect(const Lattice& a, const Lattice& b,
                                 const SymForm& f) {
    return dual_lattice(lattice_sum(dual_lattice(a, f), dual_lattice(b, f)),
                        f);
}

inline Vec lattice_row(const Lattice& L, std::size_t i) {
    Vec v(L.basis.cols);
    for (std::size_t j = 0; j < L.basis.cols; ++j) v[j] = L.basis.at(i, j);
    return v;
}

// Unit membership plus multiplicative closure.
inline bool is_order(const Lattice& L, const Algebra& alg) {
    if (!member(alg.unit, L)) return false;
    const std::size_t n = alg.dim;
    if (alg.integral_sc) {
        detail::IntRows prod = detail::product_rows(L, L, alg);
        IMat pm(n * n, n);
        for (std::size_t i = 0; i < n * n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                pm.at(i, j) = std::move(prod[i][j]);
        return contains_scaled_rows(L, pm, 2 * L.tmax);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!member(element_mul(lattice_row(L, i), lattice_row(L, j), alg),
                        L))
                return false;
    return true;
}

// An order: a full lattice containing 1 and closed under multiplication.
struct OrderLat {
    Lattice lat;
    const Algebra* alg = nullptr;
};

// `internal` selects the error type: false for user-supplied data, true for
// results of our own operations whose failure would indicate a bug.
inline OrderLat make_order(Lattice L, const Algebra& alg,
                           bool internal = false) {
    if (!is_order(L, alg)) {
        if (internal)
            throw InternalError("make_order: computed lattice is not an order");
        throw ValidationError("make_order: lattice is not an order");
    }
    return OrderLat{std::move(L), &alg};
}

}  // namespace porder
