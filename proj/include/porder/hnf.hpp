#pragma once

// Canonical bases of Z_(p)-lattices: a p-local Hermite form.
//
// The canonical form of a row span: rows in echelon order, each pivot an
// exact power of p, every entry above a pivot the canonical residue mod
// that pivot, prime-to-p content stripped.  It is a class function of the
// Z_(p)-row-span, which is what makes lattice equality a plain matrix
// comparison everywhere else.

#include <porder/matrix.hpp>
#include <porder/rational.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace porder {

struct LocalHnf {
    Mat basis;  // r x n, canonical
    std::vector<std::size_t> pivot_cols;
    std::vector<long> pivot_vals;  // v_p of each pivot
};

// p^e as a rational, e of either sign.
inline Rat rat_p_pow(Prime p, long e) {
    if (e >= 0) return Rat(int_pow(p.v, e));
    return Rat(1) / Rat(int_pow(p.v, -e));
}

// Canonical representative of e modulo p^v * Z_(p): zero if v_p(e) >= v,
// otherwise a/p^m with m = max(0, -v_p(e)) and a in [0, p^(v+m)).
inline Rat canon_residue(const Rat& e, long v, Prime p) {
    if (e == 0) return Rat(0);
    const long w = pval(e, p);
    if (w >= v) return Rat(0);
    const Rat u = e / rat_p_pow(p, w);  // p-adic unit
    const Int pd = int_pow(p.v, v - w);
    Int den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), u.get_den().get_mpz_t(),
                   pd.get_mpz_t()) == 0)
        throw InternalError("canon_residue: denominator not invertible");
    Int ahat = u.get_num() * den_inv;
    mpz_mod(ahat.get_mpz_t(), ahat.get_mpz_t(), pd.get_mpz_t());
    return Rat(ahat) * rat_p_pow(p, w);
}

namespace detail {

using IntRows = std::vector<std::vector<Int>>;

// Clear denominators: returns (W, t) with W integer and the Z_(p)-span of
// W equal to p^t times the span of m (the prime-to-p part of the scalar is
// a unit and irrelevant to the span).
inline std::pair<IntRows, long> scale_to_integers(const Mat& m, Prime p) {
    Int lcm = 1;
    for (const auto& e : m.a)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.get_den().get_mpz_t());
    const long t = pval(lcm, p);
    IntRows w(m.rows, std::vector<Int>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            const Rat& e = m.at(i, j);
            w[i][j] = e.get_num() * Int(lcm / e.get_den());
        }
    return {std::move(w), t};
}

// Divide a row by its prime-to-p content (a unit, so span-preserving);
// keeps the integers small on the unreduced path.
inline void strip_row_content(std::vector<Int>& row, Prime p) {
    Int g = 0;
    for (const auto& e : row) {
        if (e == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 0 || g == 1) return;
    const Int u = strip_p(g, p);
    if (u == 1) return;
    for (auto& e : row) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), u.get_mpz_t());
}

struct Echelon {
    IntRows rows;
    std::vector<std::size_t> pivot_cols;
    std::vector<long> pivot_vals;  // valuations of the scaled integer pivots
};

// Forward elimination over Z_(p) using only p-unit row coefficients, so the
// span is preserved exactly.  Pivot choice: minimal valuation, ties to the
// lowest row index.  When `modulus` (= p^(E+t), with p^(E+t) Z^n known to
// lie inside the scaled span) is supplied, the caller has already stacked
// p^(E+t) times the identity into the rows; reducing entries modulo it only
// ever subtracts multiples of those stacked rows, so every step stays an
// exact lattice operation while the integers stay a few words long.
inline Echelon eliminate(IntRows rows, std::size_t n, Prime p,
                         const std::optional<Int>& modulus) {
    // Representative range (0, modulus] for nonzero entries: a nonzero entry
    // that is an exact multiple of p^(E+t) must not collapse to zero, or a
    // column whose true valuations all exceed E+t would lose its pivot.
    // Replacing it by the modulus itself only subtracts a multiple of a
    // stacked row, which lies in the span.
    auto reduce_entry = [&](Int& e) {
        if (!modulus || e == 0) return;
        mpz_mod(e.get_mpz_t(), e.get_mpz_t(), modulus->get_mpz_t());
        if (e == 0) e = *modulus;
    };
    for (auto& row : rows)
        for (auto& e : row) reduce_entry(e);

    const std::size_t m = rows.size();
    Echelon out;
    std::size_t r = 0;
    Int g, ca, cb;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t best = m;
        long bestv = 0;
        for (std::size_t i = r; i < m; ++i) {
            if (rows[i][col] == 0) continue;
            const long v = pval(rows[i][col], p);
            if (best == m || v < bestv) {
                best = i;
                bestv = v;
            }
        }
        if (best == m) continue;
        std::swap(rows[best], rows[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (rows[i][col] == 0) continue;
            const Int& a = rows[r][col];
            const Int& b = rows[i][col];
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            // v_p(a) is minimal in the column, so a/g is a p-adic unit and
            // row_i <- (a/g) row_i - (b/g) row_r keeps the span.
            ca = a / g;
            cb = b / g;
            for (std::size_t j = col; j < n; ++j) {
                rows[i][j] *= ca;
                mpz_submul(rows[i][j].get_mpz_t(), cb.get_mpz_t(),
                           rows[r][j].get_mpz_t());
                reduce_entry(rows[i][j]);
            }
            if (!modulus) strip_row_content(rows[i], p);
        }
        out.pivot_cols.push_back(col);
        out.pivot_vals.push_back(bestv);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        for (const auto& e : rows[i])
            if (e != 0) throw InternalError("eliminate: residue below echelon");
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

}  // namespace detail

// Full canonicalization of integer rows w scaled by p^-t.  `contained_exp`,
// when given, promises p^contained_exp * Z^n is inside the row span
// (unscaled), enabling modular arithmetic; `demand_full_rank` turns
// rank < cols into an error.
inline LocalHnf local_hnf_scaled(detail::IntRows w, long t, std::size_t n,
                                 Prime p,
                                 std::optional<long> contained_exp = std::nullopt,
                                 bool demand_full_rank = false) {
    std::optional<Int> modulus;
    if (contained_exp) {
        const long e = *contained_exp + t;
        if (e < 0)
            throw InternalError("local_hnf: contained_exp exceeds the span");
        if (e == 0) {
            // p^0 Z^n inside a span of integer rows: the span is Z^n itself.
            LocalHnf out;
            out.basis = mat_scale(Mat::identity(n), rat_p_pow(p, -t));
            for (std::size_t j = 0; j < n; ++j) {
                out.pivot_cols.push_back(j);
                out.pivot_vals.push_back(-t);
            }
            return out;
        }
        const Int pe = int_pow(p.v, e);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Int> row(n);
            row[j] = pe;
            w.push_back(std::move(row));
        }
        modulus = pe;
    }

    auto ech = detail::eliminate(std::move(w), n, p, modulus);
    const std::size_t r = ech.rows.size();
    if (demand_full_rank && r < n)
        throw DegenerateLatticeError("local_hnf: rank-deficient lattice basis");

    LocalHnf out;
    out.pivot_cols = ech.pivot_cols;
    out.basis = Mat(r, n);
    const Rat pt = rat_p_pow(p, t);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (ech.rows[i][j] != 0)
                out.basis.at(i, j) = Rat(ech.rows[i][j]) / pt;
    for (long v : ech.pivot_vals) out.pivot_vals.push_back(v - t);

    // Pivots become exact p-powers; the unit parts are stripped row-wise.
    for (std::size_t k = 0; k < r; ++k) {
        const Rat u =
            out.basis.at(k, out.pivot_cols[k]) / rat_p_pow(p, out.pivot_vals[k]);
        if (u != 1)
            for (std::size_t j = out.pivot_cols[k]; j < n; ++j)
                out.basis.at(k, j) /= u;
    }
    // Entries above each pivot reduced to their canonical residues; the
    // subtracted coefficients are p-integral, so the span is untouched.
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t ck = out.pivot_cols[k];
        const Rat piv = rat_p_pow(p, out.pivot_vals[k]);
        for (std::size_t i = 0; i < k; ++i) {
            const Rat& e = out.basis.at(i, ck);
            if (e == 0) continue;
            const Rat rep = canon_residue(e, out.pivot_vals[k], p);
            const Rat q = (e - rep) / piv;
            if (q == 0) continue;
            for (std::size_t j = ck; j < n; ++j)
                out.basis.at(i, j) -= q * out.basis.at(k, j);
        }
    }
    return out;
}

inline LocalHnf local_hnf_ex(const Mat& m, Prime p,
                             std::optional<long> contained_exp = std::nullopt,
                             bool demand_full_rank = false) {
    auto [w, t] = detail::scale_to_integers(m, p);
    return local_hnf_scaled(std::move(w), t, m.cols, p, contained_exp,
                            demand_full_rank);
}

// Canonical basis of the Z_(p)-row-span, any rank.
inline Mat local_hnf(const Mat& m, Prime p) { return local_hnf_ex(m, p).basis; }

// ---------------------------------------------------------------------------
// Independent construction used as a cross-check in the tests: clear
// denominators, stack p^N times the identity (N the valuation of the integer
// determinant), run a classical integer Hermite reduction, and undo the
// scaling.  Square nonsingular input only.

namespace detail {

inline Mat integer_hnf(IntRows rows, std::size_t n) {
    const std::size_t m = rows.size();
    std::size_t r = 0;
    Int q;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        // Euclid on the column below r until one nonzero entry survives.
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i) {
                if (rows[i][col] == 0) continue;
                if (best == m ||
                    cmp(abs(rows[i][col]), abs(rows[best][col])) < 0)
                    best = i;
            }
            if (best == m) break;
            std::swap(rows[best], rows[r]);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (rows[i][col] == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                           rows[r][col].get_mpz_t());
                for (std::size_t j = col; j < n; ++j)
                    mpz_submul(rows[i][j].get_mpz_t(), q.get_mpz_t(),
                               rows[r][j].get_mpz_t());
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][col] == 0) continue;
        if (rows[r][col] < 0)
            for (std::size_t j = col; j < n; ++j) rows[r][j] = -rows[r][j];
        for (std::size_t i = 0; i < r; ++i) {
            mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                       rows[r][col].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t j = col; j < n; ++j)
                mpz_submul(rows[i][j].get_mpz_t(), q.get_mpz_t(),
                           rows[r][j].get_mpz_t());
        }
        ++r;
    }
    Mat out(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = Rat(rows[i][j]);
    return out;
}

}  // namespace detail

inline Mat local_hnf_recipe(const Mat& m, Prime p) {
    if (m.rows != m.cols)
        throw PreconditionError("local_hnf_recipe: square input required");
    const std::size_t n = m.cols;
    auto [w, t] = detail::scale_to_integers(m, p);

    Mat wq(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) wq.at(i, j) = Rat(w[i][j]);
    const Rat d = mat_det(wq);
    if (d == 0)
        throw DegenerateLatticeError("local_hnf_recipe: singular input");
    const long bign = pval(d, p);

    const Int pn = int_pow(p.v, bign);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> row(n);
        row[j] = pn;
        w.push_back(std::move(row));
    }
    Mat h = detail::integer_hnf(std::move(w), n);
    if (h.rows != n) throw InternalError("local_hnf_recipe: rank drop");
    return mat_scale(h, rat_p_pow(p, -t));
}

// ---------------------------------------------------------------------------
// Saturated left kernel: canonical basis of {y in Z_(p)^rows : y C = 0}.
// Rank-deficient by nature, so this never demands full rank.

inline std::vector<std::size_t> rat_rref(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t piv = r;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols; ++j)
                std::swap(m.at(piv, j), m.at(r, j));
        const Rat d = m.at(r, col);
        for (std::size_t j = col; j < m.cols; ++j) m.at(r, j) /= d;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            const Rat f = m.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

inline Mat saturated_left_kernel(const Mat& c, Prime p) {
    // Q-basis of the left kernel via RREF of the transpose.
    Mat ct = mat_transpose(c);
    const auto pivots = rat_rref(ct);
    std::vector<bool> is_pivot(c.rows, false);
    for (auto j : pivots) is_pivot[j] = true;
    const std::size_t k = c.rows - pivots.size();
    Mat kq(k, c.rows);
    std::size_t row = 0;
    for (std::size_t free_col = 0; free_col < c.rows; ++free_col) {
        if (is_pivot[free_col]) continue;
        kq.at(row, free_col) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            kq.at(row, pivots[r]) = -ct.at(r, free_col);
        ++row;
    }
    if (k == 0) return Mat(0, c.rows);

    // Saturate: y = lambda * Kq is p-integral iff lambda pairs integrally
    // with every column of Kq, i.e. lambda lies in the standard dual of the
    // column lattice.
    Mat cols = mat_transpose(kq);  // c.rows x k, full column rank k
    const Mat bc = local_hnf_ex(cols, p, std::nullopt, false).basis;
    if (bc.rows != k) throw InternalError("saturated_left_kernel: rank drop");
    const Mat lambda = mat_transpose(rat_inverse(bc));
    return local_hnf(mat_mul(lambda, kq), p);
}

}  // namespace porder
