#pragma once

// Finite-dimensional F_p-algebras: the reduction Λ/pΛ of an order in its own
// basis, plus ideal generation and quotient construction used by the radical
// machinery and its oracles.

#include <porder/fp_linalg.hpp>
#include <porder/lattice.hpp>
#include <porder/rational.hpp>

#include <cstddef>
#include <vector>

namespace porder {

struct FpAlgebra {
    long p = 0;
    std::size_t dim = 0;
    std::vector<long> sc;    // residues in [0, p), e_i e_j = sum sc(i,j,k) e_k
    std::vector<long> unit;  // coordinates of 1, in [0, p)

    long c(std::size_t i, std::size_t j, std::size_t k) const {
        return sc[(i * dim + j) * dim + k];
    }
};

inline std::vector<long> fp_mul_vec(const std::vector<long>& x,
                                    const std::vector<long>& y,
                                    const FpAlgebra& A) {
    const std::size_t n = A.dim;
    std::vector<long> z(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            const long f = x[i] * y[j] % A.p;
            if (f == 0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                const long c = A.c(i, j, k);
                if (c) z[k] = (z[k] + f * c) % A.p;
            }
        }
    }
    return z;
}

inline bool fp_is_commutative(const FpAlgebra& A) {
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = i + 1; j < A.dim; ++j)
            for (std::size_t k = 0; k < A.dim; ++k)
                if (A.c(i, j, k) != A.c(j, i, k)) return false;
    return true;
}

// Λ/pΛ in the basis of the order: structure constants of the basis rows,
// reduced mod p.  The integer kernel divides the scaled product rows by the
// exact p-power p^(tmax + adj_den).
inline FpAlgebra fp_algebra_from_order(const OrderLat& order) {
    const Algebra& alg = *order.alg;
    const Lattice& L = order.lat;
    const std::size_t n = alg.dim;
    FpAlgebra A;
    A.p = alg.p.v;
    A.dim = n;
    A.sc.assign(n * n * n, 0);

    if (alg.integral_sc) {
        detail::IntRows prods = detail::product_rows(L, L, alg);
        const Int div = int_pow(A.p, L.tmax + L.adj_den);
        Int s, q;
        for (std::size_t ij = 0; ij < n * n; ++ij)
            for (std::size_t k = 0; k < n; ++k) {
                s = 0;
                for (std::size_t m = 0; m < n; ++m)
                    if (prods[ij][m] != 0 && L.adj.at(m, k) != 0)
                        mpz_addmul(s.get_mpz_t(), prods[ij][m].get_mpz_t(),
                                   L.adj.at(m, k).get_mpz_t());
                if (!mpz_divisible_p(s.get_mpz_t(), div.get_mpz_t()))
                    throw InternalError(
                        "fp_algebra_from_order: non-integral coefficient");
                mpz_divexact(q.get_mpz_t(), s.get_mpz_t(), div.get_mpz_t());
                A.sc[ij * n + k] =
                    fp_normalize(mpz_fdiv_ui(q.get_mpz_t(), A.p), A.p);
            }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Vec z =
                    element_mul(lattice_row(L, i), lattice_row(L, j), alg);
                Mat row(1, n);
                for (std::size_t k = 0; k < n; ++k) row.at(0, k) = z[k];
                const FpMat r = fp_reduce(mat_mul(row, L.binv), alg.p);
                for (std::size_t k = 0; k < n; ++k)
                    A.sc[(i * n + j) * n + k] = r.at(0, k);
            }
    }

    Mat u(1, n);
    for (std::size_t k = 0; k < n; ++k) u.at(0, k) = alg.unit[k];
    const FpMat ur = fp_reduce(mat_mul(u, L.binv), alg.p);
    A.unit.assign(ur.a.begin(), ur.a.end());
    return A;
}

// Row-reduced basis of the two-sided ideal generated by the given rows:
// closure under left and right multiplication by all basis elements.
inline FpMat fp_ideal_generated(const FpAlgebra& A, const FpMat& gens) {
    const std::size_t n = A.dim;
    FpMat work = gens;
    fp_rref(work);
    for (;;) {
        const std::size_t before = work.rows;
        FpMat next(Prime(A.p), 0, n);
        next.a.reserve((1 + 2 * n) * work.rows * n);
        auto push = [&](const std::vector<long>& v) {
            next.a.insert(next.a.end(), v.begin(), v.end());
            ++next.rows;
        };
        for (std::size_t r = 0; r < work.rows; ++r) {
            std::vector<long> row(work.a.begin() + r * n,
                                  work.a.begin() + (r + 1) * n);
            push(row);
            for (std::size_t b = 0; b < n; ++b) {
                std::vector<long> eb(n, 0);
                eb[b] = 1;
                push(fp_mul_vec(eb, row, A));
                push(fp_mul_vec(row, eb, A));
            }
        }
        fp_rref(next);
        work = std::move(next);
        if (work.rows == before) return work;
    }
}

// Quotient A / I for a two-sided ideal I given as rref rows: the images of
// the non-pivot basis elements form a basis, and products reduce mod I.
inline FpAlgebra fp_quotient(const FpAlgebra& A, const FpMat& ideal_rref,
                             const std::vector<std::size_t>& pivots) {
    const std::size_t n = A.dim;
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> comp;
    for (std::size_t k = 0; k < n; ++k)
        if (!is_pivot[k]) comp.push_back(k);
    const std::size_t m = comp.size();

    // Reduce a vector mod the ideal and read off complement coordinates.
    auto project = [&](std::vector<long> v) {
        for (std::size_t r = 0; r < ideal_rref.rows; ++r) {
            const long f = v[pivots[r]] % A.p;
            if (f == 0) continue;
            for (std::size_t k = 0; k < n; ++k)
                v[k] = fp_normalize(v[k] - f * ideal_rref.at(r, k), A.p);
        }
        std::vector<long> w(m);
        for (std::size_t k = 0; k < m; ++k) w[k] = v[comp[k]];
        return w;
    };

    FpAlgebra Q;
    Q.p = A.p;
    Q.dim = m;
    Q.sc.assign(m * m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<long> ei(n, 0), ej(n, 0);
            ei[comp[i]] = 1;
            ej[comp[j]] = 1;
            const auto w = project(fp_mul_vec(ei, ej, A));
            for (std::size_t k = 0; k < m; ++k)
                Q.sc[(i * m + j) * m + k] = w[k];
        }
    Q.unit = project(A.unit);
    return Q;
}

}  // namespace porder
