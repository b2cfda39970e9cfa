#pragma once

// Jacobson radicals.  Over F_p the plain trace form only cuts out the
// radical in characteristic zero, so fp_radical uses the layered method for
// prime fields: round j keeps the kernel of the forms
//     (x, y) -> tr(M_{xy}^{p^j}) / p^j  (mod p),
// where M_z is any integer lift of the regular representation of z.  The
// classical congruence tr((X+pY)^{p^j}) = tr(X^{p^j}) mod p^{j+1} makes the
// value independent of every lift choice, so the whole computation runs in
// machine integers mod p^{j+1}.

#include <porder/fp_algebra.hpp>
#include <porder/fp_linalg.hpp>
#include <porder/lattice.hpp>
#include <porder/orders.hpp>
#include <porder/rational.hpp>
#include <porder/symform.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace porder {

namespace detail {

// Dense n x n product of int64 matrices with entries reduced mod m.
inline void modmat_mul(const std::vector<std::int64_t>& x,
                       const std::vector<std::int64_t>& y,
                       std::vector<std::int64_t>& out, std::size_t n,
                       std::int64_t m) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const std::int64_t f = x[i * n + k];
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                out[i * n + j] = (out[i * n + j] + f * y[k * n + j]) % m;
        }
}

// tr(Q^(p^j)) mod p^(j+1) by j successive p-th powers.
inline std::int64_t power_trace(std::vector<std::int64_t> q, std::size_t n,
                                long p, long j, std::int64_t m) {
    std::vector<std::int64_t> t1(n * n), t2(n * n);
    for (long step = 0; step < j; ++step) {
        // q <- q^p
        t1 = q;
        for (long e = 1; e < p; ++e) {
            modmat_mul(t1, q, t2, n, m);
            std::swap(t1, t2);
        }
        q = t1;
    }
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr = (tr + q[i * n + i]) % m;
    return tr;
}

inline FpMat fp_radical_core(const FpAlgebra& A) {
    const long p = A.p;
    const std::size_t n = A.dim;
    long l = 0;
    while (int_pow(p, l) < static_cast<long>(n) * 1) ++l;

    // Integer lifts of the left regular representations of the basis:
    // Mreg[i][j*n+k] = c(i,j,k), so multiplication by x = sum x_i e_i is
    // y -> y * (sum x_i Mreg[i]) on row vectors.  Traces only need the
    // matrix, not an orientation.
    std::vector<std::vector<std::int64_t>> mreg(n,
                                               std::vector<std::int64_t>(n * n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                mreg[i][j * n + k] = A.c(i, j, k);

    FpMat basis(Prime(p), n, n);
    for (std::size_t i = 0; i < n; ++i) basis.at(i, i) = 1;

    std::vector<std::int64_t> mz(n * n), mx(n * n), my(n * n), prod(n * n);
    for (long j = 0; j <= l && basis.rows > 0; ++j) {
        const std::int64_t mod = int_pow(p, j + 1).get_si();
        const std::int64_t pj = int_pow(p, j).get_si();
        const std::size_t r = basis.rows;

        // Lift matrices of the current basis rows.
        std::vector<std::vector<std::int64_t>> lifts(r);
        for (std::size_t s = 0; s < r; ++s) {
            std::fill(mx.begin(), mx.end(), 0);
            for (std::size_t i = 0; i < n; ++i) {
                const long xi = basis.at(s, i);
                if (xi == 0) continue;
                for (std::size_t e = 0; e < n * n; ++e)
                    mx[e] = (mx[e] + xi * mreg[i][e]) % mod;
            }
            lifts[s] = mx;
        }

        FpMat cnd(Prime(p), r, r);
        for (std::size_t s = 0; s < r; ++s)
            for (std::size_t t = 0; t < r; ++t) {
                std::int64_t tr;
                if (j == 0) {
                    // tr(AB) without forming the product.
                    tr = 0;
                    for (std::size_t a = 0; a < n; ++a)
                        for (std::size_t b = 0; b < n; ++b)
                            tr = (tr +
                                  lifts[s][a * n + b] * lifts[t][b * n + a]) %
                                 mod;
                } else {
                    modmat_mul(lifts[s], lifts[t], prod, n, mod);
                    tr = power_trace(prod, n, p, j, mod);
                }
                if (tr % pj != 0)
                    throw InternalError(
                        "fp_radical: power trace misses forced divisibility");
                cnd.at(s, t) = fp_normalize(tr / pj, p);
            }

        // Next layer: left kernel of cnd, pulled back through the basis.
        FpMat ker = fp_kernel([&] {
            FpMat ct(Prime(p), r, r);
            for (std::size_t s = 0; s < r; ++s)
                for (std::size_t t = 0; t < r; ++t) ct.at(t, s) = cnd.at(s, t);
            return ct;
        }());
        basis = fp_mul(ker, basis);
        fp_rref(basis);
    }
    return basis;
}

}  // namespace detail

// Radical of an F_p-algebra with asserted postconditions: the result is a
// two-sided ideal, it is nilpotent, and the quotient algebra has radical
// zero.
inline FpMat fp_radical(const FpAlgebra& A) {
    FpMat rad = detail::fp_radical_core(A);
    const std::vector<std::size_t> pivots = fp_rref(rad);
    const std::size_t n = A.dim;

    // Two-sided ideal.
    for (std::size_t r = 0; r < rad.rows; ++r) {
        const std::vector<long> row(rad.a.begin() + r * n,
                                    rad.a.begin() + (r + 1) * n);
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<long> eb(n, 0);
            eb[b] = 1;
            if (!fp_in_rowspan(rad, pivots, fp_mul_vec(eb, row, A)) ||
                !fp_in_rowspan(rad, pivots, fp_mul_vec(row, eb, A)))
                throw InternalError("fp_radical: result is not an ideal");
        }
    }

    // Nilpotency: S_{k+1} = S_k * rad shrinks to zero within dim steps.
    FpMat power = rad;
    for (std::size_t step = 0; power.rows > 0; ++step) {
        if (step >= n)
            throw InternalError("fp_radical: result is not nilpotent");
        FpMat next(Prime(A.p), 0, n);
        for (std::size_t i = 0; i < power.rows; ++i) {
            const std::vector<long> u(power.a.begin() + i * n,
                                      power.a.begin() + (i + 1) * n);
            for (std::size_t j = 0; j < rad.rows; ++j) {
                const std::vector<long> v(rad.a.begin() + j * n,
                                          rad.a.begin() + (j + 1) * n);
                const auto w = fp_mul_vec(u, v, A);
                next.a.insert(next.a.end(), w.begin(), w.end());
                ++next.rows;
            }
        }
        fp_rref(next);
        power = std::move(next);
    }

    // Semisimple quotient: recomputation there must give zero.
    if (rad.rows > 0) {
        const FpAlgebra Q = fp_quotient(A, rad, pivots);
        if (detail::fp_radical_core(Q).rows != 0)
            throw InternalError("fp_radical: quotient still has radical");
    }
    return rad;
}

// Independent oracle: x lies in the radical iff the two-sided ideal it
// generates is nilpotent, and the radical is exactly the set of such x.
// Element nilpotency prefilters (x sits inside its own ideal); in the
// commutative case it is already equivalent, which keeps the enumeration
// affordable.
inline FpMat brute_force_radical(const FpAlgebra& A) {
    const std::size_t n = A.dim;
    const long p = A.p;
    Int total = int_pow(p, static_cast<long>(n));
    if (total > 65536)
        throw GuardError("brute_force_radical: p^dim exceeds 2^16");
    const long count = total.get_si();
    const bool comm = fp_is_commutative(A);

    long pow2 = 1;
    while (static_cast<std::size_t>(pow2) < n) pow2 *= 2;

    auto elem_nilpotent = [&](std::vector<long> x) {
        for (long e = 1; e < 2 * pow2; e *= 2) x = fp_mul_vec(x, x, A);
        for (long v : x)
            if (v != 0) return false;
        return true;
    };
    auto ideal_nilpotent = [&](const std::vector<long>& x) {
        FpMat gen(Prime(p), 1, n);
        for (std::size_t k = 0; k < n; ++k) gen.at(0, k) = x[k];
        FpMat ideal = fp_ideal_generated(A, gen);
        FpMat power = ideal;
        for (std::size_t step = 0; step <= n; ++step) {
            if (power.rows == 0) return true;
            FpMat next(Prime(p), 0, n);
            for (std::size_t i = 0; i < power.rows; ++i)
                for (std::size_t j = 0; j < ideal.rows; ++j) {
                    const std::vector<long> u(power.a.begin() + i * n,
                                              power.a.begin() + (i + 1) * n);
                    const std::vector<long> v(ideal.a.begin() + j * n,
                                              ideal.a.begin() + (j + 1) * n);
                    const auto w = fp_mul_vec(u, v, A);
                    next.a.insert(next.a.end(), w.begin(), w.end());
                    ++next.rows;
                }
            fp_rref(next);
            power = std::move(next);
        }
        return false;
    };

    FpMat found(Prime(p), 0, n);
    std::vector<long> x(n, 0);
    for (long idx = 0; idx < count; ++idx) {
        long rem = idx;
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = rem % p;
            rem /= p;
        }
        if (!elem_nilpotent(x)) continue;
        if (!comm && !ideal_nilpotent(x)) continue;
        found.a.insert(found.a.end(), x.begin(), x.end());
        ++found.rows;
    }
    fp_rref(found);
    return found;
}

// J(Λ) = preimage of fp_radical(Λ/pΛ): spanned by pΛ and lifts of the
// radical rows through Λ's basis.
inline Lattice order_radical(const OrderLat& order) {
    const Lattice& L = order.lat;
    const std::size_t n = L.basis.cols;
    const FpAlgebra A = fp_algebra_from_order(order);
    const FpMat rad = fp_radical(A);

    detail::IntRows rows;
    rows.reserve(rad.rows + n);
    for (std::size_t r = 0; r < rad.rows; ++r) {
        std::vector<Int> row(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const long c = rad.at(r, i);
            if (c == 0) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (L.scaled.at(i, k) != 0) row[k] += c * L.scaled.at(i, k);
        }
        rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> row(n, 0);
        for (std::size_t k = 0; k < n; ++k) row[k] = L.p.v * L.scaled.at(i, k);
        rows.push_back(std::move(row));
    }
    return lattice_from_scaled(std::move(rows), L.tmax, n, L.p, L.gamma + 1);
}

inline bool is_hereditary(const OrderLat& order, const SymForm& f) {
    const Lattice J = order_radical(order);
    return lattice_eq(idealizer(J, f, *order.alg), order.lat);
}

}  // namespace porder
