#pragma once

// Symmetric associative bilinear forms phi(x, y) = tau(x*y) given by the
// functional tau.  Associativity phi(ab, c) = phi(a, bc) is automatic, and
// symmetry is equivalent to the Gram matrix being symmetric.

#include <porder/algebra.hpp>
#include <porder/matrix.hpp>
#include <porder/rational.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace porder {

struct SymForm {
    Vec tau;
    Mat gram;      // gram[i][j] = tau(e_i e_j)
    Mat gram_inv;
    // p^g0 Lambda_0 lies inside the dual of the standard lattice; used to
    // bound moduli when canonicalizing dual bases.
    long g0 = 0;
};

inline SymForm make_symform(const Algebra& alg, Vec tau) {
    if (tau.size() != alg.dim)
        throw ValidationError("make_symform: tau length mismatch");
    SymForm f;
    f.tau = std::move(tau);
    f.gram = Mat(alg.dim, alg.dim);
    for (std::size_t i = 0; i < alg.dim; ++i)
        for (std::size_t j = 0; j < alg.dim; ++j) {
            Rat s;
            for (const auto& [k, c] : alg.pairs[i * alg.dim + j])
                s += c * f.tau[k];
            f.gram.at(i, j) = s;
        }
    for (std::size_t i = 0; i < alg.dim; ++i)
        for (std::size_t j = i + 1; j < alg.dim; ++j)
            if (f.gram.at(i, j) != f.gram.at(j, i))
                throw ValidationError("make_symform: form is not symmetric");
    try {
        f.gram_inv = rat_inverse(f.gram);
    } catch (const SingularMatrixError&) {
        throw ValidationError("make_symform: degenerate form");
    }
    for (const auto& e : f.gram.a)
        if (e != 0) f.g0 = std::max(f.g0, -pval(e, alg.p));
    return f;
}

// phi(x, y) = tau(x y) = x * gram * y^T.
inline Rat form_apply(const Vec& x, const Vec& y, const SymForm& f) {
    Rat s;
    const std::size_t n = f.gram.rows;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            s += x[i] * f.gram.at(i, j) * y[j];
        }
    }
    return s;
}

}  // namespace porder
