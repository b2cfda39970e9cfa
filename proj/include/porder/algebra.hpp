#pragma once

// Finite-dimensional associative Q-algebras given by structure constants,
// validated at construction: associativity, unit laws, and p-integrality of
// the constants (which keeps every lattice later in the pipeline
// commensurable with the standard lattice by p-powers only).

#include <porder/hnf.hpp>
#include <porder/matrix.hpp>
#include <porder/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace porder {

using Vec = std::vector<Rat>;

struct Algebra {
    std::size_t dim = 0;
    Prime p;

    explicit Algebra(Prime prime) : p(prime) {}
    // Dense structure constants: sc[(i*dim + j)*dim + k] is the e_k
    // coefficient of e_i * e_j.
    std::vector<Rat> sc;
    // Sparse view per basis pair, for fast products.
    std::vector<std::vector<std::pair<std::size_t, Rat>>> pairs;
    // Same view with mpz coefficients; populated when integral_sc holds and
    // consumed by the integer product kernels.
    std::vector<std::vector<std::pair<std::size_t, Int>>> pairs_z;
    Vec unit;
    // True when every structure constant is an integer; enables the pure
    // mpz product kernels (always the case for group rings).
    bool integral_sc = false;
    // gamma-exponent of the lattice spanned by all basis products e_i e_j:
    // p^gamma0 Lambda_0 is inside that span.  Used to bound moduli for
    // product lattices.
    long gamma0 = 0;

    const Rat& c(std::size_t i, std::size_t j, std::size_t k) const {
        return sc[(i * dim + j) * dim + k];
    }
};

inline Vec element_mul(const Vec& a, const Vec& b, const Algebra& alg) {
    if (a.size() != alg.dim || b.size() != alg.dim)
        throw PreconditionError("element_mul: coordinate length mismatch");
    Vec z(alg.dim);
    Rat t;
    for (std::size_t i = 0; i < alg.dim; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < alg.dim; ++j) {
            if (b[j] == 0) continue;
            t = a[i] * b[j];
            for (const auto& [k, c] : alg.pairs[i * alg.dim + j]) z[k] += t * c;
        }
    }
    return z;
}

// Matrix of y -> x*y acting on row vectors: (x*y) = y * lmat(x).
inline Mat lmat(const Vec& x, const Algebra& alg) {
    Mat m(alg.dim, alg.dim);
    for (std::size_t i = 0; i < alg.dim; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < alg.dim; ++j)
            for (const auto& [k, c] : alg.pairs[i * alg.dim + j])
                m.at(j, k) += x[i] * c;
    }
    return m;
}

// Matrix of y -> y*x acting on row vectors: (y*x) = y * rmat(x).
inline Mat rmat(const Vec& x, const Algebra& alg) {
    Mat m(alg.dim, alg.dim);
    for (std::size_t j = 0; j < alg.dim; ++j) {
        if (x[j] == 0) continue;
        for (std::size_t i = 0; i < alg.dim; ++i)
            for (const auto& [k, c] : alg.pairs[i * alg.dim + j])
                m.at(i, k) += x[j] * c;
    }
    return m;
}

inline Vec basis_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

inline Algebra make_algebra(std::size_t n, std::vector<Rat> constants, Vec unit,
                            Prime p) {
    if (constants.size() != n * n * n || unit.size() != n)
        throw ValidationError("make_algebra: inconsistent dimensions");
    for (const auto& c : constants)
        if (c != 0 && pval(c.get_den(), p) != 0)
            throw ValidationError(
                "make_algebra: structure constants not p-integral");

    Algebra alg(p);
    alg.dim = n;
    alg.sc = std::move(constants);
    alg.unit = std::move(unit);
    alg.pairs.resize(n * n);
    alg.integral_sc = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Rat& c = alg.c(i, j, k);
                if (c == 0) continue;
                alg.pairs[i * n + j].emplace_back(k, c);
                if (c.get_den() != 1) alg.integral_sc = false;
            }
    if (alg.integral_sc) {
        alg.pairs_z.resize(n * n);
        for (std::size_t ij = 0; ij < n * n; ++ij)
            for (const auto& [k, c] : alg.pairs[ij])
                alg.pairs_z[ij].emplace_back(k, c.get_num());
    }

    // Unit laws first: 1*e_j = e_j = e_j*1.
    for (std::size_t j = 0; j < n; ++j) {
        const Vec ej = basis_vec(n, j);
        if (element_mul(alg.unit, ej, alg) != ej ||
            element_mul(ej, alg.unit, alg) != ej)
            throw ValidationError("make_algebra: unit law fails at basis " +
                                  std::to_string(j));
    }
    // Associativity on all basis triples.
    for (std::size_t i = 0; i < n; ++i) {
        const Vec ei = basis_vec(n, i);
        for (std::size_t j = 0; j < n; ++j) {
            const Vec ej = basis_vec(n, j);
            const Vec eij = element_mul(ei, ej, alg);
            for (std::size_t k = 0; k < n; ++k) {
                const Vec ek = basis_vec(n, k);
                if (element_mul(eij, ek, alg) !=
                    element_mul(ei, element_mul(ej, ek, alg), alg))
                    throw ValidationError(
                        "make_algebra: associativity fails at triple (" +
                        std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + ")");
            }
        }
    }

    // gamma-exponent of the span of all basis products.  The span has full
    // rank because e_i = e_i * 1 lies in its Q-span; its canonical pivots
    // bound how deep p^E Lambda_0 sits inside any product lattice.
    {
        Mat prods(n * n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Vec v =
                    element_mul(basis_vec(n, i), basis_vec(n, j), alg);
                for (std::size_t k = 0; k < n; ++k)
                    prods.at(i * n + j, k) = v[k];
            }
        const auto h = local_hnf_ex(prods, p, std::nullopt, true);
        const Mat inv = rat_inverse(h.basis);
        long g = 0;
        for (const auto& e : inv.a)
            if (e != 0) g = std::max(g, -pval(e, p));
        alg.gamma0 = g;
    }
    return alg;
}

}  // namespace porder
