#pragma once

// Multiplier orders, idealizers, conductors and centers.  The fast routes go
// through dual lattices of products (valid because the form is associative);
// the *_direct routines solve the defining linear conditions instead and
// serve as independent cross-checks.

#include <porder/algebra.hpp>
#include <porder/lattice.hpp>
#include <porder/matrix.hpp>
#include <porder/rational.hpp>
#include <porder/symform.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace porder {

enum class Side { left, right };

struct IdealizerParts {
    Lattice left;   // O_l(L) = (L L^#)^#
    Lattice right;  // O_r(L) = (L^# L)^#
    Lattice ideal;  // Id(L) = O_l ∩ O_r = (L L^# + L^# L)^#
};

inline IdealizerParts idealizer_parts(const Lattice& L, const SymForm& f,
                                      const Algebra& alg) {
    const Lattice Ld = dual_lattice(L, f);
    const Lattice P1 = lattice_product(L, Ld, alg);
    const Lattice P2 = lattice_product(Ld, L, alg);
    IdealizerParts out{dual_lattice(P1, f), dual_lattice(P2, f),
                       dual_lattice(lattice_sum(P1, P2), f)};
    if (!is_order(out.left, alg) || !is_order(out.right, alg) ||
        !is_order(out.ideal, alg))
        throw InternalError("idealizer_parts: multiplier lattice fails the "
                            "order predicate");
    return out;
}

inline Lattice left_order(const Lattice& L, const SymForm& f,
                          const Algebra& alg) {
    const Lattice O =
        dual_lattice(lattice_product(L, dual_lattice(L, f), alg), f);
    if (!is_order(O, alg))
        throw InternalError("left_order: result fails the order predicate");
    return O;
}

inline Lattice right_order(const Lattice& L, const SymForm& f,
                           const Algebra& alg) {
    const Lattice O =
        dual_lattice(lattice_product(dual_lattice(L, f), L, alg), f);
    if (!is_order(O, alg))
        throw InternalError("right_order: result fails the order predicate");
    return O;
}

inline Lattice idealizer(const Lattice& L, const SymForm& f,
                         const Algebra& alg) {
    return idealizer_parts(L, f, alg).ideal;
}

namespace detail {

// {x : x A_i p-integral for all i} as the standard dual of the lattice
// spanned by all columns of the A_i.  The column lattice has full rank
// whenever x (A_1 ... A_m) = 0 forces x = 0, which holds for every use
// below; the generic canonicalization path keeps this route independent of
// the modular machinery it is meant to check.
inline Lattice column_condition_dual(const std::vector<Mat>& conds, Prime p) {
    if (conds.empty())
        throw InternalError("column_condition_dual: no conditions");
    const std::size_t n = conds.front().rows;
    Mat cols(conds.size() * n, n);
    std::size_t r = 0;
    for (const auto& A : conds) {
        for (std::size_t k = 0; k < A.cols; ++k, ++r)
            for (std::size_t i = 0; i < n; ++i) cols.at(r, i) = A.at(i, k);
    }
    const Lattice colspan = lattice_from_generators(cols, p);
    return lattice_from_generators(mat_transpose(colspan.binv), p);
}

}  // namespace detail

// Direct solver for {x : x L ⊆ L} (left) or {x : L x ⊆ L} (right): x b_i
// must land in L for every basis row b_i.
inline Lattice multiplier_order_direct(const Lattice& L, Side side,
                                       const Algebra& alg) {
    std::vector<Mat> conds;
    conds.reserve(L.basis.rows);
    for (std::size_t i = 0; i < L.basis.rows; ++i) {
        const Vec b = lattice_row(L, i);
        const Mat act = side == Side::left ? rmat(b, alg) : lmat(b, alg);
        conds.push_back(mat_mul(act, L.binv));
    }
    return detail::column_condition_dual(conds, L.p);
}

// Conductor of Λ in Γ for symmetric Λ: the dual of Γ.  Preconditions are
// the containment and the self-duality; the result is verified to be a
// two-sided Γ-ideal inside Λ.
inline Lattice conductor(const OrderLat& gamma, const OrderLat& lambda,
                         const SymForm& f) {
    const Algebra& alg = *lambda.alg;
    if (!contains(gamma.lat, lambda.lat))
        throw PreconditionError("conductor: first order must contain second");
    if (!lattice_eq(lambda.lat, dual_lattice(lambda.lat, f)))
        throw PreconditionError("conductor: order is not self-dual");
    Lattice F = dual_lattice(gamma.lat, f);
    if (!contains(lambda.lat, F) ||
        !contains(F, lattice_product(gamma.lat, F, alg)) ||
        !contains(F, lattice_product(F, gamma.lat, alg)))
        throw InternalError("conductor: result is not a two-sided ideal in "
                            "the containing order");
    return F;
}

// {x : Γ x Γ ⊆ Λ} by linear conditions over basis pairs of Γ.
inline Lattice conductor_direct(const OrderLat& gamma, const OrderLat& lambda) {
    const Algebra& alg = *lambda.alg;
    const Lattice& G = gamma.lat;
    const Lattice& L = lambda.lat;
    if (!contains(G, L))
        throw PreconditionError(
            "conductor_direct: first order must contain second");
    std::vector<Mat> conds;
    const std::size_t n = alg.dim;
    conds.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const Mat li = lmat(lattice_row(G, i), alg);
        for (std::size_t j = 0; j < n; ++j) {
            const Mat rj = rmat(lattice_row(G, j), alg);
            conds.push_back(mat_mul(mat_mul(li, rj), L.binv));
        }
    }
    return detail::column_condition_dual(conds, alg.p);
}

// One-sided variants {x : Γ x ⊆ Λ} and {x : x Γ ⊆ Λ}.
inline Lattice conductor_direct_onesided(const OrderLat& gamma,
                                         const OrderLat& lambda, Side side) {
    const Algebra& alg = *lambda.alg;
    const Lattice& G = gamma.lat;
    const Lattice& L = lambda.lat;
    if (!contains(G, L))
        throw PreconditionError(
            "conductor_direct_onesided: first order must contain second");
    std::vector<Mat> conds;
    conds.reserve(alg.dim);
    for (std::size_t i = 0; i < alg.dim; ++i) {
        const Vec g = lattice_row(G, i);
        const Mat act = side == Side::left ? lmat(g, alg) : rmat(g, alg);
        conds.push_back(mat_mul(act, L.binv));
    }
    return detail::column_condition_dual(conds, alg.p);
}

// Coordinates of each target row in the row space of `basis` (full row
// rank): X with X * basis = targets, via the invertible Gram matrix.
inline Mat solve_rows(const Mat& basis, const Mat& targets) {
    const Mat bt = mat_transpose(basis);
    const Mat gram = mat_mul(basis, bt);
    const Mat X = mat_mul(mat_mul(targets, bt), rat_inverse(gram));
    if (mat_mul(X, basis) != targets)
        throw InternalError("solve_rows: target outside the row space");
    return X;
}

// The central sublattice of an order: elements commuting with every basis
// element, with induced structure constants on its span.
struct CenterData {
    Mat basis;     // c x n, rows in ambient coordinates
    Algebra calg;  // the center as an algebra in its own basis
};

inline CenterData center(const OrderLat& order) {
    const Algebra& alg = *order.alg;
    const Lattice& L = order.lat;
    const std::size_t n = alg.dim;

    // x = c * B central  ⟺  c * B * (rmat(e_j) - lmat(e_j)) = 0 for all j.
    Mat stacked(n, n * n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec ej = basis_vec(n, j);
        const Mat rj = rmat(ej, alg), lj = lmat(ej, alg);
        Mat k(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                k.at(a, b) = rj.at(a, b) - lj.at(a, b);
        const Mat bk = mat_mul(L.basis, k);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                stacked.at(a, j * n + b) = bk.at(a, b);
    }
    const Mat coeffs = saturated_left_kernel(stacked, alg.p);
    const Mat zbasis = mat_mul(coeffs, L.basis);
    const std::size_t c = zbasis.rows;

    // Induced structure constants: products of central basis rows expressed
    // in that same basis.
    Mat prods(c * c, n);
    for (std::size_t i = 0; i < c; ++i) {
        Vec zi(n);
        for (std::size_t k = 0; k < n; ++k) zi[k] = zbasis.at(i, k);
        for (std::size_t j = 0; j < c; ++j) {
            Vec zj(n);
            for (std::size_t k = 0; k < n; ++k) zj[k] = zbasis.at(j, k);
            const Vec z = element_mul(zi, zj, alg);
            for (std::size_t k = 0; k < n; ++k) prods.at(i * c + j, k) = z[k];
        }
    }
    const Mat sc = solve_rows(zbasis, prods);
    std::vector<Rat> constants(c * c * c);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t k = 0; k < c; ++k)
                constants[(i * c + j) * c + k] = sc.at(i * c + j, k);

    const Mat unit_row = solve_rows(zbasis, [&] {
        Mat u(1, n);
        for (std::size_t k = 0; k < n; ++k) u.at(0, k) = alg.unit[k];
        return u;
    }());
    Vec unit(c);
    for (std::size_t k = 0; k < c; ++k) unit[k] = unit_row.at(0, k);

    try {
        return CenterData{zbasis,
                          make_algebra(c, std::move(constants), std::move(unit),
                                       alg.p)};
    } catch (const ValidationError& e) {
        throw InternalError(std::string("center: induced algebra invalid: ") +
                            e.what());
    }
}

}  // namespace porder
