#include <catch2/catch_amalgamated.hpp>

#include <porder/algebra.hpp>
#include <porder/lattice.hpp>
#include <porder/symform.hpp>

#include "test_util.hpp"

#include <cstddef>
#include <random>
#include <vector>

using namespace porder;
using testutil::mat_from;
using testutil::rand_nonsingular;
using testutil::span_mod;

namespace {

// Group algebra of the cyclic group of order two at p = 2, with its
// symmetrizing form (coefficient of the identity).
Algebra c2_algebra() {
    std::vector<Rat> c(8);
    c[(0 * 2 + 0) * 2 + 0] = 1;
    c[(0 * 2 + 1) * 2 + 1] = 1;
    c[(1 * 2 + 0) * 2 + 1] = 1;
    c[(1 * 2 + 1) * 2 + 0] = 1;
    return make_algebra(2, c, {Rat(1), Rat(0)}, Prime(2));
}

// Componentwise product on Q^n with unit (1,...,1); tau = sum of coordinates
// makes the gram matrix the identity, i.e. the standard inner product.
Algebra diag_algebra(std::size_t n, long pv) {
    std::vector<Rat> c(n * n * n);
    for (std::size_t i = 0; i < n; ++i) c[(i * n + i) * n + i] = 1;
    return make_algebra(n, c, Vec(n, Rat(1)), Prime(pv));
}

Lattice rand_lattice(std::mt19937& rng, std::size_t n, Prime p) {
    return lattice_from_generators(rand_nonsingular(rng, n), p);
}

// Random element of L: an integer combination of basis rows.
Vec rand_member(std::mt19937& rng, const Lattice& L) {
    std::uniform_int_distribution<long> coef(-6, 6);
    const std::size_t n = L.basis.cols;
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rat c(coef(rng));
        for (std::size_t j = 0; j < n; ++j) v[j] += c * L.basis.at(i, j);
    }
    return v;
}

}  // namespace

TEST_CASE("standard lattice of the order-two group algebra") {
    const Algebra alg = c2_algebra();
    const Lattice std2 = standard_lattice(2, Prime(2));
    REQUIRE(std2.basis == Mat::identity(2));
    REQUIRE(std2.detv == 0);
    REQUIRE(std2.tmax == 0);
    REQUIRE(std2.gamma == 0);
    REQUIRE(is_order(std2, alg));
    REQUIRE(member(alg.unit, std2));
}

TEST_CASE("augmentation kernel at p = 2: canonical basis, index, membership") {
    // J = {a + bg : a + b even}, generated by 2 and 1 + g.
    const Lattice J = lattice_from_generators(
        mat_from({{"2", "0"}, {"1", "1"}}), Prime(2));
    REQUIRE(J.basis == mat_from({{"1", "1"}, {"0", "2"}}));
    REQUIRE(J.pivot_vals == std::vector<long>{0, 1});
    REQUIRE(J.detv == 1);
    REQUIRE(J.tmax == 0);
    REQUIRE(J.gamma == 1);

    const Lattice std2 = standard_lattice(2, Prime(2));
    REQUIRE(contains(std2, J));
    REQUIRE_FALSE(contains(J, std2));
    REQUIRE(index_val(J, std2) == 1);
    REQUIRE_THROWS_AS(index_val(std2, J), PreconditionError);

    REQUIRE(member({Rat(1), Rat(1)}, J));
    REQUIRE(member({Rat(2), Rat(0)}, J));
    REQUIRE(member({Rat(3), Rat(-1)}, J));
    REQUIRE_FALSE(member({Rat(1), Rat(0)}, J));
    REQUIRE_THROWS_AS(member({Rat(1)}, J), PreconditionError);

    const Algebra alg = c2_algebra();
    REQUIRE_FALSE(is_order(J, alg));  // no unit
}

TEST_CASE("product of the augmentation kernel with itself") {
    const Algebra alg = c2_algebra();
    const Lattice J = lattice_from_generators(
        mat_from({{"2", "0"}, {"1", "1"}}), Prime(2));
    const Lattice JJ = lattice_product(J, J, alg);
    REQUIRE(JJ.basis == mat_from({{"2", "2"}, {"0", "4"}}));

    // Oracle: enumerate the span of the generating products mod 8.
    // Generators of J^2: 4, 2(1+g), (1+g)^2 = 2 + 2g.
    const Mat gens = mat_from({{"4", "0"}, {"2", "2"}, {"2", "2"}});
    REQUIRE(span_mod(gens, 8) == span_mod(JJ.basis, 8));

    // J is an ideal: Lambda * J = J = J * Lambda.
    const Lattice std2 = standard_lattice(2, Prime(2));
    REQUIRE(lattice_eq(lattice_product(std2, J, alg), J));
    REQUIRE(lattice_eq(lattice_product(J, std2, alg), J));
    REQUIRE(lattice_eq(lattice_product(std2, std2, alg), std2));
}

TEST_CASE("dual lattices in the order-two group algebra") {
    const Algebra alg = c2_algebra();
    const SymForm f = make_symform(alg, {Rat(1), Rat(0)});
    const Lattice std2 = standard_lattice(2, Prime(2));

    // The group ring is self-dual.
    REQUIRE(lattice_eq(dual_lattice(std2, f), std2));

    const Lattice J = lattice_from_generators(
        mat_from({{"2", "0"}, {"1", "1"}}), Prime(2));
    const Lattice Jd = dual_lattice(J, f);
    REQUIRE(Jd.basis == mat_from({{"1/2", "1/2"}, {"0", "1"}}));
    REQUIRE(Jd.detv == -1);
    REQUIRE(Jd.tmax == 1);

    // J^# is the idealizer-to-be: an order containing the standard one.
    REQUIRE(is_order(Jd, alg));
    REQUIRE(contains(Jd, std2));
    REQUIRE(index_val(std2, Jd) == 1);
}

TEST_CASE("dual is an involution and reverses inclusions") {
    std::mt19937 rng(101);
    for (long pv : {2L, 3L, 5L}) {
        const Prime p(pv);
        for (int trial = 0; trial < 70; ++trial) {
            const std::size_t n = 1 + trial % 5;
            const Algebra alg = diag_algebra(n, pv);
            const SymForm f = make_symform(alg, Vec(n, Rat(1)));
            const Lattice L = rand_lattice(rng, n, p);
            const Lattice M = rand_lattice(rng, n, p);

            REQUIRE(lattice_eq(dual_lattice(dual_lattice(L, f), f), L));

            const Lattice S = lattice_sum(L, M);
            REQUIRE(contains(S, L));
            REQUIRE(contains(S, M));
            REQUIRE(contains(dual_lattice(L, f), dual_lattice(S, f)));
            REQUIRE(index_val(L, S) ==
                    index_val(dual_lattice(S, f), dual_lattice(L, f)));
        }
    }
}

TEST_CASE("sum and intersection against membership") {
    std::mt19937 rng(102);
    const Prime p(2);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const Algebra alg = diag_algebra(n, 2);
        const SymForm f = make_symform(alg, Vec(n, Rat(1)));
        const Lattice L = rand_lattice(rng, n, p);
        const Lattice M = rand_lattice(rng, n, p);
        const Lattice S = lattice_sum(L, M);
        const Lattice I = lattice_intersect(L, M, f);

        REQUIRE(contains(L, I));
        REQUIRE(contains(M, I));

        // Determinant additivity |L||M| = |L+M||L∩M| and the isomorphism
        // (L+M)/M = L/(L∩M) on the valuation level.
        REQUIRE(L.detv + M.detv == S.detv + I.detv);
        REQUIRE(index_val(I, L) == index_val(M, S));

        // Membership oracle on a handful of vectors.
        for (int k = 0; k < 5; ++k) {
            const Vec v = rand_member(rng, k % 2 ? L : M);
            REQUIRE(member(v, S));
            REQUIRE(member(v, I) == (member(v, L) && member(v, M)));
        }
    }
}

TEST_CASE("pinned intersection example") {
    const Algebra alg = diag_algebra(2, 2);
    const SymForm f = make_symform(alg, Vec(2, Rat(1)));
    const Lattice L =
        lattice_from_generators(mat_from({{"2", "0"}, {"0", "1"}}), Prime(2));
    const Lattice M =
        lattice_from_generators(mat_from({{"1", "1"}, {"0", "4"}}), Prime(2));
    // a(1,1) + b(0,4) has even first coordinate iff a is even.
    const Lattice I = lattice_intersect(L, M, f);
    REQUIRE(I.basis == mat_from({{"2", "2"}, {"0", "4"}}));
}

TEST_CASE("sum of a lattice with itself and with scaled copies") {
    std::mt19937 rng(103);
    const Prime p(3);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const Lattice L = rand_lattice(rng, n, p);
        REQUIRE(lattice_eq(lattice_sum(L, L), L));

        // L + 3L = L.
        Mat scaled = L.basis;
        for (auto& e : scaled.a) e *= 3;
        const Lattice L3 = lattice_from_generators(scaled, p);
        REQUIRE(lattice_eq(lattice_sum(L, L3), L));
        REQUIRE(index_val(L3, L) == static_cast<long>(n));
    }
}

TEST_CASE("product associativity on random lattices") {
    std::mt19937 rng(104);
    const Algebra alg = c2_algebra();
    const Prime p(2);
    for (int trial = 0; trial < 40; ++trial) {
        const Lattice L = rand_lattice(rng, 2, p);
        const Lattice M = rand_lattice(rng, 2, p);
        const Lattice N = rand_lattice(rng, 2, p);
        REQUIRE(lattice_eq(lattice_product(lattice_product(L, M, alg), N, alg),
                           lattice_product(L, lattice_product(M, N, alg), alg)));
        REQUIRE(lattice_eq(lattice_product(L, M, alg),
                           lattice_product(M, L, alg)));  // commutative algebra
    }
}

TEST_CASE("cached scaled data is exact") {
    std::mt19937 rng(105);
    for (long pv : {2L, 5L}) {
        const Prime p(pv);
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t n = 1 + trial % 5;
            const Lattice L = rand_lattice(rng, n, p);

            // U = basis * p^tmax is integral and tmax is minimal.
            long worst = 0;
            for (const auto& e : L.basis.a)
                if (e != 0) worst = std::max(worst, -pval(e, p));
            REQUIRE(worst == L.tmax);

            // U * adj = p^adj_den * I.
            const Int pd = int_pow(p.v, L.adj_den);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Int s = 0;
                    for (std::size_t k = 0; k < n; ++k)
                        s += L.scaled.at(i, k) * L.adj.at(k, j);
                    REQUIRE(s == (i == j ? pd : Int(0)));
                }

            // binv is the exact basis inverse.
            REQUIRE(mat_mul(L.basis, L.binv) == Mat::identity(n));

            // p^gamma Lambda_0 really is inside L.
            Mat g = Mat::identity(n);
            for (auto& e : g.a) e *= rat_p_pow(p, L.gamma);
            REQUIRE(contains(L, lattice_from_generators(g, p)));
        }
    }
}

TEST_CASE("products in an algebra with unit denominators in the constants") {
    // x^2 = 1/3: constants are 2-integral but not integral, so the product
    // kernel falls back to rational arithmetic.
    std::vector<Rat> c(8);
    c[(0 * 2 + 0) * 2 + 0] = 1;
    c[(0 * 2 + 1) * 2 + 1] = 1;
    c[(1 * 2 + 0) * 2 + 1] = 1;
    c[(1 * 2 + 1) * 2 + 0] = Rat(1, 3);
    const Algebra alg = make_algebra(2, c, {Rat(1), Rat(0)}, Prime(2));
    REQUIRE_FALSE(alg.integral_sc);

    const Lattice std2 = standard_lattice(2, Prime(2));
    REQUIRE(lattice_eq(lattice_product(std2, std2, alg), std2));
    REQUIRE(is_order(std2, alg));

    const Lattice L =
        lattice_from_generators(mat_from({{"1", "0"}, {"0", "2"}}), Prime(2));
    REQUIRE(lattice_eq(lattice_product(L, L, alg), L));
    REQUIRE(is_order(L, alg));
}

TEST_CASE("degenerate generator sets are rejected") {
    REQUIRE_THROWS_AS(
        lattice_from_generators(mat_from({{"1", "2"}, {"2", "4"}}), Prime(2)),
        DegenerateLatticeError);
    REQUIRE_THROWS_AS(lattice_sum(standard_lattice(2, Prime(2)),
                                  standard_lattice(2, Prime(3))),
                      PreconditionError);
}

TEST_CASE("make_order validates and tags errors by origin") {
    const Algebra alg = c2_algebra();
    const Lattice J = lattice_from_generators(
        mat_from({{"2", "0"}, {"1", "1"}}), Prime(2));
    REQUIRE_THROWS_AS(make_order(J, alg), ValidationError);
    REQUIRE_THROWS_AS(make_order(J, alg, true), InternalError);
    REQUIRE_NOTHROW(make_order(standard_lattice(2, Prime(2)), alg));
}
