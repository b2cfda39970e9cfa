#include <catch2/catch_amalgamated.hpp>

#include <porder/fp_linalg.hpp>
#include <porder/hnf.hpp>
#include <porder/matrix.hpp>
#include <porder/rational.hpp>

#include "test_util.hpp"

#include <random>
#include <set>
#include <vector>

using namespace porder;
using testutil::mat_from;
using testutil::rand_mat;
using testutil::rand_nonsingular;
using testutil::rand_rat;
using testutil::rand_unimodular;
using testutil::span_mod;

TEST_CASE("pval on integers and rationals") {
    REQUIRE(pval(Rat(4), Prime(2)) == 2);
    REQUIRE(pval(Rat(3, 2), Prime(2)) == -1);
    REQUIRE(pval(Rat(0), Prime(5)) == val_infinity);
    REQUIRE(pval(Rat(9, 5), Prime(3)) == 2);
    REQUIRE(pval(Int(-12), Prime(2)) == 2);
}

TEST_CASE("pval is multiplicative") {
    std::mt19937 rng(7);
    Prime p(3);
    for (int k = 0; k < 200; ++k) {
        Rat x = rand_rat(rng), y = rand_rat(rng);
        if (x == 0 || y == 0) continue;
        REQUIRE(pval(Rat(x * y), p) == pval(x, p) + pval(y, p));
    }
}

TEST_CASE("prime validation") {
    REQUIRE_NOTHROW(Prime(2));
    REQUIRE_NOTHROW(Prime(97));
    REQUIRE_THROWS_AS(Prime(1), ValidationError);
    REQUIRE_THROWS_AS(Prime(4), ValidationError);
    REQUIRE_THROWS_AS(Prime(-3), ValidationError);
}

TEST_CASE("rational literals") {
    REQUIRE(parse_rat("3/6") == Rat(1, 2));
    REQUIRE(parse_rat("-4/2") == Rat(-2));
    REQUIRE(parse_rat("7") == Rat(7));
    REQUIRE(rat_str(Rat(1, 2)) == "1/2");
    REQUIRE(rat_str(Rat(-5)) == "-5");
    REQUIRE_THROWS_AS(parse_rat("1.5"), ValidationError);
    REQUIRE_THROWS_AS(parse_rat(""), ValidationError);
    REQUIRE_THROWS_AS(parse_rat("2/0"), ValidationError);
    REQUIRE_THROWS_AS(parse_rat("x"), ValidationError);
}

TEST_CASE("rat_inverse on pinned examples") {
    REQUIRE(rat_inverse(Mat::identity(3)) == Mat::identity(3));
    REQUIRE(rat_inverse(mat_from({{"2", "0"}, {"0", "3"}})) ==
            mat_from({{"1/2", "0"}, {"0", "1/3"}}));
    REQUIRE(rat_inverse(mat_from({{"1", "1"}, {"0", "1"}})) ==
            mat_from({{"1", "-1"}, {"0", "1"}}));
    REQUIRE_THROWS_AS(rat_inverse(mat_from({{"1", "2"}, {"2", "4"}})),
                      SingularMatrixError);
}

TEST_CASE("rat_inverse is exact on random matrices") {
    std::mt19937 rng(11);
    for (int k = 0; k < 25; ++k) {
        const Mat m = rand_nonsingular(rng, 4);
        REQUIRE(mat_mul(m, rat_inverse(m)) == Mat::identity(4));
    }
}

TEST_CASE("det_val on pinned examples") {
    REQUIRE(det_val(Mat::identity(5), Prime(3)) == 0);
    REQUIRE(det_val(mat_from({{"2", "0"}, {"0", "1/2"}}), Prime(2)) == 0);
    REQUIRE(det_val(mat_from({{"4", "0"}, {"0", "6"}}), Prime(2)) == 3);
    REQUIRE_THROWS_AS(det_val(mat_from({{"1", "1"}, {"1", "1"}}), Prime(2)),
                      SingularMatrixError);
}

TEST_CASE("fp_kernel on pinned examples") {
    FpMat z(Prime(2), 2, 2);
    REQUIRE(fp_kernel(z).rows == 2);

    FpMat id(Prime(3), 2, 2);
    id.at(0, 0) = id.at(1, 1) = 1;
    REQUIRE(fp_kernel(id).rows == 0);

    FpMat ones(Prime(2), 2, 2);
    ones.at(0, 0) = ones.at(0, 1) = ones.at(1, 0) = ones.at(1, 1) = 1;
    const FpMat k = fp_kernel(ones);
    REQUIRE(k.rows == 1);
    REQUIRE(k.at(0, 0) == 1);
    REQUIRE(k.at(0, 1) == 1);
}

TEST_CASE("fp_kernel rows annihilate and rank-nullity holds") {
    std::mt19937 rng(13);
    Prime p(5);
    std::uniform_int_distribution<long> d(0, 4);
    for (int t = 0; t < 50; ++t) {
        FpMat m(p, 4, 6);
        for (auto& e : m.a) e = d(rng);
        const FpMat k = fp_kernel(m);
        REQUIRE(k.rows + fp_rank(m) == m.cols);
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t kr = 0; kr < k.rows; ++kr) {
                long acc = 0;
                for (std::size_t j = 0; j < m.cols; ++j)
                    acc = fp_normalize(acc + m.at(i, j) * k.at(kr, j), p.v);
                REQUIRE(acc == 0);
            }
    }
}

TEST_CASE("local_hnf pinned examples") {
    REQUIRE(local_hnf(Mat::identity(4), Prime(2)) == Mat::identity(4));
    REQUIRE(local_hnf(mat_from({{"6", "0"}, {"0", "4"}}), Prime(2)) ==
            mat_from({{"2", "0"}, {"0", "4"}}));
}

TEST_CASE("local_hnf [[1,1],[0,3]] at p=3 against span enumeration") {
    // Oracle first: both the input and the candidate output span the same
    // residue sets mod 9 (9 exceeds p^(v(det)+1), enough to separate
    // sublattices of Z^2 that contain 3 Z^2).
    const Mat m = mat_from({{"1", "1"}, {"0", "3"}});
    const Mat h = local_hnf(m, Prime(3));
    REQUIRE(span_mod(m, 9) == span_mod(h, 9));
    REQUIRE(h == m);
}

TEST_CASE("local_hnf canonicalizes negative-valuation entries") {
    // Span of (1/2, 1/2) and (0, 1): pivot p^-1 in column 0, and the entry
    // above the column-1 pivot is already the canonical residue 1/2.
    const Mat m = mat_from({{"1/2", "1/2"}, {"0", "1"}});
    const Mat h = local_hnf(m, Prime(2));
    REQUIRE(h == m);
    // A non-canonical basis of the same span must map to the same form.
    const Mat g = mat_from({{"1/2", "3/2"}, {"0", "1"}});
    REQUIRE(local_hnf(g, Prime(2)) == m);
}

TEST_CASE("local_hnf is idempotent and a class function") {
    std::mt19937 rng(17);
    Prime p(2);
    for (int t = 0; t < 40; ++t) {
        const Mat m = rand_nonsingular(rng, 3);
        const Mat h = local_hnf(m, p);
        REQUIRE(local_hnf(h, p) == h);
        const Mat u = rand_unimodular(rng, 3, p);
        REQUIRE(local_hnf(mat_mul(u, m), p) == h);
    }
}

TEST_CASE("local_hnf preserves determinant valuation") {
    std::mt19937 rng(19);
    for (long pv : {2L, 3L}) {
        Prime p(pv);
        for (int t = 0; t < 25; ++t) {
            const Mat m = rand_nonsingular(rng, 3);
            REQUIRE(det_val(local_hnf(m, p), p) == det_val(m, p));
        }
    }
}

TEST_CASE("local_hnf agrees with the stacked-identity integer recipe") {
    std::mt19937 rng(23);
    for (long pv : {2L, 3L, 5L}) {
        Prime p(pv);
        for (int t = 0; t < 25; ++t) {
            const Mat m = rand_nonsingular(rng, 3);
            REQUIRE(local_hnf(m, p) == local_hnf_recipe(m, p));
        }
    }
}

TEST_CASE("local_hnf modular fast path matches the generic path") {
    std::mt19937 rng(29);
    Prime p(2);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int t = 0; t < 40; ++t) {
        Mat m(3, 3);
        for (auto& e : m.a) e = Rat(d(rng));
        if (mat_det(m) == 0) continue;
        const long bign = det_val(m, p);
        const auto fast = local_hnf_ex(m, p, bign, true);
        REQUIRE(fast.basis == local_hnf(m, p));
        REQUIRE(fast.pivot_cols.size() == 3);
    }
}

TEST_CASE("local_hnf general rank and rank demands") {
    const Mat m = mat_from({{"1", "2", "3"}, {"2", "4", "6"}});
    const Mat h = local_hnf(m, Prime(5));
    REQUIRE(h.rows == 1);
    REQUIRE(h == mat_from({{"1", "2", "3"}}));
    REQUIRE_THROWS_AS(local_hnf_ex(mat_from({{"1", "1"}, {"1", "1"}}), Prime(2),
                                   std::nullopt, true),
                      DegenerateLatticeError);
}

TEST_CASE("local_hnf orders pivots by column with minimal valuation") {
    // Rows 2*e1, e2, e1+e2 at p=2: the span is all of Z^2.
    const Mat m = mat_from({{"2", "0"}, {"0", "1"}, {"1", "1"}});
    REQUIRE(local_hnf(m, Prime(2)) == Mat::identity(2));
}

TEST_CASE("saturated_left_kernel saturates") {
    // y (1, -2)^T = 0 over Q is the line through (2, 1); inside Z_(2)^2 the
    // integral points of that line are spanned by (2, 1) itself.
    const Mat c = mat_from({{"1"}, {"-2"}});
    const Mat k = saturated_left_kernel(c, Prime(2));
    REQUIRE(k == mat_from({{"2", "1"}}));

    // Full kernel: the conditions are empty.
    const Mat zero = mat_from({{"0"}, {"0"}});
    REQUIRE(saturated_left_kernel(zero, Prime(2)) == Mat::identity(2));

    // Trivial kernel.
    const Mat id = mat_from({{"1", "0"}, {"0", "1"}});
    REQUIRE(saturated_left_kernel(id, Prime(3)).rows == 0);
}
