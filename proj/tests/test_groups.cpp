#include <catch2/catch_amalgamated.hpp>

#include <porder/groups.hpp>
#include <porder/lattice.hpp>

#include "test_util.hpp"

#include <algorithm>
#include <map>
#include <vector>

using namespace porder;
using Catch::Matchers::ContainsSubstring;
using testutil::mat_from;

namespace {

std::map<std::size_t, int> order_census(const GroupTable& g) {
    std::map<std::size_t, int> c;
    for (std::size_t x = 0; x < g.m; ++x) ++c[element_order(g, x)];
    return c;
}

// Every map G -> Z/p tested against the homomorphism equation directly.
std::vector<std::vector<long>> all_homs(const GroupTable& g, long p) {
    std::vector<long> phi(g.m, 0);
    std::vector<std::vector<long>> out;
    for (;;) {
        bool ok = true;
        for (std::size_t x = 0; x < g.m && ok; ++x)
            for (std::size_t y = 0; y < g.m && ok; ++y)
                ok = (phi[x] + phi[y]) % p == phi[g.at(x, y)];
        if (ok) out.push_back(phi);
        std::size_t d = 0;
        while (d < g.m && phi[d] == p - 1) phi[d++] = 0;
        if (d == g.m) break;
        ++phi[d];
    }
    return out;
}

}  // namespace

TEST_CASE("cyclic and product builders give the expected tables") {
    const GroupTable c2 = group_cyclic(2);
    REQUIRE(c2.m == 2);
    REQUIRE(c2.identity == 0);
    REQUIRE(c2.table == std::vector<std::size_t>{0, 1, 1, 0});

    const GroupTable c1 = group_cyclic(1);
    REQUIRE(c1.m == 1);

    const GroupTable v4 = group_direct_product(group_cyclic(2), group_cyclic(2));
    REQUIRE(v4.m == 4);
    REQUIRE(group_is_abelian(v4));
    for (std::size_t x = 0; x < 4; ++x)
        REQUIRE(element_order(v4, x) == (x == v4.identity ? 1 : 2));
    REQUIRE(lattice_eq(predicted_gamma(v4, Prime(2)),
                       predicted_gamma(group_elementary_abelian(2, 2), Prime(2))));

    const GroupTable c8 = group_cyclic(8);
    REQUIRE(element_order(c8, 1) == 8);
    REQUIRE(group_inverse(c8, 3) == 5);
}

TEST_CASE("quaternion and dihedral tables have the right element orders") {
    const GroupTable q8 = group_quaternion8();
    REQUIRE(q8.m == 8);
    REQUIRE_FALSE(group_is_abelian(q8));
    const auto qc = order_census(q8);
    REQUIRE(qc.at(1) == 1);
    REQUIRE(qc.at(2) == 1);  // only -1 squares to 1
    REQUIRE(qc.at(4) == 6);
    REQUIRE(group_inverse(q8, 2) == 3);  // i^-1 = -i

    const GroupTable d8 = group_dihedral(8);
    REQUIRE(d8.m == 8);
    REQUIRE_FALSE(group_is_abelian(d8));
    const auto dc = order_census(d8);
    REQUIRE(dc.at(1) == 1);
    REQUIRE(dc.at(2) == 5);  // r^2 and the four reflections
    REQUIRE(dc.at(4) == 2);

    const GroupTable e9 = group_elementary_abelian(3, 2);
    REQUIRE(e9.m == 9);
    REQUIRE(group_is_abelian(e9));
    for (std::size_t x = 0; x < 9; ++x)
        REQUIRE(element_order(e9, x) == (x == e9.identity ? 1 : 3));
}

TEST_CASE("group_from_table rejects non-groups") {
    REQUIRE_THROWS_WITH(group_from_table(2, {0, 1, 1}),
                        ContainsSubstring("wrong size"));
    REQUIRE_THROWS_WITH(group_from_table(2, {0, 1, 1, 7}),
                        ContainsSubstring("out of range"));
    REQUIRE_THROWS_WITH(group_from_table(2, {0, 0, 1, 1}),
                        ContainsSubstring("not a permutation"));
    // Latin square without a two-sided identity.
    REQUIRE_THROWS_WITH(group_from_table(3, {1, 2, 0, 0, 1, 2, 2, 0, 1}),
                        ContainsSubstring("no identity"));
    // Latin square with identity 0 that is not associative: (1*1)*2 != 1*(1*2).
    REQUIRE_THROWS_WITH(
        group_from_table(5, {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 3, 4, 0, 1,
                             3, 4, 1, 2, 0, 4, 2, 0, 1, 3}),
        ContainsSubstring("not associative"));

    REQUIRE_THROWS_WITH(group_dihedral(7), ContainsSubstring("even"));
    REQUIRE_THROWS_WITH(group_cyclic(0), ContainsSubstring("positive"));

    REQUIRE(is_p_power(8, 2));
    REQUIRE(is_p_power(1, 5));
    REQUIRE_FALSE(is_p_power(6, 2));
}

TEST_CASE("group rings are self-dual orders; the p-group demand is enforced") {
    const GroupRing ring = group_ring(group_cyclic(6), Prime(2));
    REQUIRE(ring.alg.dim == 6);
    REQUIRE(lattice_eq(dual_lattice(ring.order.lat, ring.form), ring.order.lat));

    REQUIRE_THROWS_WITH(group_ring(group_cyclic(6), Prime(2), true),
                        ContainsSubstring("not a power of p"));
}

TEST_CASE("frattini_index on pinned groups") {
    REQUIRE(frattini_index(group_cyclic(4), Prime(2)) == 2);
    REQUIRE(frattini_index(group_cyclic(8), Prime(2)) == 2);
    REQUIRE(frattini_index(group_quaternion8(), Prime(2)) == 4);
    REQUIRE(frattini_index(group_dihedral(8), Prime(2)) == 4);
    REQUIRE(frattini_index(group_elementary_abelian(2, 3), Prime(2)) == 8);
    REQUIRE(frattini_index(group_direct_product(group_cyclic(2), group_cyclic(4)),
                           Prime(2)) == 4);
    REQUIRE(frattini_index(group_elementary_abelian(3, 2), Prime(3)) == 9);
    REQUIRE_THROWS_AS(frattini_index(group_cyclic(6), Prime(2)),
                      PreconditionError);
}

TEST_CASE("homs to Z/p match exhaustive search and count the Frattini index") {
    const Prime two(2);
    const GroupTable c4 = group_cyclic(4);
    auto homs = homs_to_cyclic_p(c4, two);
    REQUIRE(homs.size() == 2);
    REQUIRE(std::count(homs.begin(), homs.end(), std::vector<long>{0, 1, 0, 1}) ==
            1);

    std::vector<GroupTable> gs;
    gs.push_back(c4);
    gs.push_back(group_elementary_abelian(2, 2));
    gs.push_back(group_quaternion8());
    gs.push_back(group_dihedral(8));
    gs.push_back(group_cyclic(8));
    gs.push_back(group_direct_product(group_cyclic(2), group_cyclic(4)));
    for (const auto& g : gs) {
        auto hs = homs_to_cyclic_p(g, two);
        REQUIRE(hs.size() == frattini_index(g, two));
        auto brute = all_homs(g, 2);
        std::sort(hs.begin(), hs.end());
        std::sort(brute.begin(), brute.end());
        REQUIRE(hs == brute);
    }

    const GroupTable e9 = group_elementary_abelian(3, 2);
    auto hs3 = homs_to_cyclic_p(e9, Prime(3));
    auto brute3 = all_homs(e9, 3);
    REQUIRE(hs3.size() == 9);
    std::sort(hs3.begin(), hs3.end());
    std::sort(brute3.begin(), brute3.end());
    REQUIRE(hs3 == brute3);

    REQUIRE_THROWS_AS(homs_to_cyclic_p(group_cyclic(6), Prime(2)),
                      PreconditionError);
}

TEST_CASE("predicted first and second steps of the chain, pinned") {
    const Prime two(2);
    const Lattice g = predicted_gamma(group_cyclic(2), two);
    REQUIRE(g.basis == mat_from({{"1/2", "1/2"}, {"0", "1"}}));
    REQUIRE(index_val(standard_lattice(2, two), g) == 1);

    // Γ ⊆ Δ and the index of Δ over the group ring is 2 + log_p of the
    // Frattini index.
    std::vector<GroupTable> gs;
    gs.push_back(group_cyclic(4));
    gs.push_back(group_elementary_abelian(2, 2));
    gs.push_back(group_quaternion8());
    gs.push_back(group_dihedral(8));
    gs.push_back(group_direct_product(group_cyclic(2), group_cyclic(4)));
    for (const auto& gt : gs) {
        const Lattice gamma = predicted_gamma(gt, two);
        const Lattice delta = predicted_delta(gt, two);
        const Lattice std_lat = standard_lattice(gt.m, two);
        REQUIRE(contains(gamma, std_lat));
        REQUIRE(contains(delta, gamma));
        long fr = 0;
        for (std::size_t f = frattini_index(gt, two); f > 1; f /= 2) ++fr;
        REQUIRE(index_val(std_lat, delta) == 2 + fr);
    }
    REQUIRE(index_val(standard_lattice(4, two),
                      predicted_delta(group_cyclic(4), two)) == 3);
    REQUIRE(index_val(standard_lattice(4, two),
                      predicted_delta(group_elementary_abelian(2, 2), two)) == 4);
    REQUIRE(index_val(standard_lattice(9, Prime(3)),
                      predicted_delta(group_elementary_abelian(3, 2), Prime(3))) ==
            4);

    REQUIRE_THROWS_AS(predicted_delta(group_cyclic(2), two), PreconditionError);
    REQUIRE_THROWS_AS(predicted_delta(group_cyclic(3), Prime(3)),
                      PreconditionError);
}

TEST_CASE("abelian invariants and the closed-form chain length") {
    const Prime two(2), three(3);
    REQUIRE(abelian_invariants(group_cyclic(2), two) ==
            std::pair<std::size_t, std::size_t>{1, 1});
    REQUIRE(abelian_invariants(group_cyclic(8), two) ==
            std::pair<std::size_t, std::size_t>{3, 3});
    REQUIRE(abelian_invariants(group_direct_product(group_cyclic(2),
                                                    group_cyclic(4)),
                               two) == std::pair<std::size_t, std::size_t>{3, 2});
    REQUIRE(abelian_invariants(group_elementary_abelian(3, 2), three) ==
            std::pair<std::size_t, std::size_t>{2, 1});
    REQUIRE_THROWS_AS(abelian_invariants(group_quaternion8(), two),
                      ValidationError);
    REQUIRE_THROWS_AS(abelian_invariants(group_cyclic(6), two), ValidationError);

    REQUIRE(abelian_lrad(1, 1, two) == 1);
    REQUIRE(abelian_lrad(1, 1, three) == 1);
    REQUIRE(abelian_lrad(2, 2, two) == 2);
    REQUIRE(abelian_lrad(2, 1, two) == 2);
    REQUIRE(abelian_lrad(3, 2, two) == 4);
    REQUIRE(abelian_lrad(3, 3, two) == 4);
    REQUIRE(abelian_lrad(3, 1, two) == 3);
    REQUIRE(abelian_lrad(5, 5, two) == 16);
    REQUIRE(abelian_lrad(2, 2, three) == 3);
    REQUIRE(abelian_lrad(2, 1, three) == 3);
    REQUIRE_THROWS_AS(abelian_lrad(2, 3, two), ValidationError);
    REQUIRE_THROWS_AS(abelian_lrad(2, 0, two), ValidationError);
}
