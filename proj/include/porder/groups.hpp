#pragma once

// Finite groups as validated multiplication tables, group-ring orders with
// the standard symmetrizing form, and the closed-form predictions for their
// radical idealizer data.

#include <porder/algebra.hpp>
#include <porder/lattice.hpp>
#include <porder/rational.hpp>
#include <porder/symform.hpp>

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace porder {

struct GroupTable {
    std::size_t m = 0;
    std::vector<std::size_t> table;  // row-major: table[i*m+j] = index of g_i g_j
    std::size_t identity = 0;

    std::size_t at(std::size_t i, std::size_t j) const {
        return table[i * m + j];
    }
};

inline GroupTable group_from_table(std::size_t m,
                                   std::vector<std::size_t> table) {
    if (m == 0 || table.size() != m * m)
        throw ValidationError("group table: wrong size");
    for (auto v : table)
        if (v >= m) throw ValidationError("group table: index out of range");
    GroupTable g{m, std::move(table), 0};

    // Rows and columns are permutations (cancellation).
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<bool> row(m, false), col(m, false);
        for (std::size_t j = 0; j < m; ++j) {
            if (row[g.at(i, j)] || col[g.at(j, i)])
                throw ValidationError("group table: row or column not a "
                                      "permutation");
            row[g.at(i, j)] = col[g.at(j, i)] = true;
        }
    }
    // Two-sided identity.
    bool found = false;
    for (std::size_t e = 0; e < m && !found; ++e) {
        bool ok = true;
        for (std::size_t j = 0; j < m; ++j)
            if (g.at(e, j) != j || g.at(j, e) != j) {
                ok = false;
                break;
            }
        if (ok) {
            g.identity = e;
            found = true;
        }
    }
    if (!found) throw ValidationError("group table: no identity element");
    // Associativity.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k)
                if (g.at(g.at(i, j), k) != g.at(i, g.at(j, k)))
                    throw ValidationError("group table: not associative");
    // Inverses.
    for (std::size_t i = 0; i < m; ++i) {
        bool has = false;
        for (std::size_t j = 0; j < m; ++j)
            if (g.at(i, j) == g.identity) {
                has = true;
                break;
            }
        if (!has) throw ValidationError("group table: missing inverse");
    }
    return g;
}

inline GroupTable group_cyclic(std::size_t n) {
    if (n == 0) throw ValidationError("cyclic group: order must be positive");
    std::vector<std::size_t> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i * n + j] = (i + j) % n;
    return group_from_table(n, std::move(t));
}

inline GroupTable group_direct_product(const GroupTable& a,
                                       const GroupTable& b) {
    const std::size_t m = a.m * b.m;
    std::vector<std::size_t> t(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t ai = i / b.m, bi = i % b.m;
            const std::size_t aj = j / b.m, bj = j % b.m;
            t[i * m + j] = a.at(ai, aj) * b.m + b.at(bi, bj);
        }
    return group_from_table(m, std::move(t));
}

// Order-2n dihedral group: indices 0..n-1 are rotations r^i, n..2n-1 are
// reflections r^i s.
inline GroupTable group_dihedral(std::size_t order) {
    if (order < 2 || order % 2 != 0)
        throw ValidationError("dihedral group: order must be even");
    const std::size_t n = order / 2, m = order;
    auto rot = [&](long k) {
        return static_cast<std::size_t>(((k % static_cast<long>(n)) + n) % n);
    };
    std::vector<std::size_t> t(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const bool fi = i >= n, fj = j >= n;
            const long a = static_cast<long>(fi ? i - n : i);
            const long b = static_cast<long>(fj ? j - n : j);
            std::size_t out;
            if (!fi && !fj) out = rot(a + b);
            else if (!fi && fj) out = n + rot(a + b);
            else if (fi && !fj) out = n + rot(a - b);
            else out = rot(a - b);
            t[i * m + j] = out;
        }
    return group_from_table(m, std::move(t));
}

// {1, -1, i, -i, j, -j, k, -k} with the usual quaternion relations.
inline GroupTable group_quaternion8() {
    // Element x is unit[x/2] with sign x%2 (0 = +, 1 = -); units 1,i,j,k.
    // Products of units: value and sign.
    static const int val[4][4] = {{0, 1, 2, 3},
                                  {1, 0, 3, 2},
                                  {2, 3, 0, 1},
                                  {3, 2, 1, 0}};
    static const int sgn[4][4] = {{0, 0, 0, 0},
                                  {0, 1, 0, 1},
                                  {0, 1, 1, 0},
                                  {0, 0, 1, 1}};
    std::vector<std::size_t> t(64);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            const std::size_t ui = i / 2, uj = j / 2;
            const std::size_t s =
                (i % 2 + j % 2 + static_cast<std::size_t>(sgn[ui][uj])) % 2;
            t[i * 8 + j] = static_cast<std::size_t>(val[ui][uj]) * 2 + s;
        }
    return group_from_table(8, std::move(t));
}

inline GroupTable group_elementary_abelian(long p, std::size_t r) {
    Prime pr(p);
    std::size_t m = 1;
    for (std::size_t i = 0; i < r; ++i) m *= static_cast<std::size_t>(p);
    std::vector<std::size_t> t(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t x = i, y = j, out = 0, digit = 1;
            for (std::size_t d = 0; d < r; ++d) {
                out += ((x + y) % static_cast<std::size_t>(p)) * digit;
                x /= static_cast<std::size_t>(p);
                y /= static_cast<std::size_t>(p);
                digit *= static_cast<std::size_t>(p);
            }
            t[i * m + j] = out;
        }
    return group_from_table(m, std::move(t));
}

inline std::size_t group_inverse(const GroupTable& g, std::size_t i) {
    for (std::size_t j = 0; j < g.m; ++j)
        if (g.at(i, j) == g.identity) return j;
    throw InternalError("group_inverse: validated table lost an inverse");
}

inline std::size_t element_order(const GroupTable& g, std::size_t i) {
    std::size_t x = i, ord = 1;
    while (x != g.identity) {
        x = g.at(x, i);
        ++ord;
    }
    return ord;
}

inline bool is_p_power(std::size_t m, long p) {
    if (m == 0) return false;
    while (m % static_cast<std::size_t>(p) == 0) m /= static_cast<std::size_t>(p);
    return m == 1;
}

inline bool group_is_abelian(const GroupTable& g) {
    for (std::size_t i = 0; i < g.m; ++i)
        for (std::size_t j = i + 1; j < g.m; ++j)
            if (g.at(i, j) != g.at(j, i)) return false;
    return true;
}

struct GroupRing {
    // The algebra lives on the heap so that order.alg stays valid when the
    // ring is moved or copied.
    std::shared_ptr<const Algebra> alg_owner;
    const Algebra& alg;
    OrderLat order;
    SymForm form;
};

// ℤ_(p)G with the standard basis and the form phi(x, y) = (xy)_1.  The
// group ring is self-dual with respect to it; that is asserted.
inline GroupRing group_ring(const GroupTable& g, Prime p,
                            bool demand_pgroup = false) {
    if (demand_pgroup && !is_p_power(g.m, p.v))
        throw ValidationError("group_ring: group order is not a power of p");
    const std::size_t n = g.m;
    std::vector<Rat> c(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[(i * n + j) * n + g.at(i, j)] = 1;
    Vec unit(n);
    unit[g.identity] = 1;
    auto owner = std::make_shared<const Algebra>(
        make_algebra(n, std::move(c), std::move(unit), p));
    const Algebra& alg = *owner;

    Vec tau(n);
    tau[g.identity] = 1;
    SymForm form = make_symform(alg, std::move(tau));

    OrderLat order = make_order(standard_lattice(n, p), alg, true);
    if (!lattice_eq(dual_lattice(order.lat, form), order.lat))
        throw InternalError("group_ring: standard lattice is not self-dual");
    return GroupRing{std::move(owner), alg, std::move(order), std::move(form)};
}

namespace detail {

// Subgroup generated by a set of elements, as a sorted element list.
inline std::vector<std::size_t> subgroup_closure(
    const GroupTable& g, std::vector<std::size_t> gens) {
    std::vector<bool> in(g.m, false);
    std::vector<std::size_t> queue{g.identity};
    in[g.identity] = true;
    for (auto x : gens)
        if (!in[x]) {
            in[x] = true;
            queue.push_back(x);
        }
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const std::size_t z = g.at(queue[head], queue[i]);
            if (!in[z]) {
                in[z] = true;
                queue.push_back(z);
            }
        }
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < g.m; ++x)
        if (in[x]) out.push_back(x);
    return out;
}

// G' G^p: generated by all commutators and p-th powers.
inline std::vector<std::size_t> frattini_like_subgroup(const GroupTable& g,
                                                       long p) {
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < g.m; ++i) {
        for (std::size_t j = 0; j < g.m; ++j) {
            const std::size_t ij = g.at(i, j);
            const std::size_t com =
                g.at(g.at(ij, group_inverse(g, i)), group_inverse(g, j));
            gens.push_back(com);
        }
        std::size_t x = g.identity;
        for (long e = 0; e < p; ++e) x = g.at(x, i);
        gens.push_back(x);
    }
    return subgroup_closure(g, std::move(gens));
}

}  // namespace detail

inline std::size_t frattini_index(const GroupTable& g, Prime p) {
    if (!is_p_power(g.m, p.v))
        throw PreconditionError("frattini_index: not a p-group");
    return g.m / detail::frattini_like_subgroup(g, p.v).size();
}

// All homomorphisms G -> Z/p, each as the value vector (phi(g))_g.  They
// factor through the elementary abelian quotient G/(G' G^p).
inline std::vector<std::vector<long>> homs_to_cyclic_p(const GroupTable& g,
                                                       Prime p) {
    if (!is_p_power(g.m, p.v))
        throw PreconditionError("homs_to_cyclic_p: not a p-group");
    const auto sub = detail::frattini_like_subgroup(g, p.v);
    std::vector<bool> in_sub(g.m, false);
    for (auto x : sub) in_sub[x] = true;

    // Greedy basis of the quotient: coords[x] holds the exponent vector of
    // the coset of x in the chosen generators.
    std::vector<std::vector<long>> coords(g.m);
    std::vector<bool> covered(g.m, false);
    std::vector<std::size_t> covered_list;
    auto cover = [&](std::size_t x, std::vector<long> c) {
        for (auto s : sub) {
            const std::size_t y = g.at(x, s);
            if (!covered[y]) {
                covered[y] = true;
                coords[y] = c;
                covered_list.push_back(y);
            }
        }
    };
    cover(g.identity, {});
    std::size_t rank = 0;
    for (std::size_t x = 0; x < g.m; ++x) {
        if (covered[x]) continue;
        // New independent generator; extend every known coset by its powers.
        ++rank;
        for (auto& c : coords) c.resize(rank, 0);
        const std::vector<std::size_t> known = covered_list;
        std::size_t pw = x;
        for (long e = 1; e < p.v; ++e) {
            for (auto y : known) {
                std::vector<long> c = coords[y];
                c.resize(rank, 0);
                c[rank - 1] = e;
                cover(g.at(pw, y), std::move(c));
            }
            pw = g.at(pw, x);
        }
    }
    for (auto& c : coords) c.resize(rank, 0);

    std::vector<std::vector<long>> homs;
    std::vector<long> weights(rank, 0);
    for (;;) {
        std::vector<long> phi(g.m, 0);
        for (std::size_t x = 0; x < g.m; ++x) {
            long v = 0;
            for (std::size_t d = 0; d < rank; ++d)
                v += weights[d] * coords[x][d];
            phi[x] = v % p.v;
        }
        homs.push_back(std::move(phi));
        std::size_t d = 0;
        while (d < rank && weights[d] == p.v - 1) weights[d++] = 0;
        if (d == rank) break;
        ++weights[d];
    }
    return homs;
}

inline Lattice predicted_gamma(const GroupTable& g, Prime p) {
    const std::size_t n = g.m;
    Mat rows(n + 1, n);
    for (std::size_t i = 0; i < n; ++i) rows.at(i, i) = 1;
    for (std::size_t j = 0; j < n; ++j) rows.at(n, j) = Rat(1, p.v);
    return lattice_from_generators(rows, p, 0L);
}

inline Lattice predicted_delta(const GroupTable& g, Prime p) {
    if (g.m < static_cast<std::size_t>(p.v) * static_cast<std::size_t>(p.v))
        throw PreconditionError("predicted_delta: group order below p^2");
    const auto homs = homs_to_cyclic_p(g, p);
    const std::size_t n = g.m;
    Mat rows(n + 1 + homs.size(), n);
    for (std::size_t i = 0; i < n; ++i) rows.at(i, i) = 1;
    for (std::size_t j = 0; j < n; ++j)
        rows.at(n, j) = Rat(1, static_cast<long>(p.v) * p.v);
    for (std::size_t h = 0; h < homs.size(); ++h)
        for (std::size_t j = 0; j < n; ++j)
            if (homs[h][j] != 0) rows.at(n + 1 + h, j) = Rat(homs[h][j], p.v);
    return lattice_from_generators(rows, p, 0L);
}

// (n, a) with |G| = p^n and exponent p^a, for abelian p-groups.
inline std::pair<std::size_t, std::size_t> abelian_invariants(
    const GroupTable& g, Prime p) {
    if (!group_is_abelian(g))
        throw ValidationError("abelian_invariants: group is not abelian");
    if (!is_p_power(g.m, p.v))
        throw ValidationError("abelian_invariants: not a p-group");
    std::size_t n = 0, mm = g.m;
    while (mm > 1) {
        mm /= static_cast<std::size_t>(p.v);
        ++n;
    }
    std::size_t exp = 1;
    for (std::size_t x = 0; x < g.m; ++x)
        exp = std::max(exp, element_order(g, x));
    std::size_t a = 0;
    while (exp > 1) {
        exp /= static_cast<std::size_t>(p.v);
        ++a;
    }
    return {n, a};
}

// l_rad(ℤ_pG) for abelian G of order p^n and exponent p^a.
inline long abelian_lrad(std::size_t n, std::size_t a, Prime p) {
    if (a < 1 || a > n)
        throw ValidationError("abelian_lrad: need 1 <= a <= n");
    const long pa1 = int_pow(p.v, static_cast<long>(a) - 1).get_si();
    const long pa = pa1 * p.v;
    return pa1 + (pa - pa1) * static_cast<long>(n - a);
}

}  // namespace porder
