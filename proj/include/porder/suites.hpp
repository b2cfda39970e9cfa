#pragma once

// Batch verification suites behind the `verify` command: the abelian length
// formula, the structural identities on a fixed p-group suite, and the
// dual-route oracle cross-checks.  Independent group computations fan out to
// a small worker pool; aggregation is by task index, so output order is
// deterministic.

#include <porder/chain.hpp>
#include <porder/groups.hpp>
#include <porder/orders.hpp>
#include <porder/radical.hpp>
#include <porder/rational.hpp>

#include <atomic>
#include <cstddef>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace porder {

struct SuiteResult {
    bool ok = true;
    std::vector<std::string> lines;
};

namespace detail {

struct TaskResult {
    bool ok = true;
    std::string text;
};

inline std::vector<TaskResult> run_tasks(
    const std::vector<std::function<TaskResult()>>& tasks) {
    std::vector<TaskResult> out(tasks.size());
    std::atomic<std::size_t> next{0};
    const std::size_t nw =
        std::min(tasks.size(),
                 static_cast<std::size_t>(
                     std::max(1u, std::thread::hardware_concurrency())));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nw; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < tasks.size();
                 i = next.fetch_add(1)) {
                try {
                    out[i] = tasks[i]();
                } catch (const std::exception& e) {
                    out[i] = {false, std::string("error: ") + e.what()};
                }
            }
        });
    for (auto& t : pool) t.join();
    return out;
}

// Descending partitions of n, each a list of exponents of cyclic factors.
inline std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    const std::function<void(std::size_t, std::size_t)> rec =
        [&](std::size_t left, std::size_t maxpart) {
            if (left == 0) {
                out.push_back(cur);
                return;
            }
            for (std::size_t part = std::min(left, maxpart); part >= 1; --part) {
                cur.push_back(part);
                rec(left - part, part);
                cur.pop_back();
            }
        };
    rec(n, n);
    return out;
}

inline GroupTable abelian_group_from_partition(
    const std::vector<std::size_t>& parts, long p) {
    GroupTable g = group_cyclic(
        static_cast<std::size_t>(int_pow(p, static_cast<long>(parts[0])).get_si()));
    for (std::size_t i = 1; i < parts.size(); ++i)
        g = group_direct_product(
            g, group_cyclic(static_cast<std::size_t>(
                   int_pow(p, static_cast<long>(parts[i])).get_si())));
    return g;
}

inline std::string abelian_group_name(const std::vector<std::size_t>& parts,
                                      long p) {
    std::ostringstream s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s << "x";
        s << "C" << int_pow(p, static_cast<long>(parts[i]));
    }
    return s.str();
}

inline Lattice random_rational_lattice(std::mt19937& rng, std::size_t n,
                                       Prime p) {
    std::uniform_int_distribution<long> num(-8, 8);
    std::uniform_int_distribution<long> den(0, 2);
    for (;;) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rat r(num(rng));
                r /= Rat(int_pow(p.v, den(rng)));
                m.at(i, j) = r;
            }
        try {
            return lattice_from_generators(m, p);
        } catch (const DegenerateLatticeError&) {
        }
    }
}

// The fixed structure suite: 2-groups of order 4 and 8, and the two groups
// of order 9.
inline std::vector<std::pair<std::string, std::pair<GroupTable, long>>>
structure_suite(long pfilter = 0) {
    std::vector<std::pair<std::string, std::pair<GroupTable, long>>> out;
    const auto add = [&](std::string name, GroupTable g, long p) {
        if (pfilter == 0 || pfilter == p)
            out.emplace_back(std::move(name), std::make_pair(std::move(g), p));
    };
    add("C4", group_cyclic(4), 2);
    add("C8", group_cyclic(8), 2);
    add("C2xC2", group_elementary_abelian(2, 2), 2);
    add("C2xC2xC2", group_elementary_abelian(2, 3), 2);
    add("C2xC4", group_direct_product(group_cyclic(2), group_cyclic(4)), 2);
    add("D8", group_dihedral(8), 2);
    add("Q8", group_quaternion8(), 2);
    add("C9", group_cyclic(9), 3);
    add("C3xC3", group_elementary_abelian(3, 2), 3);
    return out;
}

}  // namespace detail

// Every abelian p-group with |G| <= max_order: chain length versus the
// closed form.
inline SuiteResult suite_abelian(Prime p, std::size_t max_order) {
    std::vector<std::function<detail::TaskResult()>> tasks;
    for (std::size_t n = 1; int_pow(p.v, static_cast<long>(n)) <=
                            static_cast<long>(max_order);
         ++n)
        for (const auto& parts : detail::partitions(n)) {
            const std::size_t a = parts[0];
            tasks.push_back([parts, a, n, p]() -> detail::TaskResult {
                const GroupTable g = detail::abelian_group_from_partition(parts, p.v);
                const GroupRing ring = group_ring(g, p, true);
                const ChainReport rep = run_chain(ring.order, ring.form);
                const long expect = abelian_lrad(n, a, p);
                std::ostringstream line;
                line << detail::abelian_group_name(parts, p.v) << ": length "
                     << rep.length << ", formula " << expect;
                return {rep.length == expect, line.str()};
            });
        }
    const auto results = detail::run_tasks(tasks);
    SuiteResult out;
    std::size_t matches = 0;
    for (const auto& r : results) {
        out.lines.push_back(r.text);
        out.ok = out.ok && r.ok;
        matches += r.ok ? 1 : 0;
    }
    std::ostringstream sum;
    sum << results.size() << " groups, " << matches << " matches";
    out.lines.push_back(sum.str());
    return out;
}

// Structural identities of the first two steps on the fixed p-group suite.
inline SuiteResult suite_pgroup_structure(long pfilter = 0) {
    const auto suite = detail::structure_suite(pfilter);
    std::vector<std::function<detail::TaskResult()>> tasks;
    for (const auto& [name, gp] : suite) {
        const GroupTable& g = gp.first;
        const long p = gp.second;
        tasks.push_back([name = name, g, p]() -> detail::TaskResult {
            const Prime pp(p);
            const GroupRing ring = group_ring(g, pp, true);
            const ChainReport rep = run_chain(ring.order, ring.form);
            bool ok = rep.length >= 2;
            std::ostringstream text;

            // Predicted step orders.
            ok = ok &&
                 lattice_eq(rep.steps[1].order_lattice, predicted_gamma(g, pp));
            ok = ok &&
                 lattice_eq(rep.steps[2].order_lattice, predicted_delta(g, pp));

            // Index of the second step.
            long fr = 0;
            for (std::size_t f = frattini_index(g, pp); f > 1;
                 f /= static_cast<std::size_t>(p))
                ++fr;
            const long got = rep.steps[2].index_from_start;
            text << "[Δ:Λ] valuation " << name << ": expected " << 2 + fr
                 << ", got " << got << "\n";
            ok = ok && got == 2 + fr;

            // Symmetric-order identities along the chain.
            const auto checks = verify_symmetric_theorems(rep, ring.order, ring.form);
            for (const auto& [cname, cok] : checks) {
                ok = ok && cok;
                if (!cok) text << name << ": check " << cname << " FAILED\n";
            }
            text << name << ": length " << rep.length << ", "
                 << (ok ? "all identities hold" : "MISMATCH");
            return {ok, text.str()};
        });
    }
    const auto results = detail::run_tasks(tasks);
    SuiteResult out;
    std::size_t pass = 0;
    for (const auto& r : results) {
        out.lines.push_back(r.text);
        out.ok = out.ok && r.ok;
        pass += r.ok ? 1 : 0;
    }
    std::ostringstream sum;
    sum << results.size() << " groups, " << pass << " pass";
    out.lines.push_back(sum.str());
    return out;
}

namespace detail {

// Small groups for the radical cross-check, keyed by |G| <= bound.
inline std::vector<std::pair<std::string, GroupTable>> small_group_zoo(
    std::size_t bound) {
    std::vector<std::pair<std::string, GroupTable>> out;
    for (std::size_t n = 1; n <= bound && n <= 9; ++n)
        out.emplace_back("C" + std::to_string(n), group_cyclic(n));
    if (bound >= 4)
        out.emplace_back("C2xC2", group_elementary_abelian(2, 2));
    if (bound >= 6) out.emplace_back("S3", group_dihedral(6));
    if (bound >= 8) {
        out.emplace_back("C2xC4",
                         group_direct_product(group_cyclic(2), group_cyclic(4)));
        out.emplace_back("C2xC2xC2", group_elementary_abelian(2, 3));
        out.emplace_back("D8", group_dihedral(8));
        out.emplace_back("Q8", group_quaternion8());
    }
    if (bound >= 9) out.emplace_back("C3xC3", group_elementary_abelian(3, 2));
    return out;
}

inline bool same_rowspan(FpMat a, FpMat b) {
    fp_rref(a);
    fp_rref(b);
    return a == b;
}

}  // namespace detail

// Dual-route cross-checks: duality properties on random lattices, the two
// multiplier-order routes, the two conductor routes, and the layered radical
// against exhaustive enumeration.
inline SuiteResult suite_oracles() {
    std::vector<std::function<detail::TaskResult()>> tasks;

    // Duality and multiplier/conductor routes per structure-suite group.
    const auto suite = detail::structure_suite();
    for (std::size_t gi = 0; gi < suite.size(); ++gi) {
        const auto& [name, gp] = suite[gi];
        const GroupTable& g = gp.first;
        const long p = gp.second;
        tasks.push_back([name = name, g, p, gi]() -> detail::TaskResult {
            const Prime pp(p);
            const GroupRing ring = group_ring(g, pp, true);
            std::mt19937 rng(7000 + static_cast<unsigned long>(gi));
            std::size_t bad = 0;
            for (int t = 0; t < 200; ++t) {
                const Lattice l =
                    detail::random_rational_lattice(rng, g.m, pp);
                const Lattice m = lattice_sum(
                    l, detail::random_rational_lattice(rng, g.m, pp));
                const Lattice ld = dual_lattice(l, ring.form);
                const Lattice md = dual_lattice(m, ring.form);
                if (!lattice_eq(dual_lattice(ld, ring.form), l)) ++bad;
                if (!contains(ld, md)) ++bad;
                if (index_val(l, m) != index_val(md, ld)) ++bad;
            }
            std::ostringstream text;
            text << "duality on " << name << ": 200 lattices, " << bad
                 << " mismatches";
            return {bad == 0, text.str()};
        });
        tasks.push_back([name = name, g, p]() -> detail::TaskResult {
            const Prime pp(p);
            const GroupRing ring = group_ring(g, pp, true);
            const ChainReport rep = run_chain(ring.order, ring.form);
            std::size_t bad = 0, checked = 0;
            for (const ChainStep& s : rep.steps) {
                for (const Lattice* l : {&s.order_lattice, &s.radical}) {
                    const Lattice ol = left_order(*l, ring.form, ring.alg);
                    const Lattice orr = right_order(*l, ring.form, ring.alg);
                    if (!lattice_eq(
                            ol, multiplier_order_direct(*l, Side::left, ring.alg)))
                        ++bad;
                    if (!lattice_eq(orr, multiplier_order_direct(*l, Side::right,
                                                                 ring.alg)))
                        ++bad;
                    if (!lattice_eq(idealizer(*l, ring.form, ring.alg),
                                    lattice_intersect(ol, orr, ring.form)))
                        ++bad;
                    ++checked;
                }
            }
            // Conductors of the ascending orders into the group ring.
            for (std::size_t n = 1; n < rep.steps.size(); ++n) {
                const OrderLat gam =
                    make_order(rep.steps[n].order_lattice, ring.alg);
                const Lattice f = conductor(gam, ring.order, ring.form);
                if (!lattice_eq(f, conductor_direct(gam, ring.order))) ++bad;
                if (!lattice_eq(f, conductor_direct_onesided(gam, ring.order,
                                                             Side::left)))
                    ++bad;
                if (!lattice_eq(f, conductor_direct_onesided(gam, ring.order,
                                                             Side::right)))
                    ++bad;
                ++checked;
            }
            std::ostringstream text;
            text << "multiplier and conductor routes on " << name << ": "
                 << checked << " lattices, " << bad << " mismatches";
            return {bad == 0, text.str()};
        });
    }

    // Layered radical versus exhaustive enumeration.
    for (const long p : {2L, 3L}) {
        tasks.push_back([p]() -> detail::TaskResult {
            const Prime pp(p);
            const std::size_t bound = p == 2 ? 8 : 9;
            std::size_t bad = 0, count = 0;
            for (const auto& [name, g] : detail::small_group_zoo(bound)) {
                const GroupRing ring = group_ring(g, pp);
                const FpAlgebra A = fp_algebra_from_order(ring.order);
                if (!detail::same_rowspan(fp_radical(A), brute_force_radical(A)))
                    ++bad;
                ++count;
            }
            std::ostringstream text;
            text << "radical vs enumeration over F_" << p << ": " << count
                 << " group algebras, " << bad << " mismatches";
            return {bad == 0, text.str()};
        });
    }
    tasks.push_back([]() -> detail::TaskResult {
        // Random quotients of small group algebras.
        std::mt19937 rng(910);
        std::size_t done = 0, bad = 0, trials = 0;
        while (done < 50 && trials < 400) {
            ++trials;
            const long p = trials % 2 == 0 ? 2 : 3;
            const Prime pp(p);
            const auto zoo = detail::small_group_zoo(p == 2 ? 8 : 9);
            const auto& g = zoo[trials % zoo.size()].second;
            const GroupRing ring = group_ring(g, pp);
            const FpAlgebra A = fp_algebra_from_order(ring.order);
            FpMat gens(pp, 1 + trials % 2, A.dim);
            std::uniform_int_distribution<long> coef(0, p - 1);
            for (auto& v : gens.a) v = coef(rng);
            FpMat ideal = fp_ideal_generated(A, gens);
            const auto pivots = fp_rref(ideal);
            if (ideal.rows == 0 || ideal.rows == A.dim) continue;
            const FpAlgebra Q = fp_quotient(A, ideal, pivots);
            if (!detail::same_rowspan(fp_radical(Q), brute_force_radical(Q)))
                ++bad;
            ++done;
        }
        std::ostringstream text;
        text << "radical vs enumeration on " << done
             << " random quotient algebras: " << bad << " mismatches";
        return {done == 50 && bad == 0, text.str()};
    });

    const auto results = detail::run_tasks(tasks);
    SuiteResult out;
    for (const auto& r : results) {
        out.lines.push_back(r.text);
        out.ok = out.ok && r.ok;
    }
    out.lines.push_back(out.ok ? "all oracle suites pass"
                               : "oracle suites FAILED");
    return out;
}

}  // namespace porder
