#pragma once

// File formats and report serialization for the command-line tools.
//
// Group file:   {"order": m, "identity": i, "table": [[...], ...]}
// Algebra file: {"dim": n, "p": p, "structure_constants": n x n x n array of
//               fraction strings, "unit": [n strings], "tau": [n strings],
//               "order_basis": optional n x n array of fraction strings}
// Reports serialize to {"group", "p", "dimension", "length", "steps",
// "checks"} with all indices as p-valuations.

#include <porder/algebra.hpp>
#include <porder/chain.hpp>
#include <porder/groups.hpp>
#include <porder/lattice.hpp>
#include <porder/rational.hpp>
#include <porder/symform.hpp>

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace porder {

// A chain problem ready to run: the algebra is heap-owned so the struct can
// be moved without invalidating order.alg.
struct ChainInput {
    std::shared_ptr<const Algebra> alg_owner;
    const Algebra& alg;
    OrderLat order;
    SymForm form;
    std::string label;
    bool checks = false;  // run the symmetric-order checks after the chain
};

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

namespace detail {

inline Rat json_rat(const nlohmann::json& v, const char* where) {
    if (!v.is_string())
        throw ValidationError(std::string(where) +
                              ": rationals must be fraction strings");
    return parse_rat(v.get<std::string>());
}

inline std::vector<Rat> json_rat_vector(const nlohmann::json& v,
                                        std::size_t n, const char* where) {
    if (!v.is_array() || v.size() != n)
        throw ValidationError(std::string(where) + ": expected an array of " +
                              std::to_string(n) + " fraction strings");
    std::vector<Rat> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = json_rat(v[i], where);
    return out;
}

}  // namespace detail

inline GroupTable group_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("table"))
        throw ValidationError("group file: need fields order and table");
    if (!j["order"].is_number_integer())
        throw ValidationError("group file: order must be an integer");
    const long m = j["order"].get<long>();
    if (m < 1) throw ValidationError("group file: order must be positive");
    const auto& t = j["table"];
    if (!t.is_array() || t.size() != static_cast<std::size_t>(m))
        throw ValidationError("group file: table must be an order x order grid");
    std::vector<std::size_t> flat;
    flat.reserve(static_cast<std::size_t>(m) * m);
    for (const auto& row : t) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(m))
            throw ValidationError(
                "group file: table must be an order x order grid");
        for (const auto& v : row) {
            if (!v.is_number_integer() || v.get<long>() < 0)
                throw ValidationError(
                    "group file: table entries must be element indices");
            flat.push_back(v.get<std::size_t>());
        }
    }
    GroupTable g = group_from_table(static_cast<std::size_t>(m), flat);
    if (j.contains("identity")) {
        if (!j["identity"].is_number_integer() ||
            j["identity"].get<long>() != static_cast<long>(g.identity))
            throw ValidationError("group file: declared identity is wrong");
    }
    return g;
}

// Builds the chain problem for an algebra/order file.  The prime in the file
// is authoritative; the caller may pass its own to cross-check.
inline ChainInput chain_input_from_algebra_json(const nlohmann::json& j,
                                                std::string label) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("p"))
        throw ValidationError("algebra file: need fields dim and p");
    if (!j["dim"].is_number_integer() || !j["p"].is_number_integer())
        throw ValidationError("algebra file: dim and p must be integers");
    const long n = j["dim"].get<long>();
    if (n < 1) throw ValidationError("algebra file: dim must be positive");
    const Prime p(j["p"].get<long>());

    if (!j.contains("structure_constants") || !j.contains("unit") ||
        !j.contains("tau"))
        throw ValidationError(
            "algebra file: need structure_constants, unit and tau");
    const auto& sc = j["structure_constants"];
    const std::size_t un = static_cast<std::size_t>(n);
    if (!sc.is_array() || sc.size() != un)
        throw ValidationError(
            "algebra file: structure_constants must be dim x dim x dim");
    std::vector<Rat> c(un * un * un);
    for (std::size_t i = 0; i < un; ++i) {
        if (!sc[i].is_array() || sc[i].size() != un)
            throw ValidationError(
                "algebra file: structure_constants must be dim x dim x dim");
        for (std::size_t k = 0; k < un; ++k) {
            const auto row = detail::json_rat_vector(
                sc[i][k], un, "algebra file structure_constants");
            for (std::size_t l = 0; l < un; ++l)
                c[(i * un + k) * un + l] = row[l];
        }
    }
    auto unit = detail::json_rat_vector(j["unit"], un, "algebra file unit");
    auto tau = detail::json_rat_vector(j["tau"], un, "algebra file tau");

    auto owner = std::make_shared<const Algebra>(
        make_algebra(un, std::move(c), std::move(unit), p));
    const Algebra& alg = *owner;
    SymForm form = make_symform(alg, std::move(tau));

    Mat basis = Mat::identity(un);
    if (j.contains("order_basis")) {
        const auto& ob = j["order_basis"];
        if (!ob.is_array() || ob.size() != un)
            throw ValidationError("algebra file: order_basis must be dim x dim");
        for (std::size_t i = 0; i < un; ++i) {
            const auto row =
                detail::json_rat_vector(ob[i], un, "algebra file order_basis");
            for (std::size_t k = 0; k < un; ++k) basis.at(i, k) = row[k];
        }
    }
    OrderLat order = make_order(lattice_from_generators(basis, p), alg);
    return ChainInput{std::move(owner), alg, std::move(order), std::move(form),
                      std::move(label), false};
}

inline ChainInput chain_input_from_group(const GroupTable& g, Prime p,
                                         std::string label,
                                         bool demand_pgroup = false) {
    GroupRing ring = group_ring(g, p, demand_pgroup);
    // The checks assume a symmetric order in an indecomposable algebra; for
    // p-groups F_pG is local, so they apply.
    const bool checks = is_p_power(g.m, p.v);
    return ChainInput{std::move(ring.alg_owner), ring.alg,
                      std::move(ring.order),     std::move(ring.form),
                      std::move(label),          checks};
}

inline nlohmann::json report_to_json(const ChainReport& rep,
                                     const std::string& label, long p,
                                     std::size_t dim,
                                     const std::map<std::string, bool>& checks) {
    nlohmann::json j;
    j["group"] = label;
    j["p"] = p;
    j["dimension"] = static_cast<long>(dim);
    j["length"] = rep.length;
    j["steps"] = nlohmann::json::array();
    for (std::size_t n = 0; n < rep.steps.size(); ++n) {
        const ChainStep& s = rep.steps[n];
        j["steps"].push_back({{"n", static_cast<long>(n)},
                              {"index_val", s.index_from_start},
                              {"radical_selfdual", s.radical_selfdual},
                              {"hereditary", s.hereditary}});
    }
    j["checks"] = nlohmann::json::object();
    for (const auto& [name, ok] : checks) j["checks"][name] = ok;
    return j;
}

inline std::string report_to_text(const ChainReport& rep,
                                  const std::string& label, long p,
                                  std::size_t dim,
                                  const std::map<std::string, bool>& checks) {
    std::ostringstream out;
    out << "group: " << label << "\n";
    out << "p: " << p << "\n";
    out << "dimension: " << dim << "\n";
    out << "length: " << rep.length << ", head order reached\n";
    for (std::size_t n = 0; n < rep.steps.size(); ++n) {
        const ChainStep& s = rep.steps[n];
        out << "step " << n << ": index valuation " << s.index_from_start
            << ", radical " << (s.radical_selfdual ? "self-dual" : "not self-dual")
            << ", " << (s.hereditary ? "hereditary" : "not hereditary") << "\n";
    }
    if (checks.empty()) {
        out << "checks: skipped\n";
    } else {
        for (const auto& [name, ok] : checks)
            out << "check " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
    }
    return out.str();
}

}  // namespace porder
