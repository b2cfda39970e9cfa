#pragma once

// Command-line front end.  Exit codes: 0 success, 1 input or usage error,
// 2 a theorem check or verification suite failed.

#include <porder/io.hpp>
#include <porder/suites.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace porder {

// Built-in names: C{n}, C{a}xC{b}..., D{2n}, Q8, E{p}{r} with single-digit p.
inline GroupTable parse_builtin_group(const std::string& name) {
    const auto num = [&](const std::string& s) -> long {
        if (s.empty() || s.size() > 6)
            throw ValidationError("unknown group name: " + name);
        long v = 0;
        for (const char ch : s) {
            if (ch < '0' || ch > '9')
                throw ValidationError("unknown group name: " + name);
            v = v * 10 + (ch - '0');
        }
        return v;
    };
    if (name == "Q8") return group_quaternion8();
    if (name.size() >= 2 && name[0] == 'D')
        return group_dihedral(static_cast<std::size_t>(num(name.substr(1))));
    if (name.size() >= 3 && name[0] == 'E') {
        const Prime p(num(name.substr(1, 1)));
        const long r = num(name.substr(2));
        if (r < 1 || r > 5)
            throw ValidationError("unknown group name: " + name);
        return group_elementary_abelian(p.v, static_cast<std::size_t>(r));
    }
    if (!name.empty() && name[0] == 'C') {
        std::vector<std::string> toks;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= name.size(); ++i)
            if (i == name.size() || name[i] == 'x') {
                toks.push_back(name.substr(start, i - start));
                start = i + 1;
            }
        GroupTable g = group_cyclic(1);
        for (const auto& t : toks) {
            if (t.size() < 2 || t[0] != 'C')
                throw ValidationError("unknown group name: " + name);
            g = group_direct_product(
                g, group_cyclic(static_cast<std::size_t>(num(t.substr(1)))));
        }
        return g;
    }
    throw ValidationError("unknown group name: " + name);
}

namespace detail {

struct ChainCfg {
    std::string group;
    std::string input;
    std::string format = "text";
    long p = 0;
    long max_steps = 1000;
};

struct VerifyCfg {
    std::string suite;
    std::string suite_flag;
    long p = 0;
    long max_order = 0;
};

inline int cmd_chain(const ChainCfg& cfg, std::ostream& out,
                     std::ostream& err) {
    try {
        ChainInput in = [&]() -> ChainInput {
            if (!cfg.group.empty()) {
                if (cfg.p < 2)
                    throw ValidationError("chain: --group needs --p");
                return chain_input_from_group(parse_builtin_group(cfg.group),
                                              Prime(cfg.p), cfg.group);
            }
            const nlohmann::json j = load_json_file(cfg.input);
            if (j.is_object() && j.contains("table")) {
                if (cfg.p < 2)
                    throw ValidationError("chain: a group input file needs --p");
                return chain_input_from_group(group_from_json(j), Prime(cfg.p),
                                              cfg.input);
            }
            if (j.is_object() && j.contains("structure_constants")) {
                ChainInput ain = chain_input_from_algebra_json(j, cfg.input);
                if (cfg.p != 0 && cfg.p != ain.alg.p.v)
                    throw ValidationError(
                        "chain: --p disagrees with the input file");
                return ain;
            }
            throw ValidationError("unrecognized input file: " + cfg.input);
        }();
        const ChainReport rep = run_chain(in.order, in.form, cfg.max_steps);
        std::map<std::string, bool> checks;
        if (in.checks) checks = verify_symmetric_theorems(rep, in.order, in.form);
        if (cfg.format == "json")
            out << report_to_json(rep, in.label, in.alg.p.v, in.alg.dim, checks)
                       .dump(2)
                << "\n";
        else
            out << report_to_text(rep, in.label, in.alg.p.v, in.alg.dim, checks);
        for (const auto& [name, ok] : checks)
            if (!ok) return 2;
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int cmd_verify(VerifyCfg cfg, std::ostream& out, std::ostream& err) {
    try {
        if (!cfg.suite_flag.empty()) {
            if (!cfg.suite.empty() && cfg.suite != cfg.suite_flag)
                throw ValidationError("verify: conflicting suite names");
            cfg.suite = cfg.suite_flag;
        }
        SuiteResult res;
        if (cfg.suite == "abelian") {
            const Prime p(cfg.p == 0 ? 2 : cfg.p);
            std::size_t bound = static_cast<std::size_t>(cfg.max_order);
            if (bound == 0)
                for (long b = p.v; b <= 32; b *= p.v)
                    bound = static_cast<std::size_t>(b);
            res = suite_abelian(p, bound);
        } else if (cfg.suite == "pgroup-structure") {
            if (cfg.p != 0 && cfg.p != 2 && cfg.p != 3)
                throw ValidationError(
                    "verify: the structure suite covers p = 2 and p = 3");
            res = suite_pgroup_structure(cfg.p);
        } else if (cfg.suite == "oracles") {
            res = suite_oracles();
        } else {
            throw ValidationError("unknown suite: " + cfg.suite);
        }
        for (const auto& line : res.lines) out << line << "\n";
        return res.ok ? 0 : 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{
        "Exact radical idealizer chains of p-local orders in semisimple "
        "algebras"};
    app.name("porder");

    detail::ChainCfg ccfg;
    CLI::App* chain =
        app.add_subcommand("chain", "Run the radical idealizer chain");
    chain->add_option("--group", ccfg.group,
                      "built-in group: C{n}, C{a}xC{b}..., D8, Q8, E{p}{r}");
    chain->add_option("--input", ccfg.input, "group or algebra JSON file");
    chain->add_option("--p", ccfg.p, "the prime p");
    chain->add_option("--max-steps", ccfg.max_steps, "guard on the chain length")
        ->capture_default_str();
    chain->add_option("--format", ccfg.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    detail::VerifyCfg vcfg;
    CLI::App* verify =
        app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("SUITE", vcfg.suite,
                       "abelian | pgroup-structure | oracles");
    verify->add_option("--suite", vcfg.suite_flag, "suite name (alternative)");
    verify->add_option("--p", vcfg.p, "prime (abelian default 2)");
    verify->add_option("--max-order", vcfg.max_order,
                       "largest |G| for the abelian suite (default: largest "
                       "power of p at most 32)");

    app.require_subcommand(1);
    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    if (app.got_subcommand(chain)) {
        if (ccfg.group.empty() == ccfg.input.empty()) {
            err << "error: chain needs exactly one of --group or --input\n";
            return 1;
        }
        return detail::cmd_chain(ccfg, out, err);
    }
    if (vcfg.suite.empty() && vcfg.suite_flag.empty()) {
        err << "error: verify needs a suite name\n";
        return 1;
    }
    return detail::cmd_verify(vcfg, out, err);
}

}  // namespace porder
