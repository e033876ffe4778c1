#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "qcsp/collapse.hpp"
#include "qcsp/fixtures.hpp"
#include "qcsp/homomorphism.hpp"
#include "qcsp/io.hpp"
#include "qcsp/microcosm.hpp"
#include "qcsp/polymorphism.hpp"
#include "qcsp/sentence.hpp"
#include "qcsp/solve.hpp"
#include "qcsp/verify.hpp"

namespace qcsp::cli {

namespace detail {

inline Structure load_structure(const std::string& path, std::istream& in) {
    if (path == "-") return read_structure(in);
    std::ifstream f(path);
    if (!f) throw Error("cannot open structure file '" + path + "'");
    return read_structure(f);
}

inline PHSentence load_sentence(const std::string& path, std::istream& in) {
    if (path == "-") return read_sentence(in);
    std::ifstream f(path);
    if (!f) throw Error("cannot open sentence file '" + path + "'");
    return read_sentence(f);
}

template <typename T>
void emit(const std::string& path, std::ostream& out, const T& value) {
    if (path.empty() || path == "-") {
        out << to_text(value);
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot open output file '" + path + "'");
    f << to_text(value);
}

inline void print_nu_table(std::ostream& out, const OperationTable& f) {
    out << "arity " << f.arity() << "\n";
    out << "domain " << f.domain_size() << "\n";
    for (std::size_t r = 0; r < f.cells(); ++r) {
        const Tuple args = f.args_of(r);
        for (int a : args) out << a << " ";
        out << f.at(r) << "\n";
    }
}

inline void print_report(std::ostream& out, const SuiteReport& report) {
    out << "suite " << report.suite << ": checked " << report.checked << " instances, "
        << report.discrepancies.size() << " discrepancies\n";
    for (std::size_t i = 0; i < report.discrepancies.size(); ++i) {
        const Discrepancy& d = report.discrepancies[i];
        out << "discrepancy " << i + 1 << " [" << d.fixture << "]: " << d.detail << "\n";
        if (!d.structure_text.empty())
            out << "--- structure (.rel) ---\n" << d.structure_text;
        if (!d.sentence_text.empty())
            out << "--- sentence (.ph) ---\n" << d.sentence_text;
    }
}

inline std::set<std::string> split_names(const std::string& csv) {
    std::set<std::string> names;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        if (comma > start) names.insert(csv.substr(start, comma - start));
        start = comma + 1;
    }
    return names;
}

}  // namespace detail

/// Run one CLI invocation. `args` excludes the program name. Returns the
/// process exit code: 0 yes/success, 1 no, 2 usage or input error, 3 budget
/// exceeded.
inline int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"Finite-model workbench for quantified constraint satisfaction"};
    app.name("qcsp");
    app.require_subcommand(1);

    int exit_code = 0;

    // --- solve ---
    auto* solve = app.add_subcommand("solve", "Decide a sentence on a structure");
    std::string solve_structure, solve_sentence, solve_mode = "game";
    int solve_k = 2, solve_elem = 0;
    std::uint64_t solve_budget = 0;
    bool solve_normalize = false;
    solve->add_option("--structure", solve_structure, "Structure file (.rel), or -")->required();
    solve->add_option("--sentence", solve_sentence, "Sentence file (.ph), or -")->required();
    solve->add_option("--mode", solve_mode, "game | csp | collapse")
        ->check(CLI::IsMember({"game", "csp", "collapse"}));
    solve->add_option("--k", solve_k, "Number of surviving universals (collapse mode)");
    solve->add_option("--elem", solve_elem, "Collapse element (collapse mode)");
    solve->add_option("--budget", solve_budget, "Node budget for the game search (0 = unlimited)");
    solve->add_flag("--normalize", solve_normalize, "Normalize the quantifier prefix first");
    solve->callback([&] {
        const Structure b = detail::load_structure(solve_structure, in);
        PHSentence phi = detail::load_sentence(solve_sentence, in);
        if (solve_normalize) phi = normalize_alternation(phi);
        bool truth;
        if (solve_mode == "csp")
            truth = csp_eval(b, phi);
        else if (solve_mode == "collapse")
            truth = qcsp_via_collapsibility(b, phi, solve_k, solve_elem);
        else
            truth = qcsp_eval(b, phi, EvalOptions{solve_budget});
        out << (truth ? "yes" : "no") << "\n";
        exit_code = truth ? 0 : 1;
    });

    // --- core ---
    auto* core = app.add_subcommand("core", "Compute the core of a structure");
    std::string core_structure, core_out;
    core->add_option("--structure", core_structure, "Structure file (.rel), or -")->required();
    core->add_option("-o,--output", core_out, "Output file (default stdout)");
    core->callback([&] {
        const Structure b = detail::load_structure(core_structure, in);
        detail::emit(core_out, out, core_of(b));
    });

    // --- iso ---
    auto* iso = app.add_subcommand("iso", "Test two structures for isomorphism");
    std::string iso_left, iso_right;
    iso->add_option("--left", iso_left, "First structure file")->required();
    iso->add_option("--right", iso_right, "Second structure file")->required();
    iso->callback([&] {
        const Structure l = detail::load_structure(iso_left, in);
        const Structure r = detail::load_structure(iso_right, in);
        const bool same = is_isomorphic(l, r);
        out << (same ? "yes" : "no") << "\n";
        exit_code = same ? 0 : 1;
    });

    // --- nu ---
    auto* nu = app.add_subcommand("nu", "Search for a near-unanimity polymorphism");
    std::string nu_structure;
    int nu_arity = 3;
    nu->add_option("--structure", nu_structure, "Structure file (.rel), or -")->required();
    nu->add_option("--arity", nu_arity, "Operation arity (default 3)");
    nu->callback([&] {
        const Structure b = detail::load_structure(nu_structure, in);
        const auto table = find_nu(b, nu_arity);
        if (table) {
            detail::print_nu_table(out, *table);
            exit_code = 0;
        } else {
            out << "none\n";
            exit_code = 1;
        }
    });

    // --- collapse ---
    auto* collapse = app.add_subcommand("collapse", "Emit a collapsing or its Chen reduction");
    std::string col_structure, col_sentence, col_survivors, col_emit = "phiprime", col_out;
    int col_elem = 0;
    collapse->add_option("--structure", col_structure, "Structure file (.rel), or -")->required();
    collapse->add_option("--sentence", col_sentence, "Sentence file (.ph), or -")->required();
    collapse->add_option("--survivors", col_survivors,
                         "Comma-separated surviving universal variables (default none)");
    collapse->add_option("--elem", col_elem, "Collapse element a (default 0)");
    collapse->add_option("--emit", col_emit, "phiprime | chen | structure")
        ->check(CLI::IsMember({"phiprime", "chen", "structure"}));
    collapse->add_option("-o,--output", col_out, "Output file (default stdout)");
    collapse->callback([&] {
        const Structure b = detail::load_structure(col_structure, in);
        const PHSentence phi = detail::load_sentence(col_sentence, in);
        const std::set<std::string> survivors = detail::split_names(col_survivors);
        if (col_emit == "structure") {
            detail::emit(col_out, out, build_collapse_structure(b, phi, survivors, col_elem));
        } else {
            PHSentence result = apply_collapsing(phi, survivors, col_elem);
            if (col_emit == "chen") result = chen_reduction(result, b.size());
            detail::emit(col_out, out, result);
        }
    });

    // --- microcosm ---
    auto* micro = app.add_subcommand("microcosm", "Microcosm constructions");
    micro->require_subcommand(1);
    std::string mb_structure, mb_out, mf_sentence, mf_out, mw_sentence, mw_out, m_fsym = "F";
    auto* mbuild = micro->add_subcommand("build", "Build the c-valid companion structure");
    mbuild->add_option("--structure", mb_structure, "Structure file (.rel), or -")->required();
    mbuild->add_option("--f-symbol", m_fsym, "Name of the fresh binary symbol (default F)");
    mbuild->add_option("-o,--output", mb_out, "Output file (default stdout)");
    mbuild->callback([&] {
        const Structure b = detail::load_structure(mb_structure, in);
        detail::emit(mb_out, out, microcosm_structure(b, m_fsym));
    });
    auto* mfwd = micro->add_subcommand("forward", "Reduce a sigma-sentence to the microcosm");
    mfwd->add_option("--sentence", mf_sentence, "Sentence file (.ph), or -")->required();
    mfwd->add_option("--f-symbol", m_fsym, "Name of the fresh binary symbol (default F)");
    mfwd->add_option("-o,--output", mf_out, "Output file (default stdout)");
    mfwd->callback([&] {
        const PHSentence phi = detail::load_sentence(mf_sentence, in);
        detail::emit(mf_out, out, forward_reduce(phi, m_fsym));
    });
    auto* mbwd = micro->add_subcommand("backward", "Reduce a microcosm sentence back to sigma");
    mbwd->add_option("--sentence", mw_sentence, "Sentence file (.ph), or -")->required();
    mbwd->add_option("--f-symbol", m_fsym, "Name of the binary symbol to eliminate (default F)");
    mbwd->add_option("-o,--output", mw_out, "Output file (default stdout)");
    mbwd->callback([&] {
        const PHSentence phi = detail::load_sentence(mw_sentence, in);
        detail::emit(mw_out, out, backward_reduce(phi, m_fsym));
    });

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "Run a seeded property suite");
    std::string verify_suite_name;
    int verify_samples = 100;
    std::uint64_t verify_seed = 0;
    verify->add_option("--suite", verify_suite_name, "microcosm | chen | collapse | fo")
        ->required()
        ->check(CLI::IsMember({"microcosm", "chen", "collapse", "fo"}));
    verify->add_option("--samples", verify_samples, "Random samples per subcheck (default 100)");
    verify->add_option("--seed", verify_seed, "Random seed (default 0)");
    verify->callback([&] {
        const SuiteReport report = verify_suite(verify_suite_name, verify_samples, verify_seed);
        detail::print_report(out, report);
        exit_code = report.ok() ? 0 : 1;
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const BudgetExceededError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (line " << e.line() << ", column " << e.column() << ")\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace qcsp::cli
