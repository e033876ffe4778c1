#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qcsp/collapse.hpp"
#include "qcsp/fixtures.hpp"
#include "qcsp/fo.hpp"
#include "qcsp/generate.hpp"
#include "qcsp/io.hpp"
#include "qcsp/microcosm.hpp"
#include "qcsp/polymorphism.hpp"
#include "qcsp/solve.hpp"

namespace qcsp {

/// One failed check. The offending instance is carried verbatim in both file
/// formats so a report can be replayed through the CLI.
struct Discrepancy {
    std::string fixture;
    std::string detail;
    std::string structure_text;  // .rel format
    std::string sentence_text;   // .ph format
};

struct SuiteReport {
    std::string suite;
    long checked = 0;
    std::vector<Discrepancy> discrepancies = {};

    bool ok() const { return discrepancies.empty(); }
    void absorb(const SuiteReport& other) {
        checked += other.checked;
        discrepancies.insert(discrepancies.end(), other.discrepancies.begin(),
                             other.discrepancies.end());
    }
};

namespace detail {

// Independent, reproducible stream per (seed, lane) so subsuites never share
// randomness and adding one does not perturb the others.
inline std::mt19937_64 suite_rng(std::uint64_t seed, std::uint64_t lane) {
    return std::mt19937_64(seed * 1000003ULL + lane);
}

inline std::vector<std::pair<std::string, Structure>> microcosm_fixtures() {
    return {{"K2", fixtures::k2()},
            {"P1", fixtures::p1()},
            {"U2", fixtures::u2()},
            {"K3", fixtures::k3()}};
}

}  // namespace detail

/// qcsp_eval(b, phi) must equal qcsp_eval(C, forward_reduce(phi)) where C is
/// b's microcosm: checked on the bounded-exhaustive suite (<= 2 universals,
/// <= 2 existentials, <= 3 atoms) plus `samples` random sentences per fixture.
inline SuiteReport verify_microcosm_forward(int samples, std::uint64_t seed) {
    SuiteReport report{"microcosm-forward"};
    std::uint64_t lane = 100;
    // Plain references, not structured bindings: the lambda below captures
    // them, which clang 14 rejects for bindings (P1091 not implemented).
    for (const auto& entry : detail::microcosm_fixtures()) {
        const std::string& name = entry.first;
        const Structure& b = entry.second;
        const Structure c = microcosm_structure(b);
        auto check = [&](const PHSentence& phi) {
            ++report.checked;
            const bool lhs = qcsp_eval(b, phi);
            const bool rhs = qcsp_eval(c, forward_reduce(phi));
            if (lhs != rhs)
                report.discrepancies.push_back(
                    {name,
                     "qcsp_eval(b) = " + std::string(lhs ? "true" : "false") +
                         " but qcsp_eval(C, forward_reduce) = " + (rhs ? "true" : "false"),
                     to_text(b), to_text(phi)});
        };
        for_each_sentence(b.signature(), 2, 2, 3, check);
        auto rng = detail::suite_rng(seed, lane++);
        const SentenceOptions opt{4, 4, 6};
        for (int i = 0; i < samples; ++i) check(random_sentence(b.signature(), opt, rng));
    }
    return report;
}

/// qcsp_eval(C, phi) must equal qcsp_eval(b, backward_reduce(phi)) for
/// arbitrary sentences over sigma + F, not just images of forward_reduce.
inline SuiteReport verify_microcosm_backward(int samples, std::uint64_t seed) {
    SuiteReport report{"microcosm-backward"};
    std::uint64_t lane = 200;
    for (const auto& [name, b] : detail::microcosm_fixtures()) {
        const Structure c = microcosm_structure(b);
        auto rng = detail::suite_rng(seed, lane++);
        const SentenceOptions opt{3, 3, 5};
        for (int i = 0; i < samples; ++i) {
            const PHSentence phi = random_sentence(c.signature(), opt, rng);
            ++report.checked;
            const bool lhs = qcsp_eval(c, phi);
            const bool rhs = qcsp_eval(b, backward_reduce(phi));
            if (lhs != rhs)
                report.discrepancies.push_back(
                    {name,
                     "qcsp_eval(C) = " + std::string(lhs ? "true" : "false") +
                         " but qcsp_eval(b, backward_reduce) = " + (rhs ? "true" : "false"),
                     to_text(c), to_text(phi)});
        }
    }
    return report;
}

/// Every atom of a random conjunction over C's signature is satisfied by the
/// all-c assignment, and csp_eval accepts every non-bottom primitive positive
/// sentence over C. Runs over the microcosm of every zoo fixture.
inline SuiteReport verify_cvalidity(int conjunctions, int pp_samples, std::uint64_t seed) {
    SuiteReport report{"c-validity"};
    std::uint64_t lane = 300;
    for (const auto& [name, b] : fixtures::zoo()) {
        const Structure c = microcosm_structure(b);
        const int cc = b.size();
        auto rng = detail::suite_rng(seed, lane++);
        for (int i = 0; i < conjunctions; ++i) {
            const PHSentence phi = random_pp_sentence(c.signature(), 6, 6, rng);
            ++report.checked;
            for (const Atom& a : phi.body()) {
                const Tuple all_c(a.args.size(), cc);
                if (!c.relation(a.symbol).count(all_c)) {
                    report.discrepancies.push_back(
                        {name, "atom over '" + a.symbol + "' not satisfied by the all-c assignment",
                         to_text(c), to_text(phi)});
                    break;
                }
            }
        }
        auto rng2 = detail::suite_rng(seed, lane++);
        for (int i = 0; i < pp_samples; ++i) {
            const PHSentence phi = random_pp_sentence(c.signature(), 6, 6, rng2);
            ++report.checked;
            if (!csp_eval(c, phi))
                report.discrepancies.push_back(
                    {name, "primitive positive sentence rejected by csp_eval on the microcosm",
                     to_text(c), to_text(phi)});
        }
    }
    return report;
}

/// chen_reduction soundness: csp_eval(b, Phi'') = qcsp_eval(b, Phi') for every
/// collapsing Phi' of every sentence in the bounded-exhaustive suite, every
/// survivor set and every collapse element. Exhaustive; the seed is unused.
inline SuiteReport verify_chen(std::uint64_t /*seed*/) {
    SuiteReport report{"chen"};
    const std::vector<std::pair<std::string, Structure>> targets = {{"K2", fixtures::k2()},
                                                                    {"U2", fixtures::u2()}};
    for (const auto& entry : targets) {  // plain references for the lambda capture (clang 14)
        const std::string& name = entry.first;
        const Structure& b = entry.second;
        for_each_sentence(b.signature(), 2, 2, 3, [&](const PHSentence& phi) {
            std::vector<std::string> universals;
            for (const auto& qv : phi.prefix())
                if (qv.quantifier == Quantifier::Universal) universals.push_back(qv.name);
            for (std::size_t k = 0; k <= universals.size(); ++k) {
                detail::for_each_subset_of_size(universals, k, [&](const std::set<std::string>& lambda) {
                    for (int a = 0; a < b.size(); ++a) {
                        const PHSentence phi_prime = apply_collapsing(phi, lambda, a);
                        const PHSentence phi_second = chen_reduction(phi_prime, b.size());
                        ++report.checked;
                        const bool lhs = csp_eval(b, phi_second);
                        const bool rhs = qcsp_eval(b, phi_prime);
                        if (lhs != rhs)
                            report.discrepancies.push_back(
                                {name,
                                 "csp_eval(Phi'') = " + std::string(lhs ? "true" : "false") +
                                     " but qcsp_eval(Phi') = " + (rhs ? "true" : "false") +
                                     " for a = " + std::to_string(a) + "; Phi'' is:\n" +
                                     to_text(phi_second),
                                 to_text(b), to_text(phi_prime)});
                    }
                });
            }
        });
    }
    return report;
}

/// The conjunction over every survivor set lambda (all sizes up to 2) of
/// "a homomorphism D(lambda) -> b exists" equals qcsp_eval(b, phi), for
/// b = U2 and both collapse elements. Exhaustive; the seed is unused.
inline SuiteReport verify_dlambda(std::uint64_t /*seed*/) {
    SuiteReport report{"dlambda"};
    const Structure b = fixtures::u2();
    for_each_sentence(b.signature(), 2, 2, 3, [&](const PHSentence& phi) {
        std::vector<std::string> universals;
        for (const auto& qv : phi.prefix())
            if (qv.quantifier == Quantifier::Universal) universals.push_back(qv.name);
        const bool direct = qcsp_eval(b, phi);
        for (int a = 0; a < b.size(); ++a) {
            bool all_hom = true;
            for (std::size_t k = 0; k <= universals.size() && all_hom; ++k) {
                detail::for_each_subset_of_size(universals, k,
                                                [&](const std::set<std::string>& lambda) {
                                                    if (!all_hom) return;
                                                    Structure d =
                                                        build_collapse_structure(b, phi, lambda, a);
                                                    if (!find_homomorphism(d, b)) all_hom = false;
                                                });
            }
            ++report.checked;
            if (all_hom != direct)
                report.discrepancies.push_back(
                    {"U2",
                     "conjunction of D(lambda) -> b homomorphisms = " +
                         std::string(all_hom ? "true" : "false") + " but qcsp_eval = " +
                         (direct ? "true" : "false") + " for a = " + std::to_string(a),
                     to_text(b), to_text(phi)});
        }
    });
    return report;
}

/// Collapsibility pipeline: K2, U2 and L1 each have a ternary NU (so they are
/// (2,a)-collapsible), K3 has none, and deciding via collapsings agrees with
/// the game evaluation on `samples` random sentences per fixture and element.
inline SuiteReport verify_collapse(int samples, std::uint64_t seed) {
    SuiteReport report{"collapse"};
    const std::vector<std::pair<std::string, Structure>> targets = {
        {"K2", fixtures::k2()}, {"U2", fixtures::u2()}, {"L1", fixtures::l1()}};
    std::uint64_t lane = 500;
    for (const auto& [name, b] : targets) {
        ++report.checked;
        if (!find_nu(b, 3))
            report.discrepancies.push_back(
                {name, "expected a ternary near-unanimity polymorphism, found none", to_text(b),
                 ""});
        for (int a = 0; a < b.size(); ++a) {
            auto rng = detail::suite_rng(seed, lane++);
            const SentenceOptions opt{4, 3, 5};
            for (int i = 0; i < samples; ++i) {
                const PHSentence phi = random_sentence(b.signature(), opt, rng);
                ++report.checked;
                const bool via = qcsp_via_collapsibility(b, phi, 2, a);
                const bool direct = qcsp_eval(b, phi);
                if (via != direct)
                    report.discrepancies.push_back(
                        {name,
                         "qcsp_via_collapsibility(j=2, a=" + std::to_string(a) + ") = " +
                             std::string(via ? "true" : "false") + " but qcsp_eval = " +
                             (direct ? "true" : "false"),
                         to_text(b), to_text(phi)});
            }
        }
    }
    ++report.checked;
    if (find_nu(fixtures::k3(), 3))
        report.discrepancies.push_back(
            {"K3", "found a ternary near-unanimity polymorphism, expected none",
             to_text(fixtures::k3()), ""});
    return report;
}

/// FO expressibility cross-check: with Theta = forall x. not(U0(x) and U1(x)),
/// eval_fo(D_phi, Theta) = csp_eval(U2, phi) for every constant-free primitive
/// positive phi with <= 4 variables and <= 4 atoms. Exhaustive; seed unused.
inline SuiteReport verify_fo(std::uint64_t /*seed*/) {
    SuiteReport report{"fo"};
    const Structure b = fixtures::u2();
    const FOSentence theta(
        {{Quantifier::Universal, "x"}},
        FOFormula::negation(FOFormula::conjunction(
            {FOFormula::atom({"U0", {Term::var("x")}}), FOFormula::atom({"U1", {Term::var("x")}})})));
    for_each_sentence(b.signature(), 0, 4, 4, [&](const PHSentence& phi) {
        if (phi.prefix().empty()) return;  // no canonical database for the empty sentence
        const CanonicalDatabase d = canonical_database(phi, b.signature());
        ++report.checked;
        const bool lhs = eval_fo(d.structure, theta);
        const bool rhs = csp_eval(b, phi);
        if (lhs != rhs)
            report.discrepancies.push_back(
                {"U2",
                 "eval_fo(D_phi, Theta) = " + std::string(lhs ? "true" : "false") +
                     " but csp_eval(U2, phi) = " + (rhs ? "true" : "false"),
                 to_text(b), to_text(phi)});
    });
    return report;
}

/// CLI-facing dispatcher for `verify --suite <name>`.
inline SuiteReport verify_suite(const std::string& name, int samples, std::uint64_t seed) {
    if (name == "microcosm") {
        SuiteReport report{"microcosm"};
        report.absorb(verify_microcosm_forward(samples, seed));
        report.absorb(verify_microcosm_backward(samples, seed));
        report.absorb(verify_cvalidity(samples, samples, seed));
        return report;
    }
    if (name == "chen") return verify_chen(seed);
    if (name == "collapse") {
        SuiteReport report{"collapse"};
        report.absorb(verify_collapse(samples, seed));
        report.absorb(verify_dlambda(seed));
        return report;
    }
    if (name == "fo") return verify_fo(seed);
    throw Error("verify: unknown suite '" + name + "'");
}

}  // namespace qcsp
