#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcsp/homomorphism.hpp"
#include "qcsp/sentence.hpp"
#include "qcsp/structure.hpp"

namespace qcsp {

/// The (j,a)-collapsing with the given surviving universal variables: every
/// other universal variable is replaced by the constant a in all atoms and
/// dropped from the prefix. Survivors and existentials keep their positions.
inline PHSentence apply_collapsing(const PHSentence& phi, const std::set<std::string>& survivors,
                                   int a) {
    if (phi.is_bottom()) {
        if (!survivors.empty()) throw Error("apply_collapsing: unknown survivor");
        return phi;
    }
    if (phi.has_constants()) throw Error("apply_collapsing: sentence must be constant-free");
    for (const std::string& s : survivors) {
        int pos = phi.position_of(s);
        if (pos < 0 || phi.prefix()[static_cast<std::size_t>(pos)].quantifier != Quantifier::Universal)
            throw Error("apply_collapsing: unknown survivor '" + s + "'");
    }

    std::set<std::string> collapsed;
    std::vector<QuantifiedVar> prefix;
    for (const auto& qv : phi.prefix()) {
        if (qv.quantifier == Quantifier::Universal && !survivors.count(qv.name))
            collapsed.insert(qv.name);
        else
            prefix.push_back(qv);
    }
    std::vector<Atom> body = phi.body();
    for (Atom& atom : body)
        for (Term& t : atom.args)
            if (t.is_variable() && collapsed.count(t.variable())) t = Term::elem(a);
    return PHSentence(std::move(prefix), std::move(body));
}

namespace detail {

// Assignments of domain elements to `vars`, enumerated lexicographically with
// the first variable most significant.
class AssignmentRange {
public:
    AssignmentRange(const std::vector<std::string>& vars, int domain_size)
        : vars_(vars), domain_size_(domain_size) {}

    template <typename F>
    void for_each(F&& f) const {
        std::map<std::string, int> alpha;
        std::vector<int> values(vars_.size(), 0);
        while (true) {
            alpha.clear();
            for (std::size_t i = 0; i < vars_.size(); ++i) alpha[vars_[i]] = values[i];
            f(alpha, values);
            int pos = static_cast<int>(vars_.size()) - 1;
            while (pos >= 0 && ++values[static_cast<std::size_t>(pos)] == domain_size_) {
                values[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }

private:
    const std::vector<std::string>& vars_;
    int domain_size_;
};

// Name of the pair variable (v, alpha restricted to the survivors preceding v).
inline std::string pair_variable_name(const std::string& v,
                                      const std::vector<std::string>& preceding,
                                      const std::map<std::string, int>& alpha) {
    std::string name = v + "{";
    for (std::size_t i = 0; i < preceding.size(); ++i) {
        if (i) name += ",";
        name += preceding[i] + "=" + std::to_string(alpha.at(preceding[i]));
    }
    return name + "}";
}

}  // namespace detail

/// Rewrite of a collapsed sentence into a purely existential instance:
/// variables are pairs (v, alpha) of an existential variable and an
/// assignment of domain elements to the surviving universals preceding it;
/// each atom is instantiated once per full survivor assignment, with
/// surviving universals replaced by their assigned constants.
/// Satisfies csp_eval(b, result) == qcsp_eval(b, phi_prime) whenever
/// b.size() == domain_size.
inline PHSentence chen_reduction(const PHSentence& phi_prime, int domain_size,
                                 std::optional<int> max_survivors = std::nullopt) {
    if (phi_prime.is_bottom()) return phi_prime;
    if (domain_size < 1) throw Error("chen_reduction: domain size must be positive");

    const std::vector<std::string> survivors = phi_prime.variables_of(Quantifier::Universal);
    if (max_survivors && static_cast<int>(survivors.size()) > *max_survivors)
        throw Error("chen_reduction: more survivors than declared");

    // Survivors preceding each existential variable, in prefix order.
    std::map<std::string, std::vector<std::string>> preceding;
    {
        std::vector<std::string> seen;
        for (const auto& qv : phi_prime.prefix()) {
            if (qv.quantifier == Quantifier::Universal)
                seen.push_back(qv.name);
            else
                preceding[qv.name] = seen;
        }
    }

    std::vector<QuantifiedVar> prefix;
    for (const auto& qv : phi_prime.prefix()) {
        if (qv.quantifier == Quantifier::Universal) continue;
        detail::AssignmentRange(preceding[qv.name], domain_size)
            .for_each([&](const std::map<std::string, int>& alpha, const std::vector<int>&) {
                prefix.push_back({Quantifier::Existential,
                                  detail::pair_variable_name(qv.name, preceding[qv.name], alpha)});
            });
    }

    std::vector<Atom> body;
    std::set<Atom> dedup;
    detail::AssignmentRange(survivors, domain_size)
        .for_each([&](const std::map<std::string, int>& alpha, const std::vector<int>&) {
            for (const Atom& atom : phi_prime.body()) {
                Atom out{atom.symbol, {}};
                for (const Term& t : atom.args) {
                    if (t.is_constant()) {
                        out.args.push_back(t);
                    } else if (alpha.count(t.variable())) {
                        out.args.push_back(Term::elem(alpha.at(t.variable())));
                    } else {
                        const auto& pre = preceding.at(t.variable());
                        out.args.push_back(
                            Term::var(detail::pair_variable_name(t.variable(), pre, alpha)));
                    }
                }
                if (dedup.insert(out).second) body.push_back(std::move(out));
            }
        });
    return PHSentence(std::move(prefix), std::move(body));
}

/// The decision structure D(lambda) for a core b: b's elements 0..m-1 carrying
/// all of b's relations, followed by one element per Chen pair variable, with
/// the Chen atoms as further tuples (constants identified with the elements
/// they denote). A homomorphism D(lambda) -> b exists iff the collapsing with
/// survivor set lambda is true on b.
inline Structure build_collapse_structure(const Structure& b, const PHSentence& phi,
                                          const std::set<std::string>& lambda, int a) {
    if (!is_core(b)) throw Error("build_collapse_structure: structure is not a core");
    if (phi.is_bottom()) throw Error("build_collapse_structure: bottom has no structure");
    if (phi.has_constants()) throw Error("build_collapse_structure: sentence must be constant-free");
    if (a < 0 || a >= b.size()) throw Error("build_collapse_structure: collapse element out of range");

    PHSentence phi_second = chen_reduction(apply_collapsing(phi, lambda, a), b.size());

    std::map<std::string, int> element_of;
    for (const auto& qv : phi_second.prefix())
        element_of[qv.name] = b.size() + static_cast<int>(element_of.size());

    Structure d(b.signature(), b.size() + static_cast<int>(element_of.size()));
    for (std::size_t s = 0; s < b.signature().size(); ++s)
        for (const Tuple& t : b.relation(s)) d.add_tuple(s, t);
    for (const Atom& atom : phi_second.body()) {
        Tuple t;
        for (const Term& term : atom.args)
            t.push_back(term.is_constant() ? term.constant() : element_of.at(term.variable()));
        d.add_tuple(atom.symbol, std::move(t));
    }
    return d;
}

namespace detail {

template <typename F>
void for_each_subset_of_size(const std::vector<std::string>& items, std::size_t size, F&& f) {
    if (size > items.size()) return;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        std::set<std::string> subset;
        for (std::size_t i : idx) subset.insert(items[i]);
        f(subset);
        // Next combination in lexicographic index order.
        std::size_t pos = size;
        while (pos > 0 && idx[pos - 1] == items.size() - size + pos - 1) --pos;
        if (pos == 0) return;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
}

}  // namespace detail

/// Decide the QCSP instance via collapsibility: enumerate every survivor set
/// of size min(j, #universals) and require a homomorphism D(lambda) -> b for
/// each. Equal to qcsp_eval(b, phi) whenever b is (j,a)-collapsible, and
/// implied by it unconditionally.
inline bool qcsp_via_collapsibility(const Structure& b, const PHSentence& phi, int j, int a) {
    if (!is_core(b)) throw Error("qcsp_via_collapsibility: structure is not a core");
    if (phi.is_bottom()) return false;
    if (j < 0) throw Error("qcsp_via_collapsibility: negative survivor count");

    const std::vector<std::string> universals = phi.variables_of(Quantifier::Universal);
    const std::size_t size = std::min<std::size_t>(static_cast<std::size_t>(j), universals.size());
    bool all_true = true;
    detail::for_each_subset_of_size(universals, size, [&](const std::set<std::string>& lambda) {
        if (!all_true) return;
        Structure d = build_collapse_structure(b, phi, lambda, a);
        if (!find_homomorphism(d, b).has_value()) all_true = false;
    });
    return all_true;
}

}  // namespace qcsp
