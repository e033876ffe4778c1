#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcsp/sentence.hpp"
#include "qcsp/structure.hpp"

namespace qcsp {

/// Canonical database of a primitive positive sentence: one element per
/// distinct constant (ascending value, pinned to that value) followed by one
/// element per variable (prefix order); one tuple per atom.
struct CanonicalDatabase {
    Structure structure;
    Mapping pins;
};

inline CanonicalDatabase canonical_database(const PHSentence& phi, const Signature& sig) {
    if (phi.is_bottom()) throw Error("canonical_database: bottom has no canonical database");
    if (!phi.all_existential()) throw Error("canonical_database: sentence is not primitive positive");

    std::map<int, int> constant_element;
    for (int c : phi.constants()) {
        int next = static_cast<int>(constant_element.size());
        constant_element[c] = next;
    }
    std::map<std::string, int> variable_element;
    for (const auto& qv : phi.prefix())
        variable_element[qv.name] = static_cast<int>(constant_element.size() + variable_element.size());

    const int size = static_cast<int>(constant_element.size() + variable_element.size());
    if (size == 0)
        throw Error("canonical_database: sentence has no variables or constants");

    Structure db(sig, size);
    for (const Atom& a : phi.body()) {
        Tuple t;
        t.reserve(a.args.size());
        for (const Term& term : a.args)
            t.push_back(term.is_constant() ? constant_element.at(term.constant())
                                           : variable_element.at(term.variable()));
        db.add_tuple(a.symbol, std::move(t));
    }
    Mapping pins;
    for (const auto& [value, element] : constant_element) pins[element] = value;
    return {std::move(db), std::move(pins)};
}

/// Canonical query of a structure: one existential variable per element, one
/// atom per relation tuple.
inline PHSentence canonical_query(const Structure& s) {
    std::vector<QuantifiedVar> prefix;
    for (int e = 0; e < s.size(); ++e)
        prefix.push_back({Quantifier::Existential, "x" + std::to_string(e)});
    std::vector<Atom> body;
    for (std::size_t i = 0; i < s.signature().size(); ++i) {
        const std::string& name = s.signature().at(i).name;
        for (const Tuple& t : s.relation(i)) {
            Atom a{name, {}};
            for (int e : t) a.args.push_back(Term::var("x" + std::to_string(e)));
            body.push_back(std::move(a));
        }
    }
    return PHSentence(std::move(prefix), std::move(body));
}

}  // namespace qcsp
