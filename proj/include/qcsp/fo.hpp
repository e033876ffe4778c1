#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcsp/sentence.hpp"

namespace qcsp {

/// Quantifier-free boolean combination of relational atoms and equalities.
class FOFormula {
public:
    enum class Kind { Atom, Equal, Not, And, Or };

    static FOFormula atom(Atom a) {
        FOFormula f(Kind::Atom);
        f.atom_ = std::move(a);
        return f;
    }
    static FOFormula equal(Term lhs, Term rhs) {
        FOFormula f(Kind::Equal);
        f.terms_ = {std::move(lhs), std::move(rhs)};
        return f;
    }
    static FOFormula negation(FOFormula inner) {
        FOFormula f(Kind::Not);
        f.children_.push_back(std::move(inner));
        return f;
    }
    /// The empty conjunction is true.
    static FOFormula conjunction(std::vector<FOFormula> parts) {
        FOFormula f(Kind::And);
        f.children_ = std::move(parts);
        return f;
    }
    /// The empty disjunction is false.
    static FOFormula disjunction(std::vector<FOFormula> parts) {
        FOFormula f(Kind::Or);
        f.children_ = std::move(parts);
        return f;
    }

    Kind kind() const { return kind_; }
    const Atom& atom_value() const { return atom_; }
    const Term& lhs() const { return terms_[0]; }
    const Term& rhs() const { return terms_[1]; }
    const std::vector<FOFormula>& children() const { return children_; }

    void collect_free_variables(std::set<std::string>& out) const {
        switch (kind_) {
            case Kind::Atom:
                for (const Term& t : atom_.args)
                    if (t.is_variable()) out.insert(t.variable());
                break;
            case Kind::Equal:
                for (const Term& t : terms_)
                    if (t.is_variable()) out.insert(t.variable());
                break;
            default:
                for (const FOFormula& c : children_) c.collect_free_variables(out);
        }
    }

private:
    explicit FOFormula(Kind kind) : kind_(kind) {}

    Kind kind_;
    Atom atom_;
    std::vector<Term> terms_;
    std::vector<FOFormula> children_;
};

/// A prenex first-order sentence: quantifier prefix plus quantifier-free matrix.
class FOSentence {
public:
    FOSentence(std::vector<QuantifiedVar> prefix, FOFormula matrix)
        : prefix_(std::move(prefix)), matrix_(std::move(matrix)) {
        std::set<std::string> bound;
        for (const auto& qv : prefix_)
            if (!bound.insert(qv.name).second)
                throw Error("fo sentence: duplicate variable '" + qv.name + "'");
        std::set<std::string> used;
        matrix_.collect_free_variables(used);
        for (const std::string& v : used)
            if (!bound.count(v)) throw Error("fo sentence: unquantified variable '" + v + "'");
    }

    const std::vector<QuantifiedVar>& prefix() const { return prefix_; }
    const FOFormula& matrix() const { return matrix_; }

private:
    std::vector<QuantifiedVar> prefix_;
    FOFormula matrix_;
};

}  // namespace qcsp
