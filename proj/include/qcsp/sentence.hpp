#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcsp/error.hpp"

namespace qcsp {

enum class Quantifier { Universal, Existential };

/// A term of an atom: either a variable identifier or a constant element.
struct Term {
    std::variant<std::string, int> value;

    static Term var(std::string name) { return Term{std::move(name)}; }
    static Term elem(int e) { return Term{e}; }

    bool is_variable() const { return std::holds_alternative<std::string>(value); }
    bool is_constant() const { return !is_variable(); }
    const std::string& variable() const { return std::get<std::string>(value); }
    int constant() const { return std::get<int>(value); }

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

struct Atom {
    std::string symbol;
    std::vector<Term> args;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct QuantifiedVar {
    Quantifier quantifier;
    std::string name;

    friend bool operator==(const QuantifiedVar&, const QuantifiedVar&) = default;
};

/// A positive Horn sentence: a quantifier prefix over a conjunction of atoms,
/// or the always-false sentence (bottom). The empty conjunction is the true
/// sentence. Primitive positive sentences are the all-existential ones.
/// Sentences carry no signature; symbols and constants are resolved against a
/// structure at evaluation time.
class PHSentence {
public:
    /// The true sentence: empty prefix, empty body.
    PHSentence() = default;

    PHSentence(std::vector<QuantifiedVar> prefix, std::vector<Atom> body)
        : prefix_(std::move(prefix)), body_(std::move(body)) {
        std::set<std::string> seen;
        for (const auto& qv : prefix_) {
            if (qv.name.empty()) throw Error("sentence: empty variable name");
            if (!seen.insert(qv.name).second)
                throw Error("sentence: duplicate variable '" + qv.name + "'");
        }
        for (const Atom& a : body_)
            for (const Term& t : a.args)
                if (t.is_variable() && !seen.count(t.variable()))
                    throw Error("sentence: unquantified variable '" + t.variable() + "'");
    }

    static PHSentence bottom() {
        PHSentence s;
        s.bottom_ = true;
        return s;
    }

    bool is_bottom() const { return bottom_; }
    const std::vector<QuantifiedVar>& prefix() const { return prefix_; }
    const std::vector<Atom>& body() const { return body_; }

    bool all_existential() const {
        return std::all_of(prefix_.begin(), prefix_.end(), [](const QuantifiedVar& qv) {
            return qv.quantifier == Quantifier::Existential;
        });
    }

    bool has_constants() const {
        for (const Atom& a : body_)
            for (const Term& t : a.args)
                if (t.is_constant()) return true;
        return false;
    }

    /// Prefix position of a variable, or -1 when absent.
    int position_of(const std::string& name) const {
        for (std::size_t i = 0; i < prefix_.size(); ++i)
            if (prefix_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    /// Variables of one quantifier kind, in prefix order.
    std::vector<std::string> variables_of(Quantifier q) const {
        std::vector<std::string> out;
        for (const auto& qv : prefix_)
            if (qv.quantifier == q) out.push_back(qv.name);
        return out;
    }

    std::vector<int> constants() const {
        std::set<int> seen;
        for (const Atom& a : body_)
            for (const Term& t : a.args)
                if (t.is_constant()) seen.insert(t.constant());
        return {seen.begin(), seen.end()};
    }

    friend bool operator==(const PHSentence&, const PHSentence&) = default;

private:
    std::vector<QuantifiedVar> prefix_;
    std::vector<Atom> body_;
    bool bottom_ = false;
};

/// Syntactic equality modulo a positional renaming of the quantified
/// variables. Bodies are compared as sets of atoms (conjunction is
/// idempotent, and the partitioned encoding collapses duplicates anyway).
inline bool equal_up_to_renaming(const PHSentence& a, const PHSentence& b) {
    if (a.is_bottom() || b.is_bottom()) return a.is_bottom() == b.is_bottom();
    if (a.prefix().size() != b.prefix().size()) return false;
    for (std::size_t i = 0; i < a.prefix().size(); ++i)
        if (a.prefix()[i].quantifier != b.prefix()[i].quantifier) return false;

    auto canonical_body = [](const PHSentence& s) {
        std::vector<Atom> out = s.body();
        for (Atom& atom : out)
            for (Term& t : atom.args)
                if (t.is_variable()) t = Term::var("#" + std::to_string(s.position_of(t.variable())));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    return canonical_body(a) == canonical_body(b);
}

/// Rewrites the prefix into the strictly alternating forall/exists shape by
/// inserting fresh dummy variables that occur in no atom. Dummies are vacuous
/// over a nonempty domain, so truth is preserved on every structure.
inline PHSentence normalize_alternation(const PHSentence& phi) {
    if (phi.is_bottom()) throw Error("normalize_alternation: bottom has no prefix");

    std::set<std::string> taken;
    for (const auto& qv : phi.prefix()) taken.insert(qv.name);
    int counter = 0;
    auto fresh = [&] {
        std::string name;
        do {
            name = "_d" + std::to_string(++counter);
        } while (taken.count(name));
        taken.insert(name);
        return name;
    };

    std::vector<QuantifiedVar> prefix;
    Quantifier expected = Quantifier::Universal;
    auto flip = [](Quantifier q) {
        return q == Quantifier::Universal ? Quantifier::Existential : Quantifier::Universal;
    };
    for (const auto& qv : phi.prefix()) {
        if (qv.quantifier != expected) {
            prefix.push_back({expected, fresh()});
            expected = flip(expected);
        }
        prefix.push_back(qv);
        expected = flip(expected);
    }
    // A trailing universal still needs its existential partner.
    if (!prefix.empty() && expected == Quantifier::Existential)
        prefix.push_back({Quantifier::Existential, fresh()});
    return PHSentence(std::move(prefix), phi.body());
}

}  // namespace qcsp
