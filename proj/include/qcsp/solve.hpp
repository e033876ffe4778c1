#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcsp/canonical.hpp"
#include "qcsp/fo.hpp"
#include "qcsp/homomorphism.hpp"
#include "qcsp/sentence.hpp"
#include "qcsp/structure.hpp"

namespace qcsp {

struct EvalOptions {
    /// Abort with BudgetExceededError after this many game nodes; 0 = unlimited.
    std::uint64_t node_budget = 0;
};

namespace detail {

// A sentence compiled against a structure: variables become prefix positions,
// atoms are grouped by the position at which they become fully assigned.
struct CompiledAtom {
    std::size_t symbol;
    // >= 0: prefix position of a variable; < 0: constant value ~c.
    std::vector<int> terms;
};

struct CompiledSentence {
    std::vector<Quantifier> quantifiers;
    std::vector<std::vector<CompiledAtom>> at_position;
    std::vector<CompiledAtom> constant_only;
};

inline CompiledSentence compile_sentence(const Structure& b, const PHSentence& phi) {
    CompiledSentence out;
    out.at_position.resize(phi.prefix().size());
    for (const auto& qv : phi.prefix()) out.quantifiers.push_back(qv.quantifier);
    for (const Atom& a : phi.body()) {
        int sym = b.signature().index_of(a.symbol);
        if (sym < 0) throw Error("eval: unknown symbol '" + a.symbol + "'");
        if (b.signature().at(static_cast<std::size_t>(sym)).arity != static_cast<int>(a.args.size()))
            throw Error("eval: arity mismatch for '" + a.symbol + "'");
        CompiledAtom ca{static_cast<std::size_t>(sym), {}};
        int last = -1;
        for (const Term& t : a.args) {
            if (t.is_constant()) {
                if (t.constant() < 0 || t.constant() >= b.size())
                    throw Error("eval: constant out of domain");
                ca.terms.push_back(~t.constant());
            } else {
                int pos = phi.position_of(t.variable());
                ca.terms.push_back(pos);
                last = std::max(last, pos);
            }
        }
        if (last < 0)
            out.constant_only.push_back(std::move(ca));
        else
            out.at_position[static_cast<std::size_t>(last)].push_back(std::move(ca));
    }
    return out;
}

inline bool check_atom(const Structure& b, const CompiledAtom& atom, const std::vector<int>& env,
                       Tuple& scratch) {
    scratch.clear();
    for (int t : atom.terms) scratch.push_back(t < 0 ? ~t : env[static_cast<std::size_t>(t)]);
    return b.has_tuple(atom.symbol, scratch);
}

inline bool game(const Structure& b, const CompiledSentence& cs, std::vector<int>& env,
                 std::size_t pos, const EvalOptions& opts, std::uint64_t& nodes, Tuple& scratch) {
    if (pos == cs.quantifiers.size()) return true;
    const bool universal = cs.quantifiers[pos] == Quantifier::Universal;
    for (int d = 0; d < b.size(); ++d) {
        if (opts.node_budget && ++nodes > opts.node_budget)
            throw BudgetExceededError("qcsp_eval: node budget exceeded");
        env[pos] = d;
        bool ok = true;
        for (const CompiledAtom& atom : cs.at_position[pos])
            if (!check_atom(b, atom, env, scratch)) { ok = false; break; }
        if (ok) ok = game(b, cs, env, pos + 1, opts, nodes, scratch);
        if (universal && !ok) return false;
        if (!universal && ok) return true;
    }
    return universal;
}

}  // namespace detail

/// CSP membership via the canonical database: true iff a homomorphism from
/// the canonical database of phi to b extending the constant pins exists.
/// Bottom is false; the empty sentence is true.
inline bool csp_eval(const Structure& b, const PHSentence& phi) {
    if (phi.is_bottom()) return false;
    if (!phi.all_existential()) throw Error("csp_eval: sentence is not primitive positive");
    for (int c : phi.constants())
        if (c < 0 || c >= b.size()) throw Error("csp_eval: constant out of domain");
    for (const Atom& a : phi.body()) {
        int sym = b.signature().index_of(a.symbol);
        if (sym < 0) throw Error("csp_eval: unknown symbol '" + a.symbol + "'");
        if (b.signature().at(static_cast<std::size_t>(sym)).arity != static_cast<int>(a.args.size()))
            throw Error("csp_eval: arity mismatch for '" + a.symbol + "'");
    }
    if (phi.prefix().empty() && phi.constants().empty()) return true;  // empty conjunction
    auto [db, pins] = canonical_database(phi, b.signature());
    return find_homomorphism(db, b, pins).has_value();
}

/// QCSP membership by alternating-game recursion: universal variables range
/// conjunctively over the whole domain, existential ones disjunctively; atoms
/// are checked as soon as their variables are all assigned.
inline bool qcsp_eval(const Structure& b, const PHSentence& phi, const EvalOptions& opts = {}) {
    if (phi.is_bottom()) return false;
    detail::CompiledSentence cs = detail::compile_sentence(b, phi);
    std::vector<int> env(phi.prefix().size(), -1);
    Tuple scratch;
    for (const detail::CompiledAtom& atom : cs.constant_only)
        if (!detail::check_atom(b, atom, env, scratch)) return false;
    std::uint64_t nodes = 0;
    return detail::game(b, cs, env, 0, opts, nodes, scratch);
}

namespace detail {

inline int fo_term_value(const Term& t, const Structure& d,
                         const std::map<std::string, int>& env) {
    if (t.is_constant()) {
        if (t.constant() < 0 || t.constant() >= d.size())
            throw Error("eval_fo: constant out of domain");
        return t.constant();
    }
    return env.at(t.variable());
}

inline bool fo_matrix(const Structure& d, const FOFormula& f,
                      const std::map<std::string, int>& env) {
    switch (f.kind()) {
        case FOFormula::Kind::Atom: {
            const Atom& a = f.atom_value();
            int sym = d.signature().index_of(a.symbol);
            if (sym < 0) throw Error("eval_fo: unknown symbol '" + a.symbol + "'");
            if (d.signature().at(static_cast<std::size_t>(sym)).arity !=
                static_cast<int>(a.args.size()))
                throw Error("eval_fo: arity mismatch for '" + a.symbol + "'");
            Tuple t;
            for (const Term& term : a.args) t.push_back(fo_term_value(term, d, env));
            return d.has_tuple(static_cast<std::size_t>(sym), t);
        }
        case FOFormula::Kind::Equal:
            return fo_term_value(f.lhs(), d, env) == fo_term_value(f.rhs(), d, env);
        case FOFormula::Kind::Not:
            return !fo_matrix(d, f.children()[0], env);
        case FOFormula::Kind::And:
            for (const FOFormula& c : f.children())
                if (!fo_matrix(d, c, env)) return false;
            return true;
        case FOFormula::Kind::Or:
            for (const FOFormula& c : f.children())
                if (fo_matrix(d, c, env)) return true;
            return false;
    }
    throw Error("eval_fo: unreachable");
}

inline bool fo_prefix(const Structure& d, const FOSentence& theta, std::size_t pos,
                      std::map<std::string, int>& env) {
    if (pos == theta.prefix().size()) return fo_matrix(d, theta.matrix(), env);
    const auto& qv = theta.prefix()[pos];
    for (int e = 0; e < d.size(); ++e) {
        env[qv.name] = e;
        bool ok = fo_prefix(d, theta, pos + 1, env);
        if (qv.quantifier == Quantifier::Universal && !ok) return false;
        if (qv.quantifier == Quantifier::Existential && ok) return true;
    }
    env.erase(qv.name);
    return theta.prefix()[pos].quantifier == Quantifier::Universal;
}

}  // namespace detail

/// Tarskian truth of a prenex first-order sentence, by plain exhaustive
/// recursion over the prefix.
inline bool eval_fo(const Structure& d, const FOSentence& theta) {
    std::map<std::string, int> env;
    return detail::fo_prefix(d, theta, 0, env);
}

}  // namespace qcsp
