#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcsp/sentence.hpp"
#include "qcsp/structure.hpp"

namespace qcsp {

/// The c-valid companion structure: domain grows by one element c (= b.size());
/// every original relation additionally holds of all tuples containing c, and a
/// fresh binary relation F holds of every pair except those leading from an
/// original element into c. Evaluating all variables to c satisfies every atom.
inline Structure microcosm_structure(const Structure& b, const std::string& f_name = "F") {
    if (b.signature().contains(f_name))
        throw Error("microcosm_structure: symbol '" + f_name + "' already in signature");
    std::vector<Symbol> symbols = b.signature().symbols();
    symbols.push_back({f_name, 2});

    const int c = b.size();
    Structure out(Signature(std::move(symbols)), c + 1);
    for (std::size_t s = 0; s < b.signature().size(); ++s) {
        for (const Tuple& t : b.relation(s)) out.add_tuple(s, t);
        const int r = b.signature().at(s).arity;
        // All tuples over the extended domain with at least one coordinate c.
        Tuple t(static_cast<std::size_t>(r), 0);
        while (true) {
            bool has_c = false;
            for (int e : t)
                if (e == c) { has_c = true; break; }
            if (has_c) out.add_tuple(s, t);
            int pos = r - 1;
            while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == c + 1) {
                t[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    for (int x = 0; x <= c; ++x)
        for (int y = 0; y <= c; ++y)
            if (!(y == c && x != c)) out.add_tuple(f_name, {x, y});
    return out;
}

/// Forward direction of the reduction: prepend a fresh universal variable a
/// and attach F-edges from a to every existential variable, between all
/// ordered pairs of existential variables, and from every original universal
/// to every existential. Truth on b equals truth of the result on the
/// microcosm of b.
inline PHSentence forward_reduce(const PHSentence& phi, const std::string& f_name = "F") {
    if (phi.is_bottom()) throw Error("forward_reduce: bottom cannot be reduced");
    if (phi.has_constants()) throw Error("forward_reduce: sentence must be constant-free");
    for (const Atom& a : phi.body())
        if (a.symbol == f_name)
            throw Error("forward_reduce: sentence already uses symbol '" + f_name + "'");

    std::string fresh = "a";
    for (int i = 0; phi.position_of(fresh) >= 0; ++i) fresh = "a" + std::to_string(i);

    std::vector<QuantifiedVar> prefix;
    prefix.push_back({Quantifier::Universal, fresh});
    prefix.insert(prefix.end(), phi.prefix().begin(), phi.prefix().end());

    const std::vector<std::string> universals = phi.variables_of(Quantifier::Universal);
    const std::vector<std::string> existentials = phi.variables_of(Quantifier::Existential);

    std::vector<Atom> body = phi.body();
    for (const std::string& y : existentials)
        body.push_back({f_name, {Term::var(fresh), Term::var(y)}});
    for (const std::string& y : existentials)
        for (const std::string& y2 : existentials)
            body.push_back({f_name, {Term::var(y), Term::var(y2)}});
    for (const std::string& x : universals)
        for (const std::string& y : existentials)
            body.push_back({f_name, {Term::var(x), Term::var(y)}});
    return PHSentence(std::move(prefix), std::move(body));
}

/// Backward direction: prune every existential variable that lies on no
/// directed F-path of length >= 1 from a universal variable (together with its
/// atoms), then reject as bottom exactly the instances the adversary can
/// falsify through the F-relation:
///   - an F-path between two *distinct* universals u' -> ... -> u: playing
///     u' inside the original domain and u = c breaks some edge of the chain
///     no matter how the existentials in between are chosen;
///   - a cycle u -> ... -> u through an existential quantified *before* u:
///     the adversary sees that existential's value and picks u on the other
///     side of the B/c divide.
/// A cycle whose intermediate existentials all follow u is satisfiable (the
/// prover mirrors u's side), as is a self-loop F(u,u), which holds of every
/// element of the microcosm. Surviving F-atoms are dropped; truth on the
/// microcosm of b equals truth of the result on b.
inline PHSentence backward_reduce(const PHSentence& phi, const std::string& f_name = "F") {
    if (phi.is_bottom()) throw Error("backward_reduce: bottom cannot be reduced");
    if (phi.has_constants()) throw Error("backward_reduce: sentence must be constant-free");
    for (const Atom& a : phi.body())
        if (a.symbol == f_name && a.args.size() != 2)
            throw Error("backward_reduce: symbol '" + f_name + "' is not binary");

    std::set<std::string> universal;
    for (const auto& qv : phi.prefix())
        if (qv.quantifier == Quantifier::Universal) universal.insert(qv.name);

    auto closure = [&](const std::vector<Atom>& atoms) {
        // Everything reachable by an F-path of length >= 1 from a universal.
        std::set<std::string> reached;
        std::vector<std::string> frontier;
        for (const Atom& a : atoms)
            if (a.symbol == f_name && universal.count(a.args[0].variable()))
                if (reached.insert(a.args[1].variable()).second)
                    frontier.push_back(a.args[1].variable());
        while (!frontier.empty()) {
            std::string x = std::move(frontier.back());
            frontier.pop_back();
            for (const Atom& a : atoms)
                if (a.symbol == f_name && a.args[0].variable() == x)
                    if (reached.insert(a.args[1].variable()).second)
                        frontier.push_back(a.args[1].variable());
        }
        return reached;
    };

    const std::set<std::string> on_path = closure(phi.body());
    std::set<std::string> removed;
    for (const auto& qv : phi.prefix())
        if (qv.quantifier == Quantifier::Existential && !on_path.count(qv.name))
            removed.insert(qv.name);

    std::vector<QuantifiedVar> prefix;
    for (const auto& qv : phi.prefix())
        if (!removed.count(qv.name)) prefix.push_back(qv);
    std::vector<Atom> pruned;
    for (const Atom& a : phi.body()) {
        bool keep = true;
        for (const Term& t : a.args)
            if (removed.count(t.variable())) { keep = false; break; }
        if (keep) pruned.push_back(a);
    }

    // F-adjacency of the pruned sentence, and prefix positions.
    std::map<std::string, std::vector<std::string>> succ, pred;
    for (const Atom& a : pruned)
        if (a.symbol == f_name) {
            succ[a.args[0].variable()].push_back(a.args[1].variable());
            pred[a.args[1].variable()].push_back(a.args[0].variable());
        }
    auto existential_reach = [&](const std::string& u,
                                 const std::map<std::string, std::vector<std::string>>& adj) {
        // Existentials connected to u by F-paths passing only through
        // existentials (following adj, which may be forward or reverse).
        std::set<std::string> seen;
        std::vector<std::string> frontier{u};
        while (!frontier.empty()) {
            std::string x = std::move(frontier.back());
            frontier.pop_back();
            auto it = adj.find(x);
            if (it == adj.end()) continue;
            for (const std::string& y : it->second)
                if (!universal.count(y) && seen.insert(y).second) frontier.push_back(y);
        }
        return seen;
    };

    for (const std::string& u : universal) {
        const std::set<std::string> fwd = existential_reach(u, succ);
        // Universals hit by one more edge out of u or out of its reach set.
        std::set<std::string> hit;
        if (auto it = succ.find(u); it != succ.end())
            for (const std::string& y : it->second)
                if (universal.count(y)) hit.insert(y);
        for (const std::string& e : fwd)
            if (auto it = succ.find(e); it != succ.end())
                for (const std::string& y : it->second)
                    if (universal.count(y)) hit.insert(y);
        for (const std::string& target : hit) {
            if (target != u) return PHSentence::bottom();
            const std::set<std::string> bwd = existential_reach(u, pred);
            for (const std::string& e : fwd)
                if (bwd.count(e) && phi.position_of(e) < phi.position_of(u))
                    return PHSentence::bottom();
        }
    }

    std::vector<Atom> body;
    for (Atom& a : pruned)
        if (a.symbol != f_name) body.push_back(std::move(a));
    return PHSentence(std::move(prefix), std::move(body));
}

}  // namespace qcsp
