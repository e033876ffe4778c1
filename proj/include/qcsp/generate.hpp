#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qcsp/sentence.hpp"
#include "qcsp/structure.hpp"

namespace qcsp {

/// Uniform-enough draw from [0, n). Uses plain modulo so that a fixed seed
/// yields the same stream on every platform (std::uniform_int_distribution
/// does not guarantee that).
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw Error("bounded: empty range");
    return rng() % n;
}

struct SentenceOptions {
    int max_universals = 2;
    int max_existentials = 2;
    int max_atoms = 4;
};

namespace detail {

inline std::vector<QuantifiedVar> name_prefix(const std::vector<Quantifier>& tags) {
    std::vector<QuantifiedVar> prefix;
    int nu = 0, ne = 0;
    for (Quantifier q : tags) {
        std::string name = q == Quantifier::Universal ? "u" + std::to_string(++nu)
                                                      : "v" + std::to_string(++ne);
        prefix.push_back({q, std::move(name)});
    }
    return prefix;
}

// All size-k index subsets of [0, n) in lexicographic order.
template <typename F>
void for_each_index_combination(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(static_cast<const std::vector<std::size_t>&>(idx));
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) return;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

// Every atom over the given variables: symbols in signature order, argument
// tuples in lexicographic order with the first position most significant.
inline std::vector<Atom> atom_universe(const Signature& sig,
                                       const std::vector<QuantifiedVar>& prefix) {
    std::vector<Atom> universe;
    if (prefix.empty()) return universe;
    for (std::size_t s = 0; s < sig.size(); ++s) {
        const int arity = sig.at(s).arity;
        std::vector<std::size_t> pick(arity, 0);
        while (true) {
            Atom a{sig.at(s).name, {}};
            for (int p = 0; p < arity; ++p) a.args.push_back(Term::var(prefix[pick[p]].name));
            universe.push_back(std::move(a));
            int p = arity - 1;
            while (p >= 0 && pick[p] + 1 == prefix.size()) pick[p--] = 0;
            if (p < 0) break;
            ++pick[p];
        }
    }
    return universe;
}

}  // namespace detail

/// Visit every constant-free sentence with at most the given quantifier and
/// atom counts, in a fixed deterministic order. Bodies range over all atom
/// subsets of size 0..max_atoms; duplicates (same body, different subset) do
/// not arise. The empty-prefix sentence (trivially true) is included once.
template <typename Callback>
void for_each_sentence(const Signature& sig, int max_universals, int max_existentials,
                       int max_atoms, Callback&& cb) {
    for (int nu = 0; nu <= max_universals; ++nu) {
        for (int ne = 0; ne <= max_existentials; ++ne) {
            const std::size_t n = static_cast<std::size_t>(nu + ne);
            // Choose which prefix positions are universal.
            detail::for_each_index_combination(
                n, static_cast<std::size_t>(nu), [&](const std::vector<std::size_t>& upos) {
                    std::vector<Quantifier> tags(n, Quantifier::Existential);
                    for (std::size_t i : upos) tags[i] = Quantifier::Universal;
                    auto prefix = detail::name_prefix(tags);
                    auto universe = detail::atom_universe(sig, prefix);
                    const std::size_t cap =
                        std::min<std::size_t>(universe.size(), static_cast<std::size_t>(max_atoms));
                    for (std::size_t k = 0; k <= cap; ++k) {
                        detail::for_each_index_combination(
                            universe.size(), k, [&](const std::vector<std::size_t>& apos) {
                                std::vector<Atom> body;
                                for (std::size_t i : apos) body.push_back(universe[i]);
                                cb(PHSentence(prefix, std::move(body)));
                            });
                    }
                });
        }
    }
}

/// Draw a constant-free sentence: quantifier counts uniform in range, tag
/// order shuffled, atoms drawn uniformly from the full universe (duplicates
/// possible and harmless). A prefix-free draw yields the empty true sentence.
inline PHSentence random_sentence(const Signature& sig, const SentenceOptions& opt,
                                  std::mt19937_64& rng) {
    const int nu = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(opt.max_universals) + 1));
    const int ne =
        static_cast<int>(bounded(rng, static_cast<std::uint64_t>(opt.max_existentials) + 1));
    std::vector<Quantifier> tags(static_cast<std::size_t>(nu), Quantifier::Universal);
    tags.insert(tags.end(), static_cast<std::size_t>(ne), Quantifier::Existential);
    // Fisher-Yates with our own bounded() for cross-platform determinism.
    for (std::size_t i = tags.size(); i > 1; --i)
        std::swap(tags[i - 1], tags[bounded(rng, i)]);
    auto prefix = detail::name_prefix(tags);

    std::vector<Atom> body;
    if (!prefix.empty()) {
        const int natoms = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(opt.max_atoms) + 1));
        for (int i = 0; i < natoms; ++i) {
            const Symbol& sym = sig.at(bounded(rng, sig.size()));
            Atom a{sym.name, {}};
            for (int p = 0; p < sym.arity; ++p)
                a.args.push_back(Term::var(prefix[bounded(rng, prefix.size())].name));
            body.push_back(std::move(a));
        }
    }
    return PHSentence(std::move(prefix), std::move(body));
}

/// Random all-existential (primitive positive) sentence with at least one
/// variable.
inline PHSentence random_pp_sentence(const Signature& sig, int max_variables, int max_atoms,
                                     std::mt19937_64& rng) {
    if (max_variables < 1) throw Error("random_pp_sentence: need at least one variable");
    const int nv = 1 + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(max_variables)));
    std::vector<Quantifier> tags(static_cast<std::size_t>(nv), Quantifier::Existential);
    auto prefix = detail::name_prefix(tags);
    const int natoms = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(max_atoms) + 1));
    std::vector<Atom> body;
    for (int i = 0; i < natoms; ++i) {
        const Symbol& sym = sig.at(bounded(rng, sig.size()));
        Atom a{sym.name, {}};
        for (int p = 0; p < sym.arity; ++p)
            a.args.push_back(Term::var(prefix[bounded(rng, prefix.size())].name));
        body.push_back(std::move(a));
    }
    return PHSentence(std::move(prefix), std::move(body));
}

}  // namespace qcsp
