#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcsp/error.hpp"

namespace qcsp {

/// A relation symbol: a name and a positive arity.
struct Symbol {
    std::string name;
    int arity = 1;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// An ordered list of relation symbols with pairwise distinct names.
class Signature {
public:
    Signature() = default;

    explicit Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i].arity < 1)
                throw Error("signature: arity of '" + symbols_[i].name + "' must be positive");
            for (std::size_t j = 0; j < i; ++j)
                if (symbols_[j].name == symbols_[i].name)
                    throw Error("signature: duplicate symbol '" + symbols_[i].name + "'");
        }
    }

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    const Symbol& at(std::size_t i) const { return symbols_[i]; }

    /// Index of a symbol by name, or -1 when absent.
    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    bool contains(const std::string& name) const { return index_of(name) >= 0; }

    int arity_of(const std::string& name) const {
        int i = index_of(name);
        if (i < 0) throw Error("signature: unknown symbol '" + name + "'");
        return symbols_[static_cast<std::size_t>(i)].arity;
    }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Symbol> symbols_;
};

using Tuple = std::vector<int>;

/// A partial function between structure domains (element -> element).
/// Also used for the constant pins of constant-augmented instances.
using Mapping = std::map<int, int>;

/// A finite relational structure. Elements are the dense integers 0..size-1;
/// each relation is a set of tuples over them.
class Structure {
public:
    Structure(Signature sig, int size)
        : sig_(std::move(sig)), size_(size), relations_(sig_.size()) {
        if (size_ < 1) throw Error("structure: domain must be nonempty");
    }

    const Signature& signature() const { return sig_; }
    int size() const { return size_; }

    void add_tuple(const std::string& symbol, Tuple t) {
        int idx = sig_.index_of(symbol);
        if (idx < 0) throw Error("structure: unknown symbol '" + symbol + "'");
        add_tuple(static_cast<std::size_t>(idx), std::move(t));
    }

    void add_tuple(std::size_t symbol_index, Tuple t) {
        const Symbol& sym = sig_.at(symbol_index);
        if (static_cast<int>(t.size()) != sym.arity)
            throw Error("structure: tuple arity mismatch for '" + sym.name + "'");
        for (int e : t)
            if (e < 0 || e >= size_)
                throw Error("structure: tuple entry out of range for '" + sym.name + "'");
        relations_[symbol_index].insert(std::move(t));
    }

    const std::set<Tuple>& relation(std::size_t symbol_index) const {
        return relations_[symbol_index];
    }

    const std::set<Tuple>& relation(const std::string& symbol) const {
        int idx = sig_.index_of(symbol);
        if (idx < 0) throw Error("structure: unknown symbol '" + symbol + "'");
        return relations_[static_cast<std::size_t>(idx)];
    }

    bool has_tuple(std::size_t symbol_index, const Tuple& t) const {
        return relations_[symbol_index].count(t) > 0;
    }

    std::size_t tuple_count() const {
        std::size_t n = 0;
        for (const auto& r : relations_) n += r.size();
        return n;
    }

    /// Induced substructure on a subset of elements, relabelled densely in
    /// ascending element order. Keeps exactly the tuples lying inside the subset.
    Structure induced(const std::vector<int>& elements) const {
        std::vector<int> sorted = elements;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (sorted.empty()) throw Error("structure: induced substructure on empty set");
        std::vector<int> relabel(static_cast<std::size_t>(size_), -1);
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] < 0 || sorted[i] >= size_)
                throw Error("structure: induced element out of range");
            relabel[static_cast<std::size_t>(sorted[i])] = static_cast<int>(i);
        }
        Structure out(sig_, static_cast<int>(sorted.size()));
        for (std::size_t s = 0; s < sig_.size(); ++s) {
            for (const Tuple& t : relations_[s]) {
                Tuple image;
                image.reserve(t.size());
                bool inside = true;
                for (int e : t) {
                    int r = relabel[static_cast<std::size_t>(e)];
                    if (r < 0) { inside = false; break; }
                    image.push_back(r);
                }
                if (inside) out.add_tuple(s, std::move(image));
            }
        }
        return out;
    }

    friend bool operator==(const Structure&, const Structure&) = default;

private:
    Signature sig_;
    int size_;
    std::vector<std::set<Tuple>> relations_;
};

/// k-th power of a structure. The domain is all k-tuples over b's domain in
/// lexicographic order (first coordinate most significant); a relation holds
/// of a tuple of k-tuples iff it holds coordinatewise in b.
inline Structure power_structure(const Structure& b, int k, std::int64_t max_size = 1 << 20) {
    if (k < 1) throw Error("power_structure: exponent must be positive");
    std::int64_t n = 1;
    for (int i = 0; i < k; ++i) {
        n *= b.size();
        if (n > max_size) throw Error("power_structure: domain size exceeds bound");
    }
    Structure out(b.signature(), static_cast<int>(n));

    // Index of a k-tuple under the lexicographic enumeration.
    auto rank = [&](const std::vector<int>& coords) {
        std::int64_t r = 0;
        for (int c : coords) r = r * b.size() + c;
        return static_cast<int>(r);
    };

    for (std::size_t s = 0; s < b.signature().size(); ++s) {
        const int arity = b.signature().at(s).arity;
        std::vector<Tuple> rel(b.relation(s).begin(), b.relation(s).end());
        if (rel.empty()) continue;
        // One source tuple per coordinate of the power; enumerate all choices.
        std::vector<std::size_t> choice(static_cast<std::size_t>(k), 0);
        while (true) {
            Tuple image(static_cast<std::size_t>(arity));
            std::vector<int> coords(static_cast<std::size_t>(k));
            for (int j = 0; j < arity; ++j) {
                for (int i = 0; i < k; ++i)
                    coords[static_cast<std::size_t>(i)] =
                        rel[choice[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)];
                image[static_cast<std::size_t>(j)] = rank(coords);
            }
            out.add_tuple(s, std::move(image));
            int pos = k - 1;
            while (pos >= 0 && ++choice[static_cast<std::size_t>(pos)] == rel.size()) {
                choice[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return out;
}

/// Same domain, only the named relations retained.
inline Structure reduct(const Structure& s, const std::set<std::string>& keep) {
    std::vector<Symbol> symbols;
    for (const std::string& name : keep)
        if (!s.signature().contains(name))
            throw Error("reduct: unknown symbol '" + name + "'");
    for (const Symbol& sym : s.signature().symbols())
        if (keep.count(sym.name)) symbols.push_back(sym);
    Structure out(Signature(std::move(symbols)), s.size());
    for (std::size_t i = 0; i < out.signature().size(); ++i)
        for (const Tuple& t : s.relation(out.signature().at(i).name))
            out.add_tuple(i, t);
    return out;
}

}  // namespace qcsp
