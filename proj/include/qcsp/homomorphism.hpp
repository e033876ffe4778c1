#pragma once

#include <optional>
#include <vector>

#include "qcsp/structure.hpp"

namespace qcsp {

namespace detail {

// Backtracking homomorphism search over a fixed variable order. Tuples are
// checked as soon as their last variable (largest source element) is bound,
// so every branch that survives to a leaf is a homomorphism. `forbidden`
// optionally excludes one target value globally, `injective` forces distinct
// images (used by the isomorphism and core searches).
class HomSearch {
public:
    HomSearch(const Structure& src, const Structure& dst, const Mapping& pins,
              bool injective = false, int forbidden = -1)
        : src_(src), dst_(dst), injective_(injective), forbidden_(forbidden),
          assignment_(static_cast<std::size_t>(src.size()), -1),
          used_(static_cast<std::size_t>(dst.size()), false) {
        if (src.signature() != dst.signature())
            throw Error("find_homomorphism: signature mismatch");
        for (const auto& [from, to] : pins) {
            if (from < 0 || from >= src.size() || to < 0 || to >= dst.size())
                throw Error("find_homomorphism: pin out of range");
            assignment_[static_cast<std::size_t>(from)] = to;
        }
        // Group tuples by the last element bound under the 0..n-1 order.
        checks_.resize(static_cast<std::size_t>(src.size()));
        for (std::size_t s = 0; s < src.signature().size(); ++s) {
            for (const Tuple& t : src.relation(s)) {
                int last = 0;
                for (int e : t) last = std::max(last, e);
                checks_[static_cast<std::size_t>(last)].push_back({s, &t});
            }
        }
    }

    std::optional<Mapping> run() {
        if (!search(0)) return std::nullopt;
        Mapping out;
        for (int v = 0; v < src_.size(); ++v)
            out[v] = assignment_[static_cast<std::size_t>(v)];
        return out;
    }

private:
    bool consistent_at(int v) const {
        Tuple image;
        for (const auto& [sym, tuple] : checks_[static_cast<std::size_t>(v)]) {
            image.clear();
            for (int e : *tuple)
                image.push_back(assignment_[static_cast<std::size_t>(e)]);
            if (!dst_.has_tuple(sym, image)) return false;
        }
        return true;
    }

    bool search(int v) {
        if (v == src_.size()) return true;
        const int pinned = assignment_[static_cast<std::size_t>(v)];
        for (int d = 0; d < dst_.size(); ++d) {
            if (pinned >= 0 && d != pinned) continue;
            if (d == forbidden_) continue;
            if (injective_ && used_[static_cast<std::size_t>(d)]) continue;
            assignment_[static_cast<std::size_t>(v)] = d;
            used_[static_cast<std::size_t>(d)] = true;
            if (consistent_at(v) && search(v + 1)) return true;
            used_[static_cast<std::size_t>(d)] = false;
        }
        assignment_[static_cast<std::size_t>(v)] = pinned;
        return false;
    }

    const Structure& src_;
    const Structure& dst_;
    bool injective_;
    int forbidden_;
    std::vector<int> assignment_;
    std::vector<bool> used_;
    std::vector<std::vector<std::pair<std::size_t, const Tuple*>>> checks_;
};

}  // namespace detail

/// Exhaustive search for a homomorphism src -> dst extending `pins`.
/// Absence of a result is a proof that none exists.
inline std::optional<Mapping> find_homomorphism(const Structure& src, const Structure& dst,
                                                const Mapping& pins = {}) {
    return detail::HomSearch(src, dst, pins).run();
}

/// True iff a bijective tuple-reflecting homomorphism exists. An injective
/// homomorphism between structures with equal sizes and equal per-relation
/// tuple counts is automatically reflecting, so only counts plus an injective
/// search are needed.
inline bool is_isomorphic(const Structure& s, const Structure& t) {
    if (s.signature() != t.signature())
        throw Error("is_isomorphic: signature mismatch");
    if (s.size() != t.size()) return false;
    for (std::size_t i = 0; i < s.signature().size(); ++i)
        if (s.relation(i).size() != t.relation(i).size()) return false;
    return detail::HomSearch(s, t, {}, /*injective=*/true).run().has_value();
}

namespace detail {

// A non-surjective endomorphism avoiding some element, or nullopt when b is a core.
inline std::optional<Mapping> find_non_surjective_endomorphism(const Structure& b) {
    for (int skip = 0; skip < b.size(); ++skip) {
        auto f = HomSearch(b, b, {}, /*injective=*/false, /*forbidden=*/skip).run();
        if (f) return f;
    }
    return std::nullopt;
}

}  // namespace detail

/// True iff every endomorphism of b is an automorphism. Over a finite domain
/// a bijective endomorphism is always an automorphism, so it suffices that no
/// endomorphism misses an element of the domain.
inline bool is_core(const Structure& b) {
    return !detail::find_non_surjective_endomorphism(b).has_value();
}

/// A core retract of b: repeatedly restrict to the image of a non-surjective
/// endomorphism until none exists. The result is homomorphically equivalent
/// to b and unique up to isomorphism.
inline Structure core_of(const Structure& b) {
    Structure current = b;
    while (true) {
        auto f = detail::find_non_surjective_endomorphism(current);
        if (!f) return current;
        std::vector<int> image;
        for (const auto& [from, to] : *f) image.push_back(to);
        current = current.induced(image);
    }
}

}  // namespace qcsp
