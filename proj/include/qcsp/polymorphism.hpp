#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcsp/structure.hpp"

namespace qcsp {

/// A total k-ary operation on {0..m-1}, stored as a flat table indexed by the
/// lexicographic rank of the argument tuple (first argument most significant).
class OperationTable {
public:
    OperationTable(int arity, int domain_size, std::vector<int> table)
        : arity_(arity), domain_size_(domain_size), table_(std::move(table)) {
        if (arity_ < 1) throw Error("operation table: arity must be positive");
        if (domain_size_ < 1) throw Error("operation table: empty domain");
        std::size_t cells = 1;
        for (int i = 0; i < arity_; ++i) cells *= static_cast<std::size_t>(domain_size_);
        if (table_.size() != cells) throw Error("operation table: wrong number of cells");
        for (int v : table_)
            if (v < 0 || v >= domain_size_) throw Error("operation table: value out of range");
    }

    int arity() const { return arity_; }
    int domain_size() const { return domain_size_; }
    std::size_t cells() const { return table_.size(); }
    const std::vector<int>& table() const { return table_; }

    std::size_t rank(const std::vector<int>& args) const {
        std::size_t r = 0;
        for (int a : args) r = r * static_cast<std::size_t>(domain_size_) + static_cast<std::size_t>(a);
        return r;
    }

    int at(std::size_t index) const { return table_[index]; }
    int operator()(const std::vector<int>& args) const { return table_[rank(args)]; }

    /// Argument tuple at a given lexicographic rank.
    std::vector<int> args_of(std::size_t index) const {
        std::vector<int> args(static_cast<std::size_t>(arity_));
        for (int i = arity_ - 1; i >= 0; --i) {
            args[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(domain_size_));
            index /= static_cast<std::size_t>(domain_size_);
        }
        return args;
    }

private:
    int arity_;
    int domain_size_;
    std::vector<int> table_;
};

namespace detail {

// All ways of choosing one tuple of a relation per power coordinate, with the
// table cells each image coordinate depends on. Used both to verify a full
// table and to prune the NU search.
struct PreservationCheck {
    std::size_t symbol;
    std::vector<std::size_t> cells;  // one per coordinate of the relation
};

inline std::vector<PreservationCheck> preservation_checks(const Structure& b, int arity) {
    std::vector<PreservationCheck> checks;
    std::vector<std::size_t> powers(static_cast<std::size_t>(arity));
    for (std::size_t i = 0; i < powers.size(); ++i) {
        powers[i] = 1;
        for (int j = 0; j < arity - 1 - static_cast<int>(i); ++j)
            powers[i] *= static_cast<std::size_t>(b.size());
    }
    for (std::size_t s = 0; s < b.signature().size(); ++s) {
        std::vector<Tuple> rel(b.relation(s).begin(), b.relation(s).end());
        if (rel.empty()) continue;
        const int r = b.signature().at(s).arity;
        std::vector<std::size_t> choice(static_cast<std::size_t>(arity), 0);
        while (true) {
            PreservationCheck c{s, std::vector<std::size_t>(static_cast<std::size_t>(r), 0)};
            for (int j = 0; j < r; ++j)
                for (int i = 0; i < arity; ++i)
                    c.cells[static_cast<std::size_t>(j)] +=
                        powers[static_cast<std::size_t>(i)] *
                        static_cast<std::size_t>(rel[choice[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)]);
            checks.push_back(std::move(c));
            int pos = arity - 1;
            while (pos >= 0 && ++choice[static_cast<std::size_t>(pos)] == rel.size()) {
                choice[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return checks;
}

inline bool check_passes(const Structure& b, const PreservationCheck& c,
                         const std::vector<int>& table) {
    Tuple image;
    image.reserve(c.cells.size());
    for (std::size_t cell : c.cells) image.push_back(table[cell]);
    return b.has_tuple(c.symbol, image);
}

}  // namespace detail

/// True iff f applied coordinatewise to tuples of every relation of b stays
/// inside the relation, i.e. f is a homomorphism from the f.arity()-th power
/// of b to b.
inline bool is_polymorphism(const Structure& b, const OperationTable& f) {
    if (f.domain_size() != b.size()) throw Error("is_polymorphism: domain size mismatch");
    for (const auto& check : detail::preservation_checks(b, f.arity()))
        if (!detail::check_passes(b, check, f.table())) return false;
    return true;
}

/// Near-unanimity: every argument tuple with at least arity-1 coordinates
/// equal to x maps to x. Requires arity >= 3.
inline bool is_near_unanimity(const OperationTable& f) {
    if (f.arity() < 3) throw Error("is_near_unanimity: arity must be at least 3");
    const int m = f.domain_size();
    std::vector<int> args(static_cast<std::size_t>(f.arity()));
    for (int x = 0; x < m; ++x)
        for (int p = 0; p < f.arity(); ++p)
            for (int y = 0; y < m; ++y) {
                std::fill(args.begin(), args.end(), x);
                args[static_cast<std::size_t>(p)] = y;
                if (f(args) != x) return false;
            }
    return true;
}

/// Exhaustive search for a k-ary near-unanimity polymorphism of b. Cells
/// forced by the NU identities are fixed up front; the remaining cells are
/// filled by backtracking with incremental preservation checks. Absence of a
/// result proves there is none of this arity.
inline std::optional<OperationTable> find_nu(const Structure& b, int k,
                                             std::size_t max_cells = 4096) {
    if (k < 3) throw Error("find_nu: arity must be at least 3");
    const int m = b.size();
    std::size_t cells = 1;
    for (int i = 0; i < k; ++i) {
        cells *= static_cast<std::size_t>(m);
        if (cells > max_cells) throw Error("find_nu: table size exceeds bound");
    }

    std::vector<int> table(cells, -1);
    auto rank = [&](const std::vector<int>& args) {
        std::size_t r = 0;
        for (int a : args) r = r * static_cast<std::size_t>(m) + static_cast<std::size_t>(a);
        return r;
    };
    std::vector<int> args(static_cast<std::size_t>(k));
    for (int x = 0; x < m; ++x)
        for (int p = 0; p < k; ++p)
            for (int y = 0; y < m; ++y) {
                std::fill(args.begin(), args.end(), x);
                args[static_cast<std::size_t>(p)] = y;
                table[rank(args)] = x;
            }

    std::vector<std::size_t> free_cells;
    std::vector<int> order(cells, -1);  // search position per cell, -1 = forced
    for (std::size_t i = 0; i < cells; ++i)
        if (table[i] < 0) {
            order[i] = static_cast<int>(free_cells.size());
            free_cells.push_back(i);
        }

    // Attach each preservation check to the free cell assigned last.
    auto checks = detail::preservation_checks(b, k);
    std::vector<std::vector<const detail::PreservationCheck*>> triggered(free_cells.size());
    for (const auto& check : checks) {
        int last = -1;
        for (std::size_t cell : check.cells) last = std::max(last, order[cell]);
        if (last < 0) {
            // Entirely forced; a failure here rules out every NU table.
            if (!detail::check_passes(b, check, table)) return std::nullopt;
        } else {
            triggered[static_cast<std::size_t>(last)].push_back(&check);
        }
    }

    auto search = [&](auto&& self, std::size_t next) -> bool {
        if (next == free_cells.size()) return true;
        for (int v = 0; v < m; ++v) {
            table[free_cells[next]] = v;
            bool ok = true;
            for (const auto* check : triggered[next])
                if (!detail::check_passes(b, *check, table)) { ok = false; break; }
            if (ok && self(self, next + 1)) return true;
        }
        table[free_cells[next]] = -1;
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    return OperationTable(k, m, std::move(table));
}

}  // namespace qcsp
