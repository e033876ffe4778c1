#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcsp/sentence.hpp"
#include "qcsp/structure.hpp"

namespace qcsp {

/// The encoding of a positive Horn sentence as a structure plus a list of
/// singleton-or-empty quantifier blocks in prefix order. The occupied blocks
/// partition the base domain.
struct Block {
    Quantifier tag;
    std::optional<int> occupant;

    friend bool operator==(const Block&, const Block&) = default;
};

class PartitionedStructure {
public:
    PartitionedStructure(Structure base, std::vector<Block> blocks)
        : base_(std::move(base)), blocks_(std::move(blocks)) {
        std::set<int> seen;
        for (const Block& b : blocks_) {
            if (!b.occupant) continue;
            if (*b.occupant < 0 || *b.occupant >= base_.size())
                throw Error("partitioned structure: occupant out of range");
            if (!seen.insert(*b.occupant).second)
                throw Error("partitioned structure: occupant listed twice");
        }
        if (static_cast<int>(seen.size()) != base_.size())
            throw Error("partitioned structure: blocks do not cover the domain");
    }

    const Structure& base() const { return base_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    friend bool operator==(const PartitionedStructure&, const PartitionedStructure&) = default;

private:
    Structure base_;
    std::vector<Block> blocks_;
};

/// Encode a constant-free sentence: the base is its canonical database over
/// all prefix variables (element i = prefix position i), with one singleton
/// block per prefix entry.
inline PartitionedStructure to_partitioned(const PHSentence& phi, const Signature& sig) {
    if (phi.is_bottom()) throw Error("to_partitioned: bottom cannot be encoded");
    if (phi.has_constants()) throw Error("to_partitioned: constants cannot be encoded");
    if (phi.prefix().empty()) throw Error("to_partitioned: sentence has no variables");

    Structure base(sig, static_cast<int>(phi.prefix().size()));
    for (const Atom& a : phi.body()) {
        Tuple t;
        for (const Term& term : a.args) t.push_back(phi.position_of(term.variable()));
        base.add_tuple(a.symbol, std::move(t));
    }
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < phi.prefix().size(); ++i)
        blocks.push_back({phi.prefix()[i].quantifier, static_cast<int>(i)});
    return PartitionedStructure(std::move(base), std::move(blocks));
}

/// Read the sentence back: occupied blocks in order give the prefix (empty
/// blocks are skipped), base relations give the body.
inline PHSentence from_partitioned(const PartitionedStructure& p) {
    std::vector<std::string> name_of(static_cast<std::size_t>(p.base().size()));
    std::vector<QuantifiedVar> prefix;
    int universals = 0, existentials = 0;
    for (const Block& b : p.blocks()) {
        if (!b.occupant) continue;
        std::string name = b.tag == Quantifier::Universal
                               ? "u" + std::to_string(++universals)
                               : "v" + std::to_string(++existentials);
        name_of[static_cast<std::size_t>(*b.occupant)] = name;
        prefix.push_back({b.tag, std::move(name)});
    }
    std::vector<Atom> body;
    for (std::size_t i = 0; i < p.base().signature().size(); ++i) {
        const std::string& sym = p.base().signature().at(i).name;
        for (const Tuple& t : p.base().relation(i)) {
            Atom a{sym, {}};
            for (int e : t) a.args.push_back(Term::var(name_of[static_cast<std::size_t>(e)]));
            body.push_back(std::move(a));
        }
    }
    return PHSentence(std::move(prefix), std::move(body));
}

}  // namespace qcsp
