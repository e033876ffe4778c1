#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcsp/structure.hpp"

namespace qcsp::fixtures {

/// Loopless complete digraph on two elements.
inline Structure k2() {
    Structure s(Signature({{"E", 2}}), 2);
    s.add_tuple("E", {0, 1});
    s.add_tuple("E", {1, 0});
    return s;
}

/// Loopless complete digraph on three elements.
inline Structure k3() {
    Structure s(Signature({{"E", 2}}), 3);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (x != y) s.add_tuple("E", {x, y});
    return s;
}

/// A single arc.
inline Structure p1() {
    Structure s(Signature({{"E", 2}}), 2);
    s.add_tuple("E", {0, 1});
    return s;
}

/// Two singleton unary relations.
inline Structure u2() {
    Structure s(Signature({{"U0", 1}, {"U1", 1}}), 2);
    s.add_tuple("U0", {0});
    s.add_tuple("U1", {1});
    return s;
}

/// One element with a loop.
inline Structure l1() {
    Structure s(Signature({{"E", 2}}), 1);
    s.add_tuple("E", {0, 0});
    return s;
}

inline const std::vector<std::pair<std::string, Structure>>& zoo() {
    static const std::vector<std::pair<std::string, Structure>> all = {
        {"K2", k2()}, {"K3", k3()}, {"P1", p1()}, {"U2", u2()}, {"L1", l1()},
    };
    return all;
}

}  // namespace qcsp::fixtures
