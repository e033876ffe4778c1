#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "qcsp/fixtures.hpp"
#include "qcsp/homomorphism.hpp"

using namespace qcsp;

namespace {

bool check_is_homomorphism(const Structure& src, const Structure& dst, const Mapping& h) {
    if (static_cast<int>(h.size()) != src.size()) return false;
    for (std::size_t s = 0; s < src.signature().size(); ++s)
        for (const Tuple& t : src.relation(s)) {
            Tuple image;
            for (int e : t) image.push_back(h.at(e));
            if (!dst.relation(s).count(image)) return false;
        }
    return true;
}

Structure k2_plus_isolated() {
    Structure s(Signature({{"E", 2}}), 3);
    s.add_tuple("E", {0, 1});
    s.add_tuple("E", {1, 0});
    return s;
}

}  // namespace

TEST_CASE("find_homomorphism on the documented pairs") {
    auto id = find_homomorphism(fixtures::k2(), fixtures::k2());
    REQUIRE(id.has_value());
    CHECK(check_is_homomorphism(fixtures::k2(), fixtures::k2(), *id));

    CHECK(!find_homomorphism(fixtures::k3(), fixtures::k2()).has_value());
    CHECK(find_homomorphism(fixtures::k2(), fixtures::k3()).has_value());
    CHECK(find_homomorphism(fixtures::p1(), fixtures::k2()).has_value());

    // Pinning both K2 elements onto 0 forces the edge (0,1) onto the absent
    // loop (0,0).
    CHECK(!find_homomorphism(fixtures::k2(), fixtures::k2(), {{0, 0}, {1, 0}}).has_value());
    // A single pin still leaves the swap map.
    auto swapped = find_homomorphism(fixtures::k2(), fixtures::k2(), {{0, 1}});
    REQUIRE(swapped.has_value());
    CHECK(swapped->at(0) == 1);
    CHECK(swapped->at(1) == 0);
}

TEST_CASE("find_homomorphism validation") {
    CHECK_THROWS_AS(find_homomorphism(fixtures::k2(), fixtures::u2()), Error);
    CHECK_THROWS_AS(find_homomorphism(fixtures::k2(), fixtures::k2(), {{0, 5}}), Error);
    CHECK_THROWS_AS(find_homomorphism(fixtures::k2(), fixtures::k2(), {{7, 0}}), Error);
}

TEST_CASE("find_homomorphism agrees with the brute-force oracle") {
    const Signature sig({{"E", 2}, {"U", 1}});
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int ns = 1 + static_cast<int>(bounded(rng, 3));
        const int nt = 1 + static_cast<int>(bounded(rng, 3));
        Structure src = oracle::random_structure(sig, ns, rng);
        Structure dst = oracle::random_structure(sig, nt, rng);
        Mapping pins;
        if (bounded(rng, 2) == 0)
            pins[static_cast<int>(bounded(rng, ns))] = static_cast<int>(bounded(rng, nt));
        auto mine = find_homomorphism(src, dst, pins);
        auto ref = oracle::brute_force_homomorphism(src, dst, pins);
        REQUIRE(mine.has_value() == ref.has_value());
        if (mine) CHECK(check_is_homomorphism(src, dst, *mine));
    }
}

TEST_CASE("composition of found homomorphisms is a homomorphism") {
    const Signature sig({{"E", 2}});
    std::mt19937_64 rng(11);
    int composed = 0;
    for (int trial = 0; trial < 200 && composed < 40; ++trial) {
        Structure s = oracle::random_structure(sig, 1 + static_cast<int>(bounded(rng, 3)), rng);
        Structure t = oracle::random_structure(sig, 1 + static_cast<int>(bounded(rng, 3)), rng);
        Structure u = oracle::random_structure(sig, 1 + static_cast<int>(bounded(rng, 3)), rng);
        auto f = find_homomorphism(s, t);
        auto g = find_homomorphism(t, u);
        if (!f || !g) continue;
        Mapping gf;
        for (const auto& [x, y] : *f) gf[x] = g->at(y);
        CHECK(check_is_homomorphism(s, u, gf));
        ++composed;
    }
    CHECK(composed > 0);
}

TEST_CASE("is_isomorphic") {
    CHECK(is_isomorphic(fixtures::k2(), fixtures::k2()));
    CHECK(!is_isomorphic(fixtures::k2(), fixtures::p1()));

    // K3 relabelled by the cycle 0->1->2->0.
    const Structure k3 = fixtures::k3();
    Structure cycled(k3.signature(), 3);
    for (const Tuple& t : k3.relation("E"))
        cycled.add_tuple("E", {(t[0] + 1) % 3, (t[1] + 1) % 3});
    CHECK(is_isomorphic(k3, cycled));

    CHECK(!is_isomorphic(fixtures::k2(), fixtures::l1()));  // sizes differ
    CHECK_THROWS_AS(is_isomorphic(fixtures::k2(), fixtures::u2()), Error);
}

TEST_CASE("is_core on the documented structures") {
    CHECK(is_core(fixtures::k2()));
    CHECK(is_core(fixtures::k3()));
    CHECK(is_core(fixtures::l1()));
    CHECK(is_core(fixtures::u2()));
    CHECK(!is_core(k2_plus_isolated()));
}

TEST_CASE("is_core agrees with the brute-force oracle on random digraphs") {
    const Signature sig({{"E", 2}});
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 150; ++trial) {
        Structure s = oracle::random_structure(sig, 1 + static_cast<int>(bounded(rng, 3)), rng);
        CHECK(is_core(s) == oracle::brute_force_is_core(s));
    }
}

TEST_CASE("core_of") {
    CHECK(is_isomorphic(core_of(k2_plus_isolated()), fixtures::k2()));
    CHECK(core_of(fixtures::k2()) == fixtures::k2());

    // ({0,1}; E={(0,0),(0,1),(1,1)}) retracts onto a one-element loop.
    Structure s(Signature({{"E", 2}}), 2);
    s.add_tuple("E", {0, 0});
    s.add_tuple("E", {0, 1});
    s.add_tuple("E", {1, 1});
    CHECK(is_isomorphic(core_of(s), fixtures::l1()));
}

TEST_CASE("core_of properties on random structures") {
    const Signature sig({{"E", 2}});
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        Structure s = oracle::random_structure(sig, 1 + static_cast<int>(bounded(rng, 4)), rng);
        Structure c = core_of(s);
        CHECK(is_core(c));
        CHECK(is_isomorphic(core_of(c), c));
        // Homomorphism equivalence with the original.
        CHECK(find_homomorphism(c, s).has_value());
        CHECK(find_homomorphism(s, c).has_value());
    }
}
