#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "qcsp/fixtures.hpp"
#include "qcsp/generate.hpp"
#include "qcsp/partitioned.hpp"
#include "qcsp/sentence.hpp"
#include "qcsp/solve.hpp"

using namespace qcsp;

namespace {

PHSentence forall_exists_edge() {
    return PHSentence({{Quantifier::Universal, "u"}, {Quantifier::Existential, "v"}},
                      {{"E", {Term::var("u"), Term::var("v")}}});
}

}  // namespace

TEST_CASE("sentence validation") {
    CHECK_THROWS_AS(PHSentence({{Quantifier::Universal, "x"}, {Quantifier::Existential, "x"}}, {}),
                    Error);
    CHECK_THROWS_AS(PHSentence({}, {{"E", {Term::var("x"), Term::var("x")}}}), Error);
    CHECK_THROWS_AS(PHSentence({{Quantifier::Universal, ""}}, {}), Error);

    PHSentence truth;
    CHECK(!truth.is_bottom());
    CHECK(truth.prefix().empty());
    CHECK(truth.all_existential());

    PHSentence bot = PHSentence::bottom();
    CHECK(bot.is_bottom());
    CHECK(bot.prefix().empty());
    CHECK(bot.body().empty());
}

TEST_CASE("sentence accessors") {
    PHSentence phi({{Quantifier::Universal, "u"}, {Quantifier::Existential, "v"}},
                   {{"E", {Term::var("u"), Term::elem(1)}}, {"E", {Term::elem(0), Term::var("v")}}});
    CHECK(!phi.all_existential());
    CHECK(phi.has_constants());
    CHECK(phi.constants() == std::vector<int>{0, 1});
    CHECK(phi.position_of("u") == 0);
    CHECK(phi.position_of("v") == 1);
    CHECK(phi.position_of("w") == -1);
    CHECK(phi.variables_of(Quantifier::Universal) == std::vector<std::string>{"u"});
    CHECK(phi.variables_of(Quantifier::Existential) == std::vector<std::string>{"v"});
}

TEST_CASE("equal_up_to_renaming") {
    PHSentence a = forall_exists_edge();
    PHSentence b({{Quantifier::Universal, "x"}, {Quantifier::Existential, "y"}},
                 {{"E", {Term::var("x"), Term::var("y")}}});
    CHECK(equal_up_to_renaming(a, b));

    // Body order is immaterial.
    PHSentence c({{Quantifier::Existential, "x"}, {Quantifier::Existential, "y"}},
                 {{"E", {Term::var("x"), Term::var("y")}}, {"E", {Term::var("y"), Term::var("x")}}});
    PHSentence d({{Quantifier::Existential, "p"}, {Quantifier::Existential, "q"}},
                 {{"E", {Term::var("q"), Term::var("p")}}, {"E", {Term::var("p"), Term::var("q")}}});
    CHECK(equal_up_to_renaming(c, d));

    // Quantifier tags matter.
    PHSentence e({{Quantifier::Existential, "x"}, {Quantifier::Existential, "y"}},
                 {{"E", {Term::var("x"), Term::var("y")}}});
    CHECK(!equal_up_to_renaming(a, e));
    // Distinct atom sets stay distinct; repeated atoms collapse.
    CHECK(!equal_up_to_renaming(c, e));
    PHSentence twice({{Quantifier::Existential, "x"}, {Quantifier::Existential, "y"}},
                     {{"E", {Term::var("x"), Term::var("y")}}, {"E", {Term::var("x"), Term::var("y")}}});
    CHECK(equal_up_to_renaming(twice, e));
    CHECK(equal_up_to_renaming(PHSentence::bottom(), PHSentence::bottom()));
    CHECK(!equal_up_to_renaming(PHSentence::bottom(), PHSentence()));
}

TEST_CASE("normalize_alternation on the documented shapes") {
    // exists v E(v,v)  ->  forall d1 exists v E(v,v)
    PHSentence phi({{Quantifier::Existential, "v"}}, {{"E", {Term::var("v"), Term::var("v")}}});
    PHSentence norm = normalize_alternation(phi);
    REQUIRE(norm.prefix().size() == 2);
    CHECK(norm.prefix()[0].quantifier == Quantifier::Universal);
    CHECK(norm.prefix()[1].quantifier == Quantifier::Existential);
    CHECK(norm.prefix()[1].name == "v");
    CHECK(norm.body() == phi.body());

    // forall u1 forall u2 exists v  ->  forall u1 exists d1 forall u2 exists v
    PHSentence two_foralls({{Quantifier::Universal, "u1"},
                            {Quantifier::Universal, "u2"},
                            {Quantifier::Existential, "v"}},
                           {{"E", {Term::var("u1"), Term::var("v")}}});
    PHSentence norm2 = normalize_alternation(two_foralls);
    REQUIRE(norm2.prefix().size() == 4);
    CHECK(norm2.prefix()[0].name == "u1");
    CHECK(norm2.prefix()[1].quantifier == Quantifier::Existential);
    CHECK(norm2.prefix()[2].name == "u2");
    CHECK(norm2.prefix()[3].name == "v");

    // Already alternating: unchanged.
    CHECK(normalize_alternation(forall_exists_edge()) == forall_exists_edge());

    // A trailing universal gains an existential partner.
    PHSentence lone({{Quantifier::Universal, "u"}}, {});
    PHSentence norm3 = normalize_alternation(lone);
    REQUIRE(norm3.prefix().size() == 2);
    CHECK(norm3.prefix()[1].quantifier == Quantifier::Existential);

    CHECK(normalize_alternation(PHSentence()).prefix().empty());
    CHECK_THROWS_AS(normalize_alternation(PHSentence::bottom()), Error);
}

TEST_CASE("normalize_alternation output alternates and preserves truth") {
    for (const auto& [name, b] : fixtures::zoo()) {
        std::mt19937_64 rng(101);
        const SentenceOptions opt{3, 3, 4};
        for (int i = 0; i < 200; ++i) {
            PHSentence phi = random_sentence(b.signature(), opt, rng);
            PHSentence norm = normalize_alternation(phi);
            // Strict forall/exists alternation starting universal.
            for (std::size_t p = 0; p < norm.prefix().size(); ++p)
                CHECK(norm.prefix()[p].quantifier ==
                      (p % 2 == 0 ? Quantifier::Universal : Quantifier::Existential));
            CHECK(norm.prefix().size() % 2 == 0);
            CHECK(qcsp_eval(b, norm) == qcsp_eval(b, phi));
        }
    }
}

TEST_CASE("to_partitioned on the documented shapes") {
    const Signature sig({{"E", 2}});
    PartitionedStructure p = to_partitioned(forall_exists_edge(), sig);
    CHECK(p.base().size() == 2);
    CHECK(p.base().relation("E") == std::set<Tuple>{{0, 1}});
    REQUIRE(p.blocks().size() == 2);
    CHECK(p.blocks()[0] == Block{Quantifier::Universal, 0});
    CHECK(p.blocks()[1] == Block{Quantifier::Existential, 1});

    // An unused universal still occupies a block; its element is isolated.
    PHSentence iso({{Quantifier::Universal, "u1"},
                    {Quantifier::Universal, "u2"},
                    {Quantifier::Existential, "v1"}},
                   {{"E", {Term::var("u1"), Term::var("v1")}}});
    PartitionedStructure q = to_partitioned(iso, sig);
    CHECK(q.base().size() == 3);
    CHECK(q.base().relation("E") == std::set<Tuple>{{0, 2}});
    CHECK(q.blocks()[1] == Block{Quantifier::Universal, 1});

    CHECK_THROWS_AS(to_partitioned(PHSentence::bottom(), sig), Error);
    CHECK_THROWS_AS(to_partitioned(PHSentence(), sig), Error);
    PHSentence with_const({{Quantifier::Existential, "v"}}, {{"E", {Term::elem(0), Term::var("v")}}});
    CHECK_THROWS_AS(to_partitioned(with_const, sig), Error);
}

TEST_CASE("partitioned structure invariants") {
    Structure base(Signature({{"E", 2}}), 2);
    CHECK_THROWS_AS(PartitionedStructure(base, {{Quantifier::Universal, 0}}), Error);  // misses 1
    CHECK_THROWS_AS(
        PartitionedStructure(base, {{Quantifier::Universal, 0}, {Quantifier::Existential, 0}}),
        Error);  // duplicate occupant
    CHECK_THROWS_AS(
        PartitionedStructure(base, {{Quantifier::Universal, 0}, {Quantifier::Existential, 5}}),
        Error);  // out of range

    // Empty blocks are allowed and skipped by from_partitioned.
    Structure loop(Signature({{"E", 2}}), 1);
    loop.add_tuple("E", {0, 0});
    PartitionedStructure p(loop, {{Quantifier::Universal, std::nullopt}, {Quantifier::Existential, 0}});
    PHSentence back = from_partitioned(p);
    REQUIRE(back.prefix().size() == 1);
    CHECK(back.prefix()[0].quantifier == Quantifier::Existential);
    CHECK(back.body().size() == 1);
}

TEST_CASE("partitioned round trip up to renaming") {
    const Signature sig({{"E", 2}});
    // Exhaustive over small shapes plus seeded random draws.
    for_each_sentence(sig, 2, 2, 2, [&](const PHSentence& phi) {
        if (phi.prefix().empty()) return;
        CHECK(equal_up_to_renaming(from_partitioned(to_partitioned(phi, sig)), phi));
    });
    std::mt19937_64 rng(103);
    const SentenceOptions opt{3, 3, 5};
    const Signature two({{"E", 2}, {"U", 1}});
    for (int i = 0; i < 200; ++i) {
        PHSentence phi = random_sentence(two, opt, rng);
        if (phi.prefix().empty()) continue;
        CHECK(equal_up_to_renaming(from_partitioned(to_partitioned(phi, two)), phi));
    }
}
