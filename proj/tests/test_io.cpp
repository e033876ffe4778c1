#include <catch2/catch_amalgamated.hpp>

#include "qcsp/fixtures.hpp"
#include "qcsp/io.hpp"
#include "qcsp/solve.hpp"

using namespace qcsp;

namespace {

// ParseError carrying an expected position.
void expect_parse_error(const std::string& text, int line, int column, bool sentence) {
    try {
        if (sentence)
            parse_sentence(text);
        else
            parse_structure(text);
        FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == column);
    }
}

}  // namespace

TEST_CASE("structure round trip over the fixture zoo") {
    for (const auto& [name, b] : fixtures::zoo()) {
        INFO(name);
        Structure again = parse_structure(to_text(b));
        CHECK(again == b);
    }
}

TEST_CASE("structure parsing accepts comments, blanks and repeats") {
    Structure s = parse_structure(
        "# a two-element clique\n"
        "domain 2\n"
        "\n"
        "relation E 2   # edges\n"
        "0 1\n"
        "1 0\n"
        "0 1\n"  // duplicate rows collapse
        "end\n"
        "relation U 1\n"
        "end\n");
    CHECK(s.size() == 2);
    CHECK(s.relation("E") == std::set<Tuple>{{0, 1}, {1, 0}});
    CHECK(s.relation("U").empty());
}

TEST_CASE("structure parse errors carry positions") {
    expect_parse_error("", 1, 1, false);
    expect_parse_error("domain x\n", 1, 8, false);
    expect_parse_error("domain 0\n", 1, 8, false);
    expect_parse_error("domain 2\nrel E 2\nend\n", 2, 1, false);
    expect_parse_error("domain 2\nrelation E 2\n0 1 1\nend\n", 3, 1, false);  // arity mismatch
    expect_parse_error("domain 2\nrelation E 2\n0 2\nend\n", 3, 3, false);    // out of range
    expect_parse_error("domain 2\nrelation E 2\nend\nrelation E 1\nend\n", 4, 10, false);
    expect_parse_error("domain 2\nrelation E 2\n0 1\n", 3, 3, false);  // missing end
    expect_parse_error("domain 2\nrelation E 0\nend\n", 2, 12, false);
}

TEST_CASE("sentence round trips") {
    std::vector<PHSentence> cases;
    cases.push_back(PHSentence::bottom());
    cases.push_back(PHSentence({}, {}));
    cases.push_back(PHSentence({{Quantifier::Universal, "x"}}, {}));
    cases.push_back(PHSentence({{Quantifier::Universal, "x"}, {Quantifier::Existential, "y"}},
                               {{"E", {Term::var("x"), Term::var("y")}},
                                {"E", {Term::var("y"), Term::elem(0)}}}));
    cases.push_back(PHSentence({}, {{"U0", {Term::elem(1)}}}));
    for (const PHSentence& phi : cases) {
        PHSentence again = parse_sentence(to_text(phi));
        CHECK(again == phi);
    }
}

TEST_CASE("sentence text forms") {
    CHECK(to_text(PHSentence::bottom()) == "false\n");
    PHSentence phi({{Quantifier::Universal, "x"}, {Quantifier::Existential, "y"}},
                   {{"E", {Term::var("x"), Term::var("y")}}});
    CHECK(to_text(phi) == "prefix A x E y\natom E x y\n");

    PHSentence parsed = parse_sentence("# comment\nprefix E v\natom E v @1 # tail\n");
    CHECK(parsed.body() == std::vector<Atom>{{"E", {Term::var("v"), Term::elem(1)}}});
}

TEST_CASE("sentence parse errors carry positions") {
    expect_parse_error("", 1, 1, true);
    expect_parse_error("false extra\n", 1, 1, true);
    expect_parse_error("false\natom E x\n", 1, 1, true);
    expect_parse_error("atom E x\n", 1, 1, true);           // no prefix line
    expect_parse_error("prefix A\n", 1, 8, true);           // dangling quantifier
    expect_parse_error("prefix Q x\n", 1, 8, true);         // bad quantifier letter
    expect_parse_error("prefix A @x\n", 1, 10, true);       // variable named like a constant
    expect_parse_error("prefix A x E x\n", 1, 14, true);    // duplicate variable
    expect_parse_error("prefix A x\nfact E x\n", 2, 1, true);
    expect_parse_error("prefix A x\natom E x y\n", 2, 10, true);  // unquantified
    expect_parse_error("prefix A x\natom E x @q\n", 2, 11, true); // bad constant digits
}

TEST_CASE("parser is syntactic about constants") {
    // '@-1' parses; range checking belongs to evaluation, where the sentence
    // meets a concrete structure.
    PHSentence phi = parse_sentence("prefix\natom E @-1 @0\n");
    CHECK(phi.constants() == std::vector<int>{-1, 0});
    CHECK_THROWS_AS(csp_eval(fixtures::k2(), phi), Error);
}

TEST_CASE("printed structures are canonical") {
    // Relation rows come out sorted regardless of insertion order.
    Structure a(Signature({{"E", 2}}), 3);
    a.add_tuple("E", {2, 1});
    a.add_tuple("E", {0, 1});
    Structure b(Signature({{"E", 2}}), 3);
    b.add_tuple("E", {0, 1});
    b.add_tuple("E", {2, 1});
    CHECK(to_text(a) == to_text(b));
    CHECK(to_text(a) == "domain 3\nrelation E 2\n0 1\n2 1\nend\n");
}
