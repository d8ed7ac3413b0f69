#include <catch_amalgamated.hpp>

#include "hypermon/parse.hpp"
#include "hypermon/random_gen.hpp"

using namespace hypermon;

namespace {
const Alphabet kAB({"a", "b"});
const std::string kExample =
    "A p. [a]ff /\\ E p. [b] max x.([a]ff & [b]x)";
}

TEST_CASE("hyper formula parsing") {
    HyperPtr f = parse_hyper(kExample, kAB);
    HyperPtr expected = hyper::meet(
        hyper::forall("p", shml::box("a", shml::ff())),
        hyper::exists("p", shml::box("b", shml::max("x", shml::conj(
            shml::box("a", shml::ff()), shml::box("b", shml::var("x")))))));
    CHECK(equal(f, expected));

    CHECK(equal(parse_hyper("A p. tt", kAB), hyper::forall("p", shml::tt())));

    SECTION("meet binds looser than join") {
        HyperPtr g = parse_hyper("A p. tt \\/ E p. ff /\\ A q. ff", kAB);
        REQUIRE(g->kind == Hyper::Kind::Meet);
        CHECK(g->left->kind == Hyper::Kind::Join);
    }
}

TEST_CASE("parser diagnostics") {
    CHECK_THROWS_WITH(parse_hyper("E p. max x. x", kAB),
                      Catch::Matchers::ContainsSubstring("unguarded recursion variable: x"));
    CHECK_THROWS_WITH(parse_hyper("A p. y", kAB),
                      Catch::Matchers::ContainsSubstring("unbound recursion variable: y"));
    CHECK_THROWS_WITH(parse_hyper("A p. [c]ff", kAB),
                      Catch::Matchers::ContainsSubstring("unknown action: c"));
    CHECK_THROWS_WITH(parse_hyper("A p. E q. tt", kAB),
                      Catch::Matchers::ContainsSubstring("quantifier not allowed"));
    CHECK_THROWS_AS(parse_hyper("A p. [a ff", kAB), parse_error);

    try {
        parse_hyper("A p.\n  [a]zz", kAB);
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("suite parsing") {
    TraceSuite s = parse_suite("alphabet a b\ntrace | a\ntrace b a | b\ntrace | b\n");
    REQUIRE(s.size() == 3);
    CHECK(s.traces[0] == LassoTrace({}, {"a"}));
    CHECK(s.traces[1] == LassoTrace({"b", "a"}, {"b"}));
    CHECK(s.traces[2] == LassoTrace({}, {"b"}));

    TraceSuite single = parse_suite("alphabet a\ntrace | a\n");
    CHECK(single.size() == 1);

    CHECK_THROWS_WITH(parse_suite("alphabet a b\ntrace a |\n"),
                      Catch::Matchers::ContainsSubstring("empty loop"));
    CHECK_THROWS_WITH(parse_suite("alphabet a b\n"),
                      Catch::Matchers::ContainsSubstring("no traces"));
    CHECK_THROWS_WITH(parse_suite("alphabet a\ntrace | b\n"),
                      Catch::Matchers::ContainsSubstring("not in alphabet"));
}

TEST_CASE("printing") {
    CHECK(print_hyper(hyper::forall("p", shml::box("a", shml::ff()))) == "A p. [a]ff");
    CHECK(print_hyper(parse_hyper(kExample, kAB)) == kExample);
    CHECK(print_shml(shml::max("x", shml::conj(shml::box("a", shml::ff()),
                                               shml::box("b", shml::var("x"))))) ==
          "max x.([a]ff & [b]x)");
}

TEST_CASE("print/parse round trip on random formulae") {
    gen::Rng rng(7);
    gen::Bounds bounds;
    for (int i = 0; i < 300; ++i) {
        Alphabet alphabet = gen::gen_alphabet(rng, bounds);
        HyperPtr f = gen::gen_hyper(rng, alphabet, bounds);
        CAPTURE(print_hyper(f));
        CHECK(equal(parse_hyper(print_hyper(f), alphabet), f));
    }
}

TEST_CASE("suite round trip keeps trace order") {
    gen::Rng rng(11);
    gen::Bounds bounds;
    for (int i = 0; i < 100; ++i) {
        Alphabet alphabet = gen::gen_alphabet(rng, bounds);
        TraceSuite s = gen::gen_suite(rng, alphabet, bounds);
        TraceSuite back = parse_suite(print_suite(s));
        REQUIRE(back.size() == s.size());
        for (size_t t = 0; t < s.size(); ++t) CHECK(back.traces[t] == s.traces[t]);
    }
}
