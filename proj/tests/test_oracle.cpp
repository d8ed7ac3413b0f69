#include <catch_amalgamated.hpp>

#include "hypermon/oracle.hpp"
#include "hypermon/parse.hpp"
#include "hypermon/random_gen.hpp"

using namespace hypermon;

namespace {

const Alphabet kAB({"a", "b"});

ShmlPtr sh(const std::string& text) { return parse_shml(text, kAB); }

const LassoTrace kAOmega({}, {"a"});
const LassoTrace kBOmega({}, {"b"});

} // namespace

TEST_CASE("shml evaluation over lassos") {
    CHECK_FALSE(oracle::eval_shml(sh("[a]ff"), kAOmega));
    CHECK(oracle::eval_shml(sh("[b] max x.([a]ff & [b]x)"), kBOmega));
    CHECK(oracle::eval_shml(sh("[b]ff"), kAOmega)); // vacuous box
    CHECK(oracle::eval_shml(sh("tt"), kAOmega));
    CHECK(oracle::eval_shml(sh("tt"), LassoTrace({"b", "a"}, {"b"})));
    CHECK_FALSE(oracle::eval_shml(sh("max x.([a]ff & [b]x)"), LassoTrace({"b", "a"}, {"b"})));
}

TEST_CASE("hyper evaluation over suites") {
    HyperPtr example = parse_hyper("A p. [a]ff /\\ E p. [b] max x.([a]ff & [b]x)", kAB);
    TraceSuite fig1(kAB, {kAOmega, LassoTrace({"b", "a"}, {"b"}), kBOmega});
    CHECK_FALSE(oracle::eval_hyper(example, fig1));
    CHECK(oracle::eval_hyper(example, TraceSuite(kAB, {kBOmega})));
    CHECK_FALSE(oracle::eval_hyper(hyper::exists("p", shml::ff()), fig1));
}

TEST_CASE("violation prefixes") {
    CHECK(oracle::violation_prefix(sh("[a]ff"), kAOmega) == 1);
    CHECK(oracle::violation_prefix(sh("[b][a]ff"), LassoTrace({"b"}, {"a"})) == 2);
    CHECK_FALSE(oracle::violation_prefix(sh("[b] max x.([a]ff & [b]x)"), kBOmega).has_value());
    CHECK(oracle::violation_prefix(sh("ff"), kAOmega) == 0);
}

TEST_CASE("violation prefix / evaluation duality") {
    gen::Rng rng(23);
    gen::Bounds bounds;
    for (int i = 0; i < 300; ++i) {
        Alphabet alphabet = gen::gen_alphabet(rng, bounds);
        ShmlPtr f = gen::gen_shml(rng, alphabet, bounds.max_shml_depth);
        LassoTrace t = gen::gen_lasso(rng, alphabet, bounds);
        CAPTURE(print_shml(f), print_lasso(t));
        CHECK(oracle::violation_prefix(f, t).has_value() == !oracle::eval_shml(f, t));
    }
}

TEST_CASE("a violating prefix dooms every extension") {
    gen::Rng rng(29);
    gen::Bounds bounds;
    int checked = 0;
    for (int i = 0; i < 400 && checked < 60; ++i) {
        Alphabet alphabet = gen::gen_alphabet(rng, bounds);
        ShmlPtr f = gen::gen_shml(rng, alphabet, bounds.max_shml_depth);
        LassoTrace t = gen::gen_lasso(rng, alphabet, bounds);
        auto n = oracle::violation_prefix(f, t);
        if (!n || *n == 0) continue;
        ++checked;
        // same first n actions, arbitrary different tail
        std::vector<Action> shared;
        for (size_t p = 0; p < *n; ++p) shared.push_back(t.at(p));
        LassoTrace other(shared, gen::gen_lasso(rng, alphabet, bounds).loop);
        CAPTURE(print_shml(f), print_lasso(t), print_lasso(other), *n);
        CHECK_FALSE(oracle::eval_shml(f, other));
    }
    CHECK(checked >= 50);
}

TEST_CASE("max unfolds transparently") {
    gen::Rng rng(31);
    gen::Bounds bounds;
    for (int i = 0; i < 200; ++i) {
        Alphabet alphabet = gen::gen_alphabet(rng, bounds);
        ShmlPtr f = gen::gen_shml(rng, alphabet, bounds.max_shml_depth);
        if (f->kind != Shml::Kind::Max) f = shml::max("u0", shml::box(
            alphabet.actions().front(), f));
        LassoTrace t = gen::gen_lasso(rng, alphabet, bounds);
        CAPTURE(print_shml(f), print_lasso(t));
        CHECK(oracle::eval_shml(f, t) == oracle::eval_shml(unfold(f), t));
    }
}

TEST_CASE("box vacuity on head mismatch") {
    gen::Rng rng(37);
    gen::Bounds bounds;
    for (int i = 0; i < 200; ++i) {
        Alphabet alphabet = gen::gen_alphabet(rng, bounds);
        ShmlPtr body = gen::gen_shml(rng, alphabet, bounds.max_shml_depth);
        LassoTrace t = gen::gen_lasso(rng, alphabet, bounds);
        for (const auto& a : alphabet.actions()) {
            if (a == t.at(0)) continue;
            CHECK(oracle::eval_shml(shml::box(a, body), t));
        }
    }
}

TEST_CASE("alphabet mismatch is rejected") {
    Alphabet just_a({"a"});
    CHECK_THROWS_AS(oracle::eval_shml(parse_shml("tt", just_a), kBOmega, just_a), error);
}
