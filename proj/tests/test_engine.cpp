#include <catch_amalgamated.hpp>

#include <sstream>

#include "hypermon/engine.hpp"
#include "hypermon/oracle.hpp"
#include "hypermon/parse.hpp"
#include "hypermon/random_gen.hpp"

using namespace hypermon;

namespace {

const Alphabet kAB({"a", "b"});

HyperPtr hy(const std::string& text) { return parse_hyper(text, kAB); }

const std::string kExample = "A p. [a]ff /\\ E p. [b] max x.([a]ff & [b]x)";

TraceSuite fig1_suite() {
    return TraceSuite(kAB, {LassoTrace({}, {"a"}),
                            LassoTrace({"b", "a"}, {"b"}),
                            LassoTrace({}, {"b"})});
}

} // namespace

TEST_CASE("instrumentation") {
    SECTION("lane counts and initial configuration") {
        CircuitMonitor c = syn(hy(kExample), kAB);
        RunState rs = instrument(c, 3, kAB);
        CHECK(rs.lane_count() == 6);
        CHECK(rs.configuration() == init_configuration(c, 3));
        CHECK_FALSE(rs.verdict().has_value());
    }
    SECTION("ff monitors flush their verdict immediately") {
        RunState rs = instrument(syn(hy("E p. ff"), kAB), 2, kAB);
        CHECK(rs.lane_count() == 2);
        CHECK(rs.verdict() == Verdict::No);
    }
    SECTION("tt monitors flush yes immediately") {
        RunState rs = instrument(syn(hy("A p. tt"), kAB), 1, kAB);
        CHECK(rs.verdict() == Verdict::Yes);
        CHECK(rs.close_trace(1) == Verdict::Yes);
    }
    SECTION("binary gate over two quantifiers, k = 1") {
        RunState rs = instrument(syn(hy("A p. [a]ff /\\ E p. [a]ff"), kAB), 1, kAB);
        CHECK(rs.lane_count() == 2);
    }
    CHECK_THROWS_AS(instrument(syn(hy("A p. tt"), kAB), 0, kAB), error);
}

TEST_CASE("feeding events") {
    SECTION("first event of trace 1 decides the Fig.-style run") {
        RunState rs = instrument(syn(hy(kExample), kAB), 3, kAB);
        CHECK(rs.feed(1, "a") == Verdict::No);
        CHECK(rs.configuration().values[1].decided == Verdict::No);
    }
    SECTION("verdict-state lanes make feeds inert") {
        CircuitMonitor c = syn(hy("A p. [a]ff"), kAB);
        RunState rs = instrument(c, 1, kAB);
        rs.feed(1, "b"); // lane reaches yes
        Configuration before = rs.configuration();
        rs.feed(1, "a");
        rs.feed(1, "b");
        CHECK(rs.configuration() == before);
    }
    SECTION("or-kind short-circuit on a yes lane") {
        RunState rs = instrument(syn(hy("E p. [a]ff"), kAB), 2, kAB);
        CHECK(rs.feed(1, "b") == Verdict::Yes);
    }
    SECTION("bad inputs") {
        RunState rs = instrument(syn(hy("A p. [a]ff"), kAB), 2, kAB);
        CHECK_THROWS_AS(rs.feed(3, "a"), error);
        CHECK_THROWS_AS(rs.feed(0, "a"), error);
        CHECK_THROWS_AS(rs.feed(1, "c"), error);
    }
}

TEST_CASE("closing traces") {
    SECTION("an undecided existential loop ends") {
        RunState rs = instrument(syn(hy("E p. [b] max x.([a]ff & [b]x)"), kAB), 1, kAB);
        rs.feed(1, "b");
        rs.feed(1, "b");
        rs.feed(1, "b");
        CHECK_FALSE(rs.verdict().has_value());
        CHECK(rs.close_trace(1) == Verdict::End);
    }
    SECTION("closing decided lanes changes nothing") {
        RunState rs = instrument(syn(hy("A p. [a]ff"), kAB), 1, kAB);
        rs.feed(1, "b");
        Configuration before = rs.configuration();
        rs.close_trace(1);
        CHECK(rs.configuration() == before);
    }
    SECTION("feeding a closed trace is an error") {
        RunState rs = instrument(syn(hy("A p. [a]ff"), kAB), 2, kAB);
        rs.close_trace(1);
        CHECK_THROWS_WITH(rs.feed(1, "a"), Catch::Matchers::ContainsSubstring("closed"));
        rs.feed(2, "b"); // other traces stay live
    }
}

TEST_CASE("suite runs") {
    CircuitMonitor example = syn(hy(kExample), kAB);
    CHECK(run_suite(example, fig1_suite()) == Verdict::No);
    CHECK(run_suite(example, TraceSuite(kAB, {LassoTrace({}, {"b"})})) == Verdict::End);
    CHECK(run_suite(syn(hy("A p. [a]ff"), kAB),
                    TraceSuite(kAB, {LassoTrace({}, {"b"})})) == Verdict::Yes);
}

TEST_CASE("schedule independence of suite runs") {
    gen::Rng rng(59);
    gen::Bounds bounds;
    for (int i = 0; i < 40; ++i) {
        Alphabet alphabet = gen::gen_alphabet(rng, bounds);
        HyperPtr f = gen::gen_hyper(rng, alphabet, bounds);
        TraceSuite T = gen::gen_suite(rng, alphabet, bounds);
        CircuitMonitor c = syn(f, alphabet);
        RunState reference = run_suite_state(c, T);

        // random interleavings of the same per-trace event sequences
        size_t S = c.max_monitor_states();
        for (int round = 0; round < 3; ++round) {
            RunState rs(c, T.size(), alphabet);
            std::vector<size_t> remaining, pos(T.size(), 0);
            for (size_t t = 0; t < T.size(); ++t)
                remaining.push_back(trace_bound(T.traces[t], S));
            size_t total = 0;
            for (size_t r : remaining) total += r;
            while (total > 0) {
                size_t t = rng.below(T.size());
                if (remaining[t] == 0) continue;
                rs.feed(t + 1, T.traces[t].at(pos[t]++));
                --remaining[t];
                --total;
            }
            std::vector<size_t> order;
            for (size_t t = 1; t <= T.size(); ++t) order.push_back(t);
            for (size_t j = order.size(); j > 1; --j) std::swap(order[j - 1], order[rng.below(j)]);
            for (size_t t : order) rs.close_trace(t);
            CAPTURE(print_hyper(f), print_suite(T));
            CHECK(rs.verdict() == reference.verdict());
            CHECK(rs.configuration() == reference.configuration());
        }
    }
}

TEST_CASE("fuzzing is reproducible by seed") {
    gen::FuzzReport a = gen::fuzz(99, 30);
    gen::FuzzReport b = gen::fuzz(99, 30);
    CHECK(a.cases == b.cases);
    CHECK(a.soundness_violations == b.soundness_violations);
    CHECK(a.completeness_misses == b.completeness_misses);
    for (int i = 0; i < 30; ++i) {
        gen::FuzzCase ca = gen::make_case(gen::case_seed(99, i), {});
        gen::FuzzCase cb = gen::make_case(gen::case_seed(99, i), {});
        CHECK(equal(ca.formula, cb.formula));
        CHECK(print_suite(ca.suite) == print_suite(cb.suite));
    }
}

TEST_CASE("monitor verdicts against the oracle, randomized") {
    gen::FuzzReport report = gen::fuzz(2024, 150);
    CAPTURE(report.failures.empty() ? "" : report.failures.front().formula);
    CHECK(report.soundness_violations == 0);
    CHECK(report.completeness_misses == 0);
}

TEST_CASE("event stream interface") {
    CircuitMonitor example = syn(hy(kExample), kAB);
    SECTION("decides mid-stream") {
        std::istringstream in("3 b\n1 a\n");
        std::ostringstream out;
        CHECK(run_stream(example, 3, kAB, in, out) == 1);
        CHECK(out.str() == "verdict no\n");
    }
    SECTION("close markers") {
        std::istringstream in("1 b\n1 $\n");
        std::ostringstream out;
        CHECK(run_stream(syn(hy("E p. [b] max x.([a]ff & [b]x)"), kAB), 1, kAB, in, out) == 2);
        CHECK(out.str() == "verdict end\n");
    }
    SECTION("eof closes remaining traces") {
        std::istringstream in("1 b\n");
        std::ostringstream out;
        CHECK(run_stream(syn(hy("A p. [a]ff"), kAB), 2, kAB, in, out) == 2);
        CHECK(out.str() == "verdict end\n");
    }
    SECTION("yes exit code") {
        std::istringstream in("1 b\n2 b\n");
        std::ostringstream out;
        CHECK(run_stream(syn(hy("A p. [a]ff"), kAB), 2, kAB, in, out) == 0);
        CHECK(out.str() == "verdict yes\n");
    }
}
