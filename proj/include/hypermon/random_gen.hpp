#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypermon/engine.hpp"
#include "hypermon/oracle.hpp"
#include "hypermon/syntax.hpp"
#include "hypermon/trace.hpp"

// Seeded generation of well-formed formulae and lasso suites, plus the
// differential fuzz driver comparing the monitor pipeline against the
// semantic oracle.

namespace hypermon::gen {

class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    // engine output used directly so sequences are identical across stdlibs
    uint64_t below(uint64_t n) { return engine_() % n; }
    bool chance(unsigned percent) { return below(100) < percent; }

private:
    std::mt19937_64 engine_;
};

struct Bounds {
    size_t max_shml_depth = 5;
    size_t max_hyper_depth = 2;
    size_t max_k = 6;
    size_t max_prefix = 4;
    size_t max_loop = 4;
    size_t max_alphabet = 3;
};

namespace detail {

// Weights: 40% box, 25% conjunction, 20% recursion (binder or guarded
// variable), 15% leaves. Variables are only emitted when guarded, so the
// result is closed and guarded by construction.
inline ShmlPtr gen_shml_rec(Rng& rng, const Alphabet& alphabet, size_t depth,
                            std::vector<std::pair<std::string, bool>> scope,
                            size_t& next_var) {
    std::vector<std::string> guarded;
    for (const auto& [name, g] : scope)
        if (g) guarded.push_back(name);

    if (depth == 0) {
        if (!guarded.empty() && rng.chance(40))
            return shml::var(guarded[rng.below(guarded.size())]);
        return rng.chance(60) ? shml::ff() : shml::tt();
    }

    unsigned roll = static_cast<unsigned>(rng.below(100));
    if (roll < 40) {
        Action a = alphabet.actions()[rng.below(alphabet.size())];
        auto inner = scope;
        for (auto& [name, g] : inner) g = true;
        return shml::box(a, gen_shml_rec(rng, alphabet, depth - 1, std::move(inner), next_var));
    }
    if (roll < 65) {
        return shml::conj(gen_shml_rec(rng, alphabet, depth - 1, scope, next_var),
                          gen_shml_rec(rng, alphabet, depth - 1, scope, next_var));
    }
    if (roll < 85) {
        if (!guarded.empty() && rng.chance(50))
            return shml::var(guarded[rng.below(guarded.size())]);
        std::string x = "v" + std::to_string(next_var++);
        auto inner = scope;
        inner.emplace_back(x, false);
        ShmlPtr body = gen_shml_rec(rng, alphabet, depth - 1, std::move(inner), next_var);
        // a binder whose variable ended up unused is fine; an unguarded body
        // cannot happen since variables are only placed under a box
        return shml::max(x, body);
    }
    return rng.chance(60) ? shml::ff() : shml::tt();
}

} // namespace detail

inline ShmlPtr gen_shml(Rng& rng, const Alphabet& alphabet, size_t max_depth) {
    size_t next_var = 0;
    ShmlPtr f = detail::gen_shml_rec(rng, alphabet, 1 + rng.below(max_depth), {}, next_var);
    check_well_formed(f);
    return f;
}

inline HyperPtr gen_hyper(Rng& rng, const Alphabet& alphabet, const Bounds& b,
                          size_t depth) {
    if (depth == 0 || rng.chance(55)) {
        ShmlPtr body = gen_shml(rng, alphabet, b.max_shml_depth);
        return rng.chance(50) ? hyper::forall("p", body) : hyper::exists("p", body);
    }
    HyperPtr l = gen_hyper(rng, alphabet, b, depth - 1);
    HyperPtr r = gen_hyper(rng, alphabet, b, depth - 1);
    return rng.chance(50) ? hyper::meet(l, r) : hyper::join(l, r);
}

inline HyperPtr gen_hyper(Rng& rng, const Alphabet& alphabet, const Bounds& b) {
    return gen_hyper(rng, alphabet, b, b.max_hyper_depth);
}

inline Alphabet gen_alphabet(Rng& rng, const Bounds& b) {
    static const std::vector<Action> pool = {"a", "b", "c", "d"};
    size_t n = 1 + rng.below(std::min(b.max_alphabet, pool.size()));
    return Alphabet(std::vector<Action>(pool.begin(), pool.begin() + n));
}

inline LassoTrace gen_lasso(Rng& rng, const Alphabet& alphabet, const Bounds& b) {
    auto pick = [&] { return alphabet.actions()[rng.below(alphabet.size())]; };
    std::vector<Action> u, v;
    size_t ul = rng.below(b.max_prefix + 1);
    size_t vl = 1 + rng.below(b.max_loop);
    for (size_t i = 0; i < ul; ++i) u.push_back(pick());
    for (size_t i = 0; i < vl; ++i) v.push_back(pick());
    return LassoTrace(std::move(u), std::move(v));
}

inline TraceSuite gen_suite(Rng& rng, const Alphabet& alphabet, const Bounds& b) {
    size_t k = 1 + rng.below(b.max_k);
    std::vector<LassoTrace> ts;
    for (size_t i = 0; i < k; ++i) ts.push_back(gen_lasso(rng, alphabet, b));
    return TraceSuite(alphabet, std::move(ts));
}

// ---------------------------------------------------------------------------
// Differential fuzzing: run_suite vs the semantic oracle.
// ---------------------------------------------------------------------------

struct FuzzFailure {
    uint64_t case_seed;
    std::string kind; // "soundness" or "completeness"
    std::string formula;
    std::string suite;
    std::string verdict;
};

struct FuzzReport {
    size_t cases = 0;
    size_t soundness_violations = 0;
    size_t completeness_misses = 0;
    std::vector<FuzzFailure> failures;

    bool clean() const { return soundness_violations == 0 && completeness_misses == 0; }
};

inline uint64_t case_seed(uint64_t base_seed, uint64_t index) {
    // splitmix64 step keeps per-case streams independent of each other
    uint64_t z = base_seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct FuzzCase {
    Alphabet alphabet;
    HyperPtr formula;
    TraceSuite suite;
};

inline FuzzCase make_case(uint64_t seed, const Bounds& b) {
    Rng rng(seed);
    Alphabet alphabet = gen_alphabet(rng, b);
    HyperPtr f = gen_hyper(rng, alphabet, b);
    TraceSuite T = gen_suite(rng, alphabet, b);
    return {std::move(alphabet), std::move(f), std::move(T)};
}

inline FuzzReport fuzz(uint64_t seed, size_t cases, const Bounds& b = {}) {
    FuzzReport report;
    report.cases = cases;
    for (size_t i = 0; i < cases; ++i) {
        uint64_t cs = case_seed(seed, i);
        FuzzCase c = make_case(cs, b);
        Verdict verdict = run_suite(syn(c.formula, c.alphabet), c.suite);
        bool sat = oracle::eval_hyper(c.formula, c.suite);

        bool unsound = (verdict == Verdict::No && sat) || (verdict == Verdict::Yes && !sat);
        bool incomplete = !sat && verdict != Verdict::No;
        if (unsound) ++report.soundness_violations;
        if (incomplete) ++report.completeness_misses;
        if (unsound || incomplete) {
            report.failures.push_back({cs, unsound ? "soundness" : "completeness",
                                       print_hyper(c.formula), print_suite(c.suite),
                                       to_string(verdict)});
        }
    }
    return report;
}

} // namespace hypermon::gen
