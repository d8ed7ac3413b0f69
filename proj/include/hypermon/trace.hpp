#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypermon/errors.hpp"
#include "hypermon/syntax.hpp"

namespace hypermon {

// Finite representation u.v^w of an ultimately periodic infinite trace.
struct LassoTrace {
    std::vector<Action> prefix; // u, possibly empty
    std::vector<Action> loop;   // v, never empty

    LassoTrace(std::vector<Action> u, std::vector<Action> v)
        : prefix(std::move(u)), loop(std::move(v)) {
        if (loop.empty()) throw error("lasso loop must not be empty");
    }

    // Action at position i of the denoted infinite trace.
    const Action& at(size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return loop[(i - prefix.size()) % loop.size()];
    }

    // Number of distinct positions in the folded representation.
    size_t fold_size() const { return prefix.size() + loop.size(); }

    // Successor position within the folded representation.
    size_t fold_next(size_t i) const {
        return i + 1 < fold_size() ? i + 1 : prefix.size();
    }

    bool operator==(const LassoTrace& o) const {
        return prefix == o.prefix && loop == o.loop;
    }
};

struct TraceSuite {
    Alphabet alphabet;
    std::vector<LassoTrace> traces; // index i (1-based in the interface) is stable

    TraceSuite(Alphabet alpha, std::vector<LassoTrace> ts)
        : alphabet(std::move(alpha)), traces(std::move(ts)) {
        if (traces.empty()) throw error("trace suite must contain at least one trace");
        for (const auto& t : traces) {
            for (const auto& a : t.prefix)
                if (!alphabet.contains(a)) throw error("action not in alphabet: " + a);
            for (const auto& a : t.loop)
                if (!alphabet.contains(a)) throw error("action not in alphabet: " + a);
        }
    }

    size_t size() const { return traces.size(); }
};

inline std::string print_lasso(const LassoTrace& t) {
    std::string out = "trace";
    for (const auto& a : t.prefix) { out += ' '; out += a; }
    out += " |";
    for (const auto& a : t.loop) { out += ' '; out += a; }
    return out;
}

inline std::string print_suite(const TraceSuite& s) {
    std::string out = "alphabet";
    for (const auto& a : s.alphabet.actions()) { out += ' '; out += a; }
    out += '\n';
    for (const auto& t : s.traces) { out += print_lasso(t); out += '\n'; }
    return out;
}

} // namespace hypermon
