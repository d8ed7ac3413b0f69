#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypermon/errors.hpp"
#include "hypermon/syntax.hpp"

namespace hypermon {

enum class Verdict { Yes, No, End };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::End: return "end";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// ACI normalization: conjunctions become canonically ordered duplicate-free
// sets, tt units are dropped, ff absorbs. Keeps the derivative closure finite.
// ---------------------------------------------------------------------------

namespace detail {

inline void flatten_conjuncts(const ShmlPtr& f, std::vector<ShmlPtr>& out, bool& has_ff);
inline ShmlPtr normalize_rec(const ShmlPtr& f);

inline void flatten_conjuncts(const ShmlPtr& f, std::vector<ShmlPtr>& out, bool& has_ff) {
    if (f->kind == Shml::Kind::And) {
        flatten_conjuncts(f->left, out, has_ff);
        flatten_conjuncts(f->right, out, has_ff);
        return;
    }
    ShmlPtr n = normalize_rec(f);
    if (n->kind == Shml::Kind::TT) return;
    if (n->kind == Shml::Kind::FF) { has_ff = true; return; }
    out.push_back(std::move(n));
}

inline ShmlPtr normalize_rec(const ShmlPtr& f) {
    switch (f->kind) {
    case Shml::Kind::TT:
    case Shml::Kind::FF:
    case Shml::Kind::Var:
        return f;
    case Shml::Kind::Box:
        return shml::box(f->name, normalize_rec(f->left));
    case Shml::Kind::Max: {
        ShmlPtr body = normalize_rec(f->left);
        if (body->kind == Shml::Kind::TT) return shml::tt();
        if (body->kind == Shml::Kind::FF) return shml::ff();
        return shml::max(f->name, body);
    }
    case Shml::Kind::And: {
        std::vector<ShmlPtr> parts;
        bool has_ff = false;
        flatten_conjuncts(f, parts, has_ff);
        if (has_ff) return shml::ff();
        std::sort(parts.begin(), parts.end(),
                  [](const ShmlPtr& a, const ShmlPtr& b) { return compare(a, b) < 0; });
        parts.erase(std::unique(parts.begin(), parts.end(),
                                [](const ShmlPtr& a, const ShmlPtr& b) { return equal(a, b); }),
                    parts.end());
        if (parts.empty()) return shml::tt();
        ShmlPtr acc = parts.front();
        for (size_t i = 1; i < parts.size(); ++i) acc = shml::conj(acc, parts[i]);
        return acc;
    }
    }
    throw error("unreachable");
}

} // namespace detail

inline ShmlPtr normalize(const ShmlPtr& f) { return detail::normalize_rec(f); }

// One-event residual: g such that f holds of a.t iff g holds of t.
inline ShmlPtr derivative(const ShmlPtr& f, const Action& a) {
    switch (f->kind) {
    case Shml::Kind::TT: return shml::tt();
    case Shml::Kind::FF: return shml::ff();
    case Shml::Kind::Box:
        return f->name == a ? f->left : shml::tt();
    case Shml::Kind::And:
        return normalize(shml::conj(derivative(f->left, a), derivative(f->right, a)));
    case Shml::Kind::Max:
        // guardedness puts every substituted occurrence under a box
        return derivative(unfold(f), a);
    case Shml::Kind::Var:
        throw error("derivative of an open formula");
    }
    throw error("unreachable");
}

// ---------------------------------------------------------------------------
// Deterministic monitor automaton over the derivative closure.
// ---------------------------------------------------------------------------

struct MonitorAutomaton {
    struct State {
        ShmlPtr formula;                  // normalized residual this state stands for
        std::vector<size_t> next;         // indexed by alphabet order
        std::optional<Verdict> verdict;   // yes/no only; end is a stream-level event
    };

    Alphabet alphabet;
    std::vector<State> states;
    size_t initial = 0;

    size_t step(size_t state, const Action& a) const {
        return states[state].next[alphabet.index_of(a)];
    }
};

inline constexpr size_t kDefaultStateCap = 100000;

inline MonitorAutomaton compile(const ShmlPtr& f, const Alphabet& alphabet,
                                size_t state_cap = kDefaultStateCap) {
    check_well_formed(f);

    MonitorAutomaton m;
    m.alphabet = alphabet;

    std::map<std::string, size_t> ids;
    std::deque<size_t> work;
    auto intern = [&](const ShmlPtr& g) {
        std::string key = print_shml(g);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        if (m.states.size() >= state_cap)
            throw error("monitor state cap exceeded (" + std::to_string(state_cap) + " states)");
        size_t id = m.states.size();
        ids.emplace(std::move(key), id);
        m.states.push_back({g, {}, std::nullopt});
        work.push_back(id);
        return id;
    };

    m.initial = intern(normalize(f));
    while (!work.empty()) {
        size_t id = work.front();
        work.pop_front();
        ShmlPtr g = m.states[id].formula;
        std::vector<size_t> next;
        next.reserve(alphabet.size());
        for (const auto& a : alphabet.actions())
            next.push_back(intern(normalize(derivative(g, a))));
        m.states[id].next = std::move(next);
    }

    // Rejection states, then backward reachability to find every state that
    // can still be refuted; the rest are promoted to yes.
    std::vector<char> can_reach_no(m.states.size(), 0);
    std::deque<size_t> frontier;
    for (size_t i = 0; i < m.states.size(); ++i) {
        if (m.states[i].formula->kind == Shml::Kind::FF) {
            m.states[i].verdict = Verdict::No;
            can_reach_no[i] = 1;
            frontier.push_back(i);
        }
    }
    std::vector<std::vector<size_t>> preds(m.states.size());
    for (size_t i = 0; i < m.states.size(); ++i)
        for (size_t t : m.states[i].next) preds[t].push_back(i);
    while (!frontier.empty()) {
        size_t s = frontier.front();
        frontier.pop_front();
        for (size_t p : preds[s]) {
            if (!can_reach_no[p]) {
                can_reach_no[p] = 1;
                frontier.push_back(p);
            }
        }
    }
    for (size_t i = 0; i < m.states.size(); ++i)
        if (!can_reach_no[i]) m.states[i].verdict = Verdict::Yes;

    // verdict states are sinks
    for (size_t i = 0; i < m.states.size(); ++i)
        if (m.states[i].verdict)
            for (auto& t : m.states[i].next) t = i;

    return m;
}

// ---------------------------------------------------------------------------
// Printable image of an automaton in the regular-monitor grammar
// yes | no | end | a.m | m + n | rec x.m | x.
// ---------------------------------------------------------------------------

struct MonitorTerm;
using MonitorTermPtr = std::shared_ptr<const MonitorTerm>;

struct MonitorTerm {
    enum class Kind { Yes, No, End, Prefix, Sum, Rec, Var };

    Kind kind;
    std::string name; // Prefix: action; Rec/Var: variable
    MonitorTermPtr left;
    MonitorTermPtr right;
};

namespace term {

inline MonitorTermPtr yes() {
    return std::make_shared<MonitorTerm>(MonitorTerm{MonitorTerm::Kind::Yes, {}, nullptr, nullptr});
}
inline MonitorTermPtr no() {
    return std::make_shared<MonitorTerm>(MonitorTerm{MonitorTerm::Kind::No, {}, nullptr, nullptr});
}
inline MonitorTermPtr end() {
    return std::make_shared<MonitorTerm>(MonitorTerm{MonitorTerm::Kind::End, {}, nullptr, nullptr});
}
inline MonitorTermPtr prefix(Action a, MonitorTermPtr m) {
    return std::make_shared<MonitorTerm>(
        MonitorTerm{MonitorTerm::Kind::Prefix, std::move(a), std::move(m), nullptr});
}
inline MonitorTermPtr sum(MonitorTermPtr l, MonitorTermPtr r) {
    return std::make_shared<MonitorTerm>(
        MonitorTerm{MonitorTerm::Kind::Sum, {}, std::move(l), std::move(r)});
}
inline MonitorTermPtr rec(std::string x, MonitorTermPtr m) {
    return std::make_shared<MonitorTerm>(
        MonitorTerm{MonitorTerm::Kind::Rec, std::move(x), std::move(m), nullptr});
}
inline MonitorTermPtr var(std::string x) {
    return std::make_shared<MonitorTerm>(
        MonitorTerm{MonitorTerm::Kind::Var, std::move(x), nullptr, nullptr});
}

} // namespace term

namespace detail {

inline std::string rec_var_name(size_t n) {
    static const char* base[] = {"x", "y", "z", "w"};
    if (n < 4) return base[n];
    return "x" + std::to_string(n - 3);
}

struct TermBuilder {
    const MonitorAutomaton& m;
    std::vector<char> on_stack;
    std::vector<char> needs_rec;
    std::map<size_t, std::string> var_of;

    explicit TermBuilder(const MonitorAutomaton& a)
        : m(a), on_stack(a.states.size(), 0), needs_rec(a.states.size(), 0) {}

    MonitorTermPtr build(size_t s) {
        const auto& st = m.states[s];
        if (st.verdict)
            return *st.verdict == Verdict::Yes ? term::yes() : term::no();
        if (on_stack[s]) {
            needs_rec[s] = 1;
            if (!var_of.count(s)) var_of.emplace(s, rec_var_name(var_of.size()));
            return term::var(var_of[s]);
        }
        on_stack[s] = 1;
        MonitorTermPtr acc;
        for (size_t ai = 0; ai < m.alphabet.size(); ++ai) {
            MonitorTermPtr branch = term::prefix(m.alphabet.actions()[ai], build(st.next[ai]));
            acc = acc ? term::sum(acc, branch) : branch;
        }
        on_stack[s] = 0;
        if (needs_rec[s]) acc = term::rec(var_of[s], acc);
        return acc;
    }
};

inline void print_term_rec(const MonitorTermPtr& t, std::string& out) {
    switch (t->kind) {
    case MonitorTerm::Kind::Yes: out += "yes"; return;
    case MonitorTerm::Kind::No: out += "no"; return;
    case MonitorTerm::Kind::End: out += "end"; return;
    case MonitorTerm::Kind::Var: out += t->name; return;
    case MonitorTerm::Kind::Prefix: {
        out += t->name;
        out += '.';
        bool parens = t->left->kind == MonitorTerm::Kind::Sum ||
                      t->left->kind == MonitorTerm::Kind::Rec;
        if (parens) out += '(';
        print_term_rec(t->left, out);
        if (parens) out += ')';
        return;
    }
    case MonitorTerm::Kind::Sum:
        print_term_rec(t->left, out);
        out += " + ";
        if (t->right->kind == MonitorTerm::Kind::Sum) {
            out += '(';
            print_term_rec(t->right, out);
            out += ')';
        } else {
            print_term_rec(t->right, out);
        }
        return;
    case MonitorTerm::Kind::Rec: {
        out += "rec ";
        out += t->name;
        out += '.';
        bool parens = t->left->kind == MonitorTerm::Kind::Sum;
        if (parens) out += '(';
        print_term_rec(t->left, out);
        if (parens) out += ')';
        return;
    }
    }
}

} // namespace detail

// Closed guarded term whose LTS matches the automaton; rec binders are placed
// at loop cut-points, sums follow the alphabet order.
inline MonitorTermPtr to_term(const MonitorAutomaton& m) {
    return detail::TermBuilder(m).build(m.initial);
}

inline std::string print_term(const MonitorTermPtr& t) {
    std::string out;
    detail::print_term_rec(t, out);
    return out;
}

inline std::string print_term(const MonitorAutomaton& m) { return print_term(to_term(m)); }

inline std::string dump_automaton(const MonitorAutomaton& m) {
    std::string out;
    for (size_t i = 0; i < m.states.size(); ++i) {
        out += "state " + std::to_string(i);
        if (m.states[i].verdict) out += " " + to_string(*m.states[i].verdict);
        out += '\n';
    }
    for (size_t i = 0; i < m.states.size(); ++i)
        for (size_t ai = 0; ai < m.alphabet.size(); ++ai)
            out += std::to_string(i) + " -" + m.alphabet.actions()[ai] + "-> " +
                   std::to_string(m.states[i].next[ai]) + '\n';
    return out;
}

} // namespace hypermon
