#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hypermon/errors.hpp"

namespace hypermon {

using Action = std::string;

// Ordered action set. The order is fixed and used wherever a deterministic
// enumeration of actions is needed (transition tables, printed sums).
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Action> actions) : actions_(std::move(actions)) {
        if (actions_.empty())
            throw error("alphabet must contain at least one action");
        for (size_t i = 0; i < actions_.size(); ++i) {
            if (!index_.emplace(actions_[i], i).second)
                throw error("duplicate action in alphabet: " + actions_[i]);
        }
    }

    bool contains(const Action& a) const { return index_.count(a) != 0; }
    size_t index_of(const Action& a) const {
        auto it = index_.find(a);
        if (it == index_.end()) throw error("unknown action: " + a);
        return it->second;
    }
    size_t size() const { return actions_.size(); }
    const std::vector<Action>& actions() const { return actions_; }

    bool operator==(const Alphabet& o) const { return actions_ == o.actions_; }

private:
    std::vector<Action> actions_;
    std::map<Action, size_t> index_;
};

// ---------------------------------------------------------------------------
// sHML formulae: tt | ff | [a]psi | psi & psi | max x.psi | x
// ---------------------------------------------------------------------------

struct Shml;
using ShmlPtr = std::shared_ptr<const Shml>;

struct Shml {
    enum class Kind { TT, FF, Box, And, Max, Var };

    Kind kind;
    std::string name;   // Box: action; Max/Var: recursion variable
    ShmlPtr left;       // Box/Max: body; And: left conjunct
    ShmlPtr right;      // And: right conjunct
};

namespace shml {

inline ShmlPtr tt() {
    static const ShmlPtr v = std::make_shared<Shml>(Shml{Shml::Kind::TT, {}, nullptr, nullptr});
    return v;
}
inline ShmlPtr ff() {
    static const ShmlPtr v = std::make_shared<Shml>(Shml{Shml::Kind::FF, {}, nullptr, nullptr});
    return v;
}
inline ShmlPtr box(Action a, ShmlPtr body) {
    return std::make_shared<Shml>(Shml{Shml::Kind::Box, std::move(a), std::move(body), nullptr});
}
inline ShmlPtr conj(ShmlPtr l, ShmlPtr r) {
    return std::make_shared<Shml>(Shml{Shml::Kind::And, {}, std::move(l), std::move(r)});
}
inline ShmlPtr max(std::string var, ShmlPtr body) {
    return std::make_shared<Shml>(Shml{Shml::Kind::Max, std::move(var), std::move(body), nullptr});
}
inline ShmlPtr var(std::string name) {
    return std::make_shared<Shml>(Shml{Shml::Kind::Var, std::move(name), nullptr, nullptr});
}

} // namespace shml

inline int compare(const ShmlPtr& a, const ShmlPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (int c = a->name.compare(b->name); c != 0) return c < 0 ? -1 : 1;
    if (a->left || b->left) {
        if (!a->left) return -1;
        if (!b->left) return 1;
        if (int c = compare(a->left, b->left); c != 0) return c;
    }
    if (a->right || b->right) {
        if (!a->right) return -1;
        if (!b->right) return 1;
        if (int c = compare(a->right, b->right); c != 0) return c;
    }
    return 0;
}

inline bool equal(const ShmlPtr& a, const ShmlPtr& b) { return compare(a, b) == 0; }

// Substitutes `replacement` for free occurrences of recursion variable `var`.
// Replacements are closed formulae, so no capture can occur; an inner binder
// of the same name shadows as usual.
inline ShmlPtr substitute(const ShmlPtr& f, const std::string& var, const ShmlPtr& replacement) {
    switch (f->kind) {
    case Shml::Kind::TT:
    case Shml::Kind::FF:
        return f;
    case Shml::Kind::Var:
        return f->name == var ? replacement : f;
    case Shml::Kind::Box:
        return shml::box(f->name, substitute(f->left, var, replacement));
    case Shml::Kind::And:
        return shml::conj(substitute(f->left, var, replacement),
                          substitute(f->right, var, replacement));
    case Shml::Kind::Max:
        if (f->name == var) return f;
        return shml::max(f->name, substitute(f->left, var, replacement));
    }
    throw error("unreachable");
}

inline ShmlPtr unfold(const ShmlPtr& f) {
    if (f->kind != Shml::Kind::Max) throw error("unfold expects a max formula");
    return substitute(f->left, f->name, f);
}

namespace detail {

inline void collect_free_vars(const ShmlPtr& f, std::set<std::string>& bound,
                              std::set<std::string>& free) {
    switch (f->kind) {
    case Shml::Kind::TT:
    case Shml::Kind::FF:
        return;
    case Shml::Kind::Var:
        if (!bound.count(f->name)) free.insert(f->name);
        return;
    case Shml::Kind::Box:
        collect_free_vars(f->left, bound, free);
        return;
    case Shml::Kind::And:
        collect_free_vars(f->left, bound, free);
        collect_free_vars(f->right, bound, free);
        return;
    case Shml::Kind::Max: {
        bool inserted = bound.insert(f->name).second;
        collect_free_vars(f->left, bound, free);
        if (inserted) bound.erase(f->name);
        return;
    }
    }
}

// Finds a variable used without an intervening box under its binder, if any.
// `unguarded` holds the binders for which no box has been crossed yet.
inline std::optional<std::string> find_unguarded(const ShmlPtr& f,
                                                 std::set<std::string> unguarded) {
    switch (f->kind) {
    case Shml::Kind::TT:
    case Shml::Kind::FF:
        return std::nullopt;
    case Shml::Kind::Var:
        if (unguarded.count(f->name)) return f->name;
        return std::nullopt;
    case Shml::Kind::Box:
        return find_unguarded(f->left, {});
    case Shml::Kind::And:
        if (auto v = find_unguarded(f->left, unguarded)) return v;
        return find_unguarded(f->right, unguarded);
    case Shml::Kind::Max: {
        unguarded.insert(f->name);
        return find_unguarded(f->left, std::move(unguarded));
    }
    }
    return std::nullopt;
}

} // namespace detail

inline std::set<std::string> free_vars(const ShmlPtr& f) {
    std::set<std::string> bound, free;
    detail::collect_free_vars(f, bound, free);
    return free;
}

inline bool is_closed(const ShmlPtr& f) { return free_vars(f).empty(); }

inline std::optional<std::string> unguarded_variable(const ShmlPtr& f) {
    return detail::find_unguarded(f, {});
}

inline bool is_guarded(const ShmlPtr& f) { return !unguarded_variable(f).has_value(); }

// Throws unless f is closed and every recursion variable is guarded by a box.
inline void check_well_formed(const ShmlPtr& f) {
    auto free = free_vars(f);
    if (!free.empty())
        throw error("unbound recursion variable: " + *free.begin());
    if (auto v = unguarded_variable(f))
        throw error("unguarded recursion variable: " + *v);
}

// ---------------------------------------------------------------------------
// Hyper layer: E p.psi | A p.psi | phi \/ phi | phi /\ phi
// ---------------------------------------------------------------------------

struct Hyper;
using HyperPtr = std::shared_ptr<const Hyper>;

struct Hyper {
    enum class Kind { Exists, Forall, Join, Meet };

    Kind kind;
    std::string trace_var; // quantifiers only; retained for printing
    ShmlPtr body;          // quantifiers only
    HyperPtr left;
    HyperPtr right;
};

namespace hyper {

inline HyperPtr exists(std::string var, ShmlPtr body) {
    return std::make_shared<Hyper>(
        Hyper{Hyper::Kind::Exists, std::move(var), std::move(body), nullptr, nullptr});
}
inline HyperPtr forall(std::string var, ShmlPtr body) {
    return std::make_shared<Hyper>(
        Hyper{Hyper::Kind::Forall, std::move(var), std::move(body), nullptr, nullptr});
}
inline HyperPtr join(HyperPtr l, HyperPtr r) {
    return std::make_shared<Hyper>(
        Hyper{Hyper::Kind::Join, {}, nullptr, std::move(l), std::move(r)});
}
inline HyperPtr meet(HyperPtr l, HyperPtr r) {
    return std::make_shared<Hyper>(
        Hyper{Hyper::Kind::Meet, {}, nullptr, std::move(l), std::move(r)});
}

} // namespace hyper

inline int compare(const HyperPtr& a, const HyperPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (int c = a->trace_var.compare(b->trace_var); c != 0) return c < 0 ? -1 : 1;
    if (a->body || b->body) {
        if (!a->body) return -1;
        if (!b->body) return 1;
        if (int c = compare(a->body, b->body); c != 0) return c;
    }
    if (a->left) {
        if (int c = compare(a->left, b->left); c != 0) return c;
        if (int c = compare(a->right, b->right); c != 0) return c;
    }
    return 0;
}

inline bool equal(const HyperPtr& a, const HyperPtr& b) { return compare(a, b) == 0; }

// ---------------------------------------------------------------------------
// Printing. parse(print(f)) == f for well-formed ASTs; parentheses are
// inserted only where the grammar demands them.
// ---------------------------------------------------------------------------

namespace detail {

inline void print_conj(const ShmlPtr& f, std::string& out);

inline void print_unit(const ShmlPtr& f, std::string& out) {
    switch (f->kind) {
    case Shml::Kind::TT: out += "tt"; return;
    case Shml::Kind::FF: out += "ff"; return;
    case Shml::Kind::Var: out += f->name; return;
    case Shml::Kind::Box:
        out += '[';
        out += f->name;
        out += ']';
        if (f->left->kind == Shml::Kind::Max) out += ' ';
        print_unit(f->left, out);
        return;
    case Shml::Kind::Max:
        out += "max ";
        out += f->name;
        out += '.';
        print_unit(f->left, out);
        return;
    case Shml::Kind::And:
        out += '(';
        print_conj(f, out);
        out += ')';
        return;
    }
}

inline void print_conj(const ShmlPtr& f, std::string& out) {
    if (f->kind == Shml::Kind::And) {
        print_conj(f->left, out);
        out += " & ";
        print_unit(f->right, out);
    } else {
        print_unit(f, out);
    }
}

} // namespace detail

inline std::string print_shml(const ShmlPtr& f) {
    std::string out;
    detail::print_conj(f, out);
    return out;
}

namespace detail {

inline void print_hyper_meet(const HyperPtr& f, std::string& out);

inline void print_hyper_atom(const HyperPtr& f, std::string& out) {
    switch (f->kind) {
    case Hyper::Kind::Forall:
    case Hyper::Kind::Exists:
        out += (f->kind == Hyper::Kind::Forall) ? 'A' : 'E';
        out += ' ';
        out += f->trace_var;
        out += ". ";
        print_conj(f->body, out);
        return;
    default:
        out += '(';
        print_hyper_meet(f, out);
        out += ')';
        return;
    }
}

inline void print_hyper_join(const HyperPtr& f, std::string& out) {
    if (f->kind == Hyper::Kind::Join) {
        print_hyper_join(f->left, out);
        out += " \\/ ";
        print_hyper_atom(f->right, out);
    } else {
        print_hyper_atom(f, out);
    }
}

inline void print_hyper_meet(const HyperPtr& f, std::string& out) {
    if (f->kind == Hyper::Kind::Meet) {
        print_hyper_meet(f->left, out);
        out += " /\\ ";
        print_hyper_join(f->right, out);
    } else {
        print_hyper_join(f, out);
    }
}

} // namespace detail

inline std::string print_hyper(const HyperPtr& f) {
    std::string out;
    detail::print_hyper_meet(f, out);
    return out;
}

} // namespace hypermon
