#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypermon/errors.hpp"
#include "hypermon/syntax.hpp"
#include "hypermon/trace.hpp"

// Brute-force evaluator used as the test oracle. Deliberately shares no code
// with the monitor compiler: satisfaction is computed by greatest-fixpoint
// tabulation over (closure formula, lasso position) and violating prefixes by
// unrolling residual obligations, both local to this header.

namespace hypermon::oracle {

namespace detail {

// Fischer-Ladner style closure: subformulae, with max unfolded once.
class Closure {
public:
    explicit Closure(const ShmlPtr& f) { add(f); }

    size_t id_of(const ShmlPtr& f) const {
        auto it = index_.find(print_shml(f));
        if (it == index_.end()) throw error("formula not in closure");
        return it->second;
    }

    const std::vector<ShmlPtr>& formulas() const { return formulas_; }
    size_t size() const { return formulas_.size(); }

private:
    void add(const ShmlPtr& f) {
        std::string key = print_shml(f);
        if (index_.count(key)) return;
        index_.emplace(std::move(key), formulas_.size());
        formulas_.push_back(f);
        switch (f->kind) {
        case Shml::Kind::TT:
        case Shml::Kind::FF:
            break;
        case Shml::Kind::Box:
            add(f->left);
            break;
        case Shml::Kind::And:
            add(f->left);
            add(f->right);
            break;
        case Shml::Kind::Max:
            add(unfold(f));
            break;
        case Shml::Kind::Var:
            throw error("closure of an open formula");
        }
    }

    std::map<std::string, size_t> index_;
    std::vector<ShmlPtr> formulas_;
};

} // namespace detail

// Linear-time sHML satisfaction over the infinite trace denoted by a lasso.
// Greatest fixpoint: start from all-true and strike entries until the local
// consistency equations stabilize.
inline bool eval_shml(const ShmlPtr& f, const LassoTrace& t) {
    check_well_formed(f);
    detail::Closure cl(f);
    const size_t positions = t.fold_size();
    std::vector<std::vector<char>> table(cl.size(), std::vector<char>(positions, 1));

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t fi = 0; fi < cl.size(); ++fi) {
            const ShmlPtr& g = cl.formulas()[fi];
            for (size_t p = 0; p < positions; ++p) {
                if (!table[fi][p]) continue;
                bool val = true;
                switch (g->kind) {
                case Shml::Kind::TT: val = true; break;
                case Shml::Kind::FF: val = false; break;
                case Shml::Kind::Box:
                    val = t.at(p) != g->name ||
                          table[cl.id_of(g->left)][t.fold_next(p)];
                    break;
                case Shml::Kind::And:
                    val = table[cl.id_of(g->left)][p] &&
                          table[cl.id_of(g->right)][p];
                    break;
                case Shml::Kind::Max:
                    val = table[cl.id_of(unfold(g))][p];
                    break;
                case Shml::Kind::Var:
                    throw error("open formula in oracle table");
                }
                if (!val) {
                    table[fi][p] = 0;
                    changed = true;
                }
            }
        }
    }
    return table[cl.id_of(f)][0];
}

inline bool eval_shml(const ShmlPtr& f, const LassoTrace& t, const Alphabet& alphabet) {
    for (const auto& a : t.prefix)
        if (!alphabet.contains(a)) throw error("action not in alphabet: " + a);
    for (const auto& a : t.loop)
        if (!alphabet.contains(a)) throw error("action not in alphabet: " + a);
    return eval_shml(f, t);
}

inline bool eval_hyper(const HyperPtr& f, const TraceSuite& T) {
    switch (f->kind) {
    case Hyper::Kind::Exists:
        for (const auto& t : T.traces)
            if (eval_shml(f->body, t, T.alphabet)) return true;
        return false;
    case Hyper::Kind::Forall:
        for (const auto& t : T.traces)
            if (!eval_shml(f->body, t, T.alphabet)) return false;
        return true;
    case Hyper::Kind::Join:
        return eval_hyper(f->left, T) || eval_hyper(f->right, T);
    case Hyper::Kind::Meet:
        return eval_hyper(f->left, T) && eval_hyper(f->right, T);
    }
    throw error("unreachable");
}

namespace detail {

// Residual obligations after a finite prefix, kept as a deduplicated set of
// box formulae. Returns false via `violated` output when ff is forced.
inline void expand_obligation(const ShmlPtr& f, std::map<std::string, ShmlPtr>& boxes,
                              bool& violated) {
    switch (f->kind) {
    case Shml::Kind::TT:
        return;
    case Shml::Kind::FF:
        violated = true;
        return;
    case Shml::Kind::Box:
        boxes.emplace(print_shml(f), f);
        return;
    case Shml::Kind::And:
        expand_obligation(f->left, boxes, violated);
        expand_obligation(f->right, boxes, violated);
        return;
    case Shml::Kind::Max:
        expand_obligation(unfold(f), boxes, violated);
        return;
    case Shml::Kind::Var:
        throw error("open formula in obligation");
    }
}

} // namespace detail

// Length of the shortest prefix of t after which every infinite extension
// violates f; absent iff t satisfies f. Unrolls residual obligations up to
// |u| + |v| * closure-size, past which the residuals cycle.
inline std::optional<size_t> violation_prefix(const ShmlPtr& f, const LassoTrace& t) {
    check_well_formed(f);
    const size_t bound = t.prefix.size() + t.loop.size() * detail::Closure(f).size();

    std::map<std::string, ShmlPtr> boxes;
    bool violated = false;
    detail::expand_obligation(f, boxes, violated);
    if (violated) return 0;

    for (size_t n = 1; n <= bound; ++n) {
        const Action& a = t.at(n - 1);
        std::map<std::string, ShmlPtr> next;
        for (const auto& [key, g] : boxes) {
            if (g->name != a) continue; // box on another action: vacuously met
            detail::expand_obligation(g->left, next, violated);
            if (violated) return n;
        }
        boxes = std::move(next);
        if (boxes.empty()) return std::nullopt; // no obligations left, ever
    }
    return std::nullopt;
}

} // namespace hypermon::oracle
