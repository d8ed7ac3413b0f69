#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypermon/errors.hpp"
#include "hypermon/monitor.hpp"
#include "hypermon/syntax.hpp"

namespace hypermon {

enum class GateKind { And, Or, BigAnd, BigOr };

inline bool is_or_kind(GateKind k) { return k == GateKind::Or || k == GateKind::BigOr; }
inline bool is_quantifier(GateKind k) { return k == GateKind::BigAnd || k == GateKind::BigOr; }

// Gate tree in preorder; gate 0 is the root. Quantifier gates hold one
// monitor automaton that is replicated across the k traces when the circuit
// is instrumented; k is not part of the tree.
struct CircuitMonitor {
    struct Gate {
        GateKind kind;
        int left = -1;    // binary gates
        int right = -1;
        int monitor = -1; // quantifier gates: index into monitors
        int parent = -1;
        int slot = 0;     // 1-based sub-index within the parent
    };

    std::vector<Gate> gates;
    std::vector<MonitorAutomaton> monitors;

    size_t depth() const { return depth_of(0); }

    size_t depth_of(size_t g) const {
        const Gate& gate = gates[g];
        if (is_quantifier(gate.kind)) return 1;
        return 1 + std::max(depth_of(gate.left), depth_of(gate.right));
    }

    size_t max_monitor_states() const {
        size_t s = 1;
        for (const auto& m : monitors) s = std::max(s, m.states.size());
        return s;
    }
};

namespace detail {

inline int build_circuit(const HyperPtr& f, const Alphabet& alphabet, CircuitMonitor& c,
                         int parent, int slot, size_t state_cap) {
    int id = static_cast<int>(c.gates.size());
    c.gates.push_back({});
    c.gates[id].parent = parent;
    c.gates[id].slot = slot;
    switch (f->kind) {
    case Hyper::Kind::Exists:
    case Hyper::Kind::Forall:
        c.gates[id].kind = f->kind == Hyper::Kind::Exists ? GateKind::BigOr : GateKind::BigAnd;
        c.gates[id].monitor = static_cast<int>(c.monitors.size());
        c.monitors.push_back(compile(f->body, alphabet, state_cap));
        break;
    case Hyper::Kind::Join:
    case Hyper::Kind::Meet: {
        c.gates[id].kind = f->kind == Hyper::Kind::Join ? GateKind::Or : GateKind::And;
        int l = build_circuit(f->left, alphabet, c, id, 1, state_cap);
        int r = build_circuit(f->right, alphabet, c, id, 2, state_cap);
        c.gates[id].left = l;
        c.gates[id].right = r;
        break;
    }
    }
    return id;
}

} // namespace detail

// Circuit synthesis: quantifiers become k-ary gates over one compiled
// monitor, top-level connectives become binary gates. Mirrors the formula
// tree exactly.
inline CircuitMonitor syn(const HyperPtr& f, const Alphabet& alphabet,
                          size_t state_cap = kDefaultStateCap) {
    CircuitMonitor c;
    detail::build_circuit(f, alphabet, c, -1, 0, state_cap);
    return c;
}

// ---------------------------------------------------------------------------
// Configurations: per-gate verdict or pending bit-vector with end flag.
// ---------------------------------------------------------------------------

struct GateValue {
    std::optional<Verdict> decided;
    std::vector<char> bits; // bit i: sub-gate i+1 has not yet produced a verdict
    bool end_flag = false;

    bool pending() const { return !decided.has_value(); }
    bool all_cleared() const {
        for (char b : bits)
            if (b) return false;
        return true;
    }

    // Decided gates compare by verdict alone: the residual bits of a
    // short-circuited gate are dead state.
    bool operator==(const GateValue& o) const {
        if (decided.has_value() != o.decided.has_value()) return false;
        if (decided) return *decided == *o.decided;
        return bits == o.bits && end_flag == o.end_flag;
    }
};

struct Configuration {
    std::vector<GateValue> values;

    bool operator==(const Configuration& o) const { return values == o.values; }
};

inline Configuration init_configuration(const CircuitMonitor& c, size_t k) {
    if (k == 0) throw error("suite size k must be at least 1");
    Configuration s;
    s.values.resize(c.gates.size());
    for (size_t g = 0; g < c.gates.size(); ++g) {
        size_t fan_in = is_quantifier(c.gates[g].kind) ? k : 2;
        s.values[g].bits.assign(fan_in, 1);
    }
    return s;
}

// Records a newly decided verdict of sub-gate `sub_index` (1-based) at gate g.
// Or-kind: yes decides the gate, no clears the bit, end clears and sets the
// end flag; and-kind dually. No-op on already decided gates. Returns whether
// the configuration changed.
inline bool apply_verdict(Configuration& s, const CircuitMonitor& c, size_t g,
                          size_t sub_index, Verdict v) {
    GateValue& val = s.values[g];
    if (sub_index == 0 || sub_index > val.bits.size())
        throw error("sub-gate index out of range: " + std::to_string(sub_index));
    if (val.decided) return false;

    const bool or_kind = is_or_kind(c.gates[g].kind);
    const Verdict short_circuit = or_kind ? Verdict::Yes : Verdict::No;
    if (v == short_circuit) {
        val.decided = v;
        return true;
    }
    bool changed = false;
    if (val.bits[sub_index - 1]) {
        val.bits[sub_index - 1] = 0;
        changed = true;
    }
    if (v == Verdict::End && !val.end_flag) {
        val.end_flag = true;
        changed = true;
    }
    return changed;
}

// Runs the gate-evaluation rules to quiescence: a pending gate whose bits are
// all cleared resolves (or-kind to no, and-kind to yes, either to end when
// the end flag is set), and every decided gate's verdict is pushed to its
// parent.
inline void reduce(Configuration& s, const CircuitMonitor& c) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t g = 0; g < c.gates.size(); ++g) {
            GateValue& val = s.values[g];
            if (val.pending() && val.all_cleared()) {
                if (val.end_flag)
                    val.decided = Verdict::End;
                else
                    val.decided = is_or_kind(c.gates[g].kind) ? Verdict::No : Verdict::Yes;
                changed = true;
            }
            if (val.decided && c.gates[g].parent >= 0) {
                changed |= apply_verdict(s, c, static_cast<size_t>(c.gates[g].parent),
                                         static_cast<size_t>(c.gates[g].slot), *val.decided);
            }
        }
    }
}

inline std::optional<Verdict> root_verdict(const Configuration& s) {
    return s.values.at(0).decided;
}

// ---------------------------------------------------------------------------
// Stats and dumps.
// ---------------------------------------------------------------------------

struct CircuitStats {
    size_t depth = 0;
    size_t gate_count = 0;
    size_t max_fan_in = 0;
    std::vector<size_t> monitor_states; // per quantifier gate, preorder
};

inline CircuitStats circuit_stats(const CircuitMonitor& c, size_t k) {
    CircuitStats st;
    st.depth = c.depth();
    st.gate_count = c.gates.size();
    // fan-in of the circuit family: k at quantifier gates, 2 at binary gates
    st.max_fan_in = std::max<size_t>(k, 2);
    for (const auto& g : c.gates)
        if (is_quantifier(g.kind))
            st.monitor_states.push_back(c.monitors[g.monitor].states.size());
    return st;
}

namespace detail {

inline void dump_gate(const CircuitMonitor& c, size_t g, std::optional<size_t> k,
                      size_t indent, std::string& out) {
    out.append(indent, ' ');
    const auto& gate = c.gates[g];
    switch (gate.kind) {
    case GateKind::And: out += "AND\n"; break;
    case GateKind::Or: out += "OR\n"; break;
    case GateKind::BigAnd:
    case GateKind::BigOr:
        out += gate.kind == GateKind::BigAnd ? "BIGAND" : "BIGOR";
        if (k) out += " k=" + std::to_string(*k);
        out += " monitor=" + print_term(c.monitors[gate.monitor]) + '\n';
        return;
    }
    dump_gate(c, gate.left, k, indent + 2, out);
    dump_gate(c, gate.right, k, indent + 2, out);
}

} // namespace detail

inline std::string dump_circuit(const CircuitMonitor& c, std::optional<size_t> k = std::nullopt) {
    std::string out;
    detail::dump_gate(c, 0, k, 0, out);
    return out;
}

inline std::string dump_configuration(const Configuration& s) {
    std::string out;
    for (size_t g = 0; g < s.values.size(); ++g) {
        out += std::to_string(g) + ": ";
        const GateValue& v = s.values[g];
        if (v.decided) {
            out += to_string(*v.decided);
        } else {
            out += "bits=";
            for (char b : v.bits) out += b ? '1' : '0';
            out += " end=";
            out += v.end_flag ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

} // namespace hypermon
