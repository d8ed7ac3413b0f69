#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hypermon/circuit.hpp"
#include "hypermon/errors.hpp"
#include "hypermon/trace.hpp"

namespace hypermon {

// A circuit instrumented over k traces: one monitor lane per (quantifier
// gate, trace). Lanes on the same trace advance synchronously, one step per
// incoming event; a lane applies its verdict to its gate exactly once.
class RunState {
public:
    RunState(CircuitMonitor circuit, size_t k, Alphabet alphabet)
        : circuit_(std::move(circuit)), alphabet_(std::move(alphabet)), k_(k),
          config_(init_configuration(circuit_, k)),
          closed_(k, 0), cursors_(k, 0) {
        for (size_t g = 0; g < circuit_.gates.size(); ++g)
            if (is_quantifier(circuit_.gates[g].kind)) quant_gates_.push_back(g);
        lane_state_.resize(quant_gates_.size());
        lane_done_.resize(quant_gates_.size());
        for (size_t q = 0; q < quant_gates_.size(); ++q) {
            const MonitorAutomaton& m = automaton(q);
            lane_state_[q].assign(k, m.initial);
            lane_done_[q].assign(k, 0);
            // monitors whose initial state already holds a verdict flush it now
            if (m.states[m.initial].verdict) {
                for (size_t t = 0; t < k; ++t) {
                    apply_verdict(config_, circuit_, quant_gates_[q], t + 1,
                                  *m.states[m.initial].verdict);
                    lane_done_[q][t] = 1;
                }
            }
        }
        reduce(config_, circuit_);
    }

    // One event on trace `trace_index` (1-based): every lane on that trace
    // steps once, newly decided lanes write their verdict to their gate, and
    // the configuration is reduced. Returns the root verdict if decided.
    std::optional<Verdict> feed(size_t trace_index, const Action& a) {
        size_t t = check_trace(trace_index);
        if (!alphabet_.contains(a)) throw error("unknown action: " + a);
        if (closed_[t]) throw error("trace " + std::to_string(trace_index) + " is closed");
        for (size_t q = 0; q < quant_gates_.size(); ++q) {
            if (lane_done_[q][t]) continue; // verdict sink, self-loops
            const MonitorAutomaton& m = automaton(q);
            size_t next = m.step(lane_state_[q][t], a);
            lane_state_[q][t] = next;
            if (m.states[next].verdict) {
                apply_verdict(config_, circuit_, quant_gates_[q], trace_index,
                              *m.states[next].verdict);
                lane_done_[q][t] = 1;
            }
        }
        ++cursors_[t];
        reduce(config_, circuit_);
        return root_verdict(config_);
    }

    // End of stream on a trace: every still-undecided lane emits end.
    std::optional<Verdict> close_trace(size_t trace_index) {
        size_t t = check_trace(trace_index);
        if (!closed_[t]) {
            closed_[t] = 1;
            for (size_t q = 0; q < quant_gates_.size(); ++q) {
                if (lane_done_[q][t]) continue;
                apply_verdict(config_, circuit_, quant_gates_[q], trace_index, Verdict::End);
                lane_done_[q][t] = 1;
            }
            reduce(config_, circuit_);
        }
        return root_verdict(config_);
    }

    const Configuration& configuration() const { return config_; }
    const CircuitMonitor& circuit() const { return circuit_; }
    const Alphabet& alphabet() const { return alphabet_; }
    size_t trace_count() const { return k_; }
    size_t lane_count() const { return quant_gates_.size() * k_; }
    size_t events_consumed(size_t trace_index) const { return cursors_.at(trace_index - 1); }
    bool is_closed(size_t trace_index) const { return closed_.at(trace_index - 1); }
    std::optional<Verdict> verdict() const { return root_verdict(config_); }

private:
    const MonitorAutomaton& automaton(size_t q) const {
        return circuit_.monitors[circuit_.gates[quant_gates_[q]].monitor];
    }

    size_t check_trace(size_t trace_index) const {
        if (trace_index == 0 || trace_index > k_)
            throw error("trace index out of range: " + std::to_string(trace_index));
        return trace_index - 1;
    }

    CircuitMonitor circuit_;
    Alphabet alphabet_;
    size_t k_;
    Configuration config_;
    std::vector<size_t> quant_gates_;            // gate ids, preorder
    std::vector<std::vector<size_t>> lane_state_; // [quant gate][trace]
    std::vector<std::vector<char>> lane_done_;
    std::vector<char> closed_;
    std::vector<size_t> cursors_;
};

inline RunState instrument(const CircuitMonitor& c, size_t k, const Alphabet& alphabet) {
    return RunState(c, k, alphabet);
}

// Per-trace event budget that provably suffices: past |u| + |v| * S steps a
// deterministic monitor only revisits (state, loop phase) pairs.
inline size_t trace_bound(const LassoTrace& t, size_t max_states) {
    return t.prefix.size() + t.loop.size() * max_states;
}

// Feeds every trace round-robin from its lasso expansion up to its bound,
// then closes all traces. The run is taken to exhaustion even after the root
// decides, so the final configuration is the canonical one for (circuit,
// suite); verdict persistence keeps the root verdict unchanged.
inline RunState run_suite_state(const CircuitMonitor& c, const TraceSuite& T) {
    for (const auto& m : c.monitors)
        if (!(m.alphabet == T.alphabet))
            throw error("suite alphabet does not match the circuit's alphabet");
    RunState rs(c, T.size(), T.alphabet);
    const size_t S = c.max_monitor_states();
    std::vector<size_t> bounds;
    size_t max_bound = 0;
    for (const auto& t : T.traces) {
        bounds.push_back(trace_bound(t, S));
        max_bound = std::max(max_bound, bounds.back());
    }
    for (size_t step = 0; step < max_bound; ++step)
        for (size_t i = 0; i < T.size(); ++i)
            if (step < bounds[i]) rs.feed(i + 1, T.traces[i].at(step));
    for (size_t i = 0; i < T.size(); ++i) rs.close_trace(i + 1);
    return rs;
}

inline Verdict run_suite(const CircuitMonitor& c, const TraceSuite& T) {
    RunState rs = run_suite_state(c, T);
    auto v = rs.verdict();
    if (!v) throw error("run did not decide after closing all traces");
    return *v;
}

// Live event stream: one line per event, "<traceIndex> <action>"; a line
// "<traceIndex> $" closes that trace. Prints "verdict <v>" once the root
// decides (remaining traces are closed at EOF first if needed) and returns
// the exit code: 0 yes, 1 no, 2 end.
inline int run_stream(const CircuitMonitor& c, size_t k, const Alphabet& alphabet,
                      std::istream& in, std::ostream& out) {
    RunState rs(c, k, alphabet);
    auto finish = [&](Verdict v) {
        out << "verdict " << to_string(v) << '\n';
        switch (v) {
        case Verdict::Yes: return 0;
        case Verdict::No: return 1;
        case Verdict::End: return 2;
        }
        return 2;
    };

    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        size_t index;
        std::string token;
        if (!(ls >> index >> token)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw parse_error("expected '<traceIndex> <action>'", static_cast<int>(lineno), 1);
        }
        std::optional<Verdict> v =
            token == "$" ? rs.close_trace(index) : rs.feed(index, token);
        if (v) return finish(*v);
    }
    for (size_t i = 1; i <= k; ++i) rs.close_trace(i);
    return finish(*rs.verdict());
}

} // namespace hypermon
