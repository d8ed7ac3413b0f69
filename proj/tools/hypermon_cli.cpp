// Command-line front end: synthesis dumps, suite/stream runs, oracle
// queries, differential fuzzing, and circuit statistics/benchmarks.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypermon/hypermon.hpp"

namespace {

using namespace hypermon;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Alphabet parse_alphabet(const std::string& spec) {
    std::istringstream in(spec);
    std::vector<Action> acts;
    std::string a;
    while (in >> a) acts.push_back(a);
    return Alphabet(acts);
}

std::vector<size_t> parse_list(const std::string& spec) {
    std::vector<size_t> out;
    std::string item;
    std::istringstream in(spec);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(std::stoul(item));
    return out;
}

int verdict_exit_code(Verdict v) {
    switch (v) {
    case Verdict::Yes: return 0;
    case Verdict::No: return 1;
    case Verdict::End: return 2;
    }
    return 2;
}

struct Options {
    std::string formula_file;
    std::string suite_file;
    std::string alphabet;
    std::string dump = "tree";
    std::string k_list = "1";
    std::string events = "1000,100000";
    std::string action;
    bool stream = false;
    bool tsv = false;
    uint64_t seed = 42;
    size_t cases = 1000;
};

int cmd_synth(const Options& opt) {
    Alphabet alphabet = parse_alphabet(opt.alphabet);
    HyperPtr f = parse_hyper(read_file(opt.formula_file), alphabet);
    CircuitMonitor c = syn(f, alphabet);
    if (opt.dump == "term") {
        for (const auto& m : c.monitors)
            std::cout << print_term(m) << '\n';
    } else {
        std::cout << dump_circuit(c);
    }
    return 0;
}

int cmd_run(const Options& opt) {
    if (opt.stream) {
        Alphabet alphabet = parse_alphabet(opt.alphabet);
        HyperPtr f = parse_hyper(read_file(opt.formula_file), alphabet);
        auto ks = parse_list(opt.k_list);
        if (ks.size() != 1) throw error("--stream needs a single --k value");
        CircuitMonitor c = syn(f, alphabet);
        return run_stream(c, ks[0], alphabet, std::cin, std::cout);
    }
    TraceSuite T = parse_suite(read_file(opt.suite_file));
    HyperPtr f = parse_hyper(read_file(opt.formula_file), T.alphabet);
    Verdict v = run_suite(syn(f, T.alphabet), T);
    std::cout << "verdict " << to_string(v) << '\n';
    return verdict_exit_code(v);
}

int cmd_oracle(const Options& opt) {
    TraceSuite T = parse_suite(read_file(opt.suite_file));
    HyperPtr f = parse_hyper(read_file(opt.formula_file), T.alphabet);
    std::cout << (oracle::eval_hyper(f, T) ? "sat" : "unsat") << '\n';
    return 0;
}

int cmd_fuzz(const Options& opt) {
    if (opt.cases == 0) throw error("--cases must be at least 1");
    gen::FuzzReport report = gen::fuzz(opt.seed, opt.cases);
    const char sep = opt.tsv ? '\t' : ' ';
    std::cout << "cases" << sep << report.cases << '\n'
              << "soundness_violations" << sep << report.soundness_violations << '\n'
              << "completeness_misses" << sep << report.completeness_misses << '\n';
    for (const auto& fail : report.failures) {
        std::cout << "failure" << sep << fail.kind << sep << "seed=" << fail.case_seed
                  << sep << "verdict=" << fail.verdict
                  << sep << "formula=" << fail.formula << '\n';
        std::istringstream suite(fail.suite);
        std::string line;
        while (std::getline(suite, line)) std::cout << "  " << line << '\n';
    }
    return report.clean() ? 0 : 1;
}

int cmd_stats(const Options& opt) {
    Alphabet alphabet = parse_alphabet(opt.alphabet);
    HyperPtr f = parse_hyper(read_file(opt.formula_file), alphabet);
    CircuitMonitor c = syn(f, alphabet);
    for (size_t k : parse_list(opt.k_list)) {
        CircuitStats st = circuit_stats(c, k);
        std::string states;
        for (size_t i = 0; i < st.monitor_states.size(); ++i)
            states += (i ? "," : "") + std::to_string(st.monitor_states[i]);
        if (opt.tsv) {
            std::cout << k << '\t' << st.depth << '\t' << st.gate_count << '\t'
                      << st.max_fan_in << '\t' << states << '\n';
        } else {
            std::cout << "k=" << k << " depth=" << st.depth << " gates=" << st.gate_count
                      << " max_fan_in=" << st.max_fan_in << " monitor_states=" << states
                      << '\n';
        }
    }
    return 0;
}

int cmd_bench(const Options& opt) {
    Alphabet alphabet = parse_alphabet(opt.alphabet);
    HyperPtr f = parse_hyper(read_file(opt.formula_file), alphabet);
    CircuitMonitor c = syn(f, alphabet);
    auto ks = parse_list(opt.k_list);
    Action fed = opt.action.empty() ? alphabet.actions().front() : opt.action;
    if (!alphabet.contains(fed)) throw error("unknown action: " + fed);

    for (size_t k : ks) {
        for (size_t n : parse_list(opt.events)) {
            if (n == 0) {
                std::cout << (opt.tsv ? std::to_string(k) + "\t0\t\t"
                                      : "k=" + std::to_string(k) + " events=0")
                          << '\n';
                continue;
            }
            RunState rs(c, k, alphabet);
            auto start = std::chrono::steady_clock::now();
            for (size_t i = 0; i < n; ++i) rs.feed(i % k + 1, fed);
            auto elapsed = std::chrono::steady_clock::now() - start;
            double ns = std::chrono::duration<double, std::nano>(elapsed).count() / n;
            if (opt.tsv)
                std::cout << k << '\t' << n << '\t' << ns << '\n';
            else
                std::cout << "k=" << k << " events=" << n << " per_event_ns=" << ns << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circuit monitors for single-quantifier hyper safety properties"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--formula", opt.formula_file, "formula file");
    app.add_option("--suite", opt.suite_file, "trace-suite file");
    app.add_option("--alphabet", opt.alphabet, "space-separated actions, e.g. \"a b\"");
    app.add_option("--k", opt.k_list, "comma-separated trace counts, e.g. \"1,8,64\"");
    app.add_option("--seed", opt.seed, "fuzz seed");
    app.add_option("--cases", opt.cases, "fuzz case count");
    app.add_flag("--stream", opt.stream, "read events from stdin");
    app.add_flag("--tsv", opt.tsv, "machine-readable output");

    auto* synth = app.add_subcommand("synth", "synthesize and dump a circuit monitor");
    synth->add_option("--dump", opt.dump, "tree|term")->check(CLI::IsMember({"tree", "term"}));
    auto* run = app.add_subcommand("run", "run a circuit monitor over a suite or stream");
    auto* orc = app.add_subcommand("oracle", "brute-force satisfaction check");
    auto* fuzz = app.add_subcommand("fuzz", "differential fuzzing against the oracle");
    auto* stats = app.add_subcommand("stats", "circuit shape statistics per k");
    auto* bench = app.add_subcommand("bench", "per-event latency measurements");
    bench->add_option("--events", opt.events, "comma-separated stream lengths");
    bench->add_option("--action", opt.action, "event fed in the synthetic stream");

    // global flags may appear after the subcommand name
    for (auto* sub : {synth, run, orc, fuzz, stats, bench}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return cmd_synth(opt);
        if (run->parsed()) return cmd_run(opt);
        if (orc->parsed()) return cmd_oracle(opt);
        if (fuzz->parsed()) return cmd_fuzz(opt);
        if (stats->parsed()) return cmd_stats(opt);
        if (bench->parsed()) return cmd_bench(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
