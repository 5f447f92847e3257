#include "crep/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "crep/bench.hpp"
#include "crep/csp.hpp"
#include "crep/kb.hpp"
#include "crep/ocf.hpp"

namespace crep {

namespace {

struct SolveArgs {
    std::string mode;
    std::optional<std::size_t> limit;
    std::optional<int> bound;
    bool json = false;
    std::string file;
};

struct QueryArgs {
    bool use_min = false;
    std::string vector;
    std::string conditional;
    std::string file;
};

struct VectorArgs {
    std::string vector;
    bool json = false;
    std::string file;
};

struct BenchArgs {
    int n_from = 1;
    int n_to = 1;
    int j = 0;
    int reps = 1;
    std::string op = "min-all";
    std::optional<double> timeout_s;
    std::string csv;
};

KnowledgeBase load(const std::string& file) {
    try {
        return load_kb_file(file);
    } catch (const ParseError& e) {
        throw std::runtime_error(file + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                                 e.detail());
    }
}

KappaVector vector_for(const KnowledgeBase& kb, const std::string& text) {
    KappaVector v = parse_kappa_vector(text);
    if (static_cast<int>(v.size()) != kb.rule_count()) {
        throw std::invalid_argument("vector has " + std::to_string(v.size()) + " entries but the knowledge base has " +
                                    std::to_string(kb.rule_count()) + " rules");
    }
    return v;
}

void report_no_solution(const CRProblem& p, std::ostream& err) {
    const std::vector<int> degenerate = p.degenerate_rules();
    if (!degenerate.empty()) {
        for (int id : degenerate) err << "degenerate_rule: rule " << id << " has no verifying world\n";
        return;
    }
    err << "infeasible_within_bound: no solution with every impact in [0, " << p.bound << "]\n";
}

int solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    const KnowledgeBase kb = load(a.file);
    const CRProblem problem = build_problem(kb, a.bound);

    SolutionSet set;
    if (a.mode == "all") {
        set = enumerate_solutions(problem, a.limit);
    } else if (a.mode == "min") {
        set.ordering = Ordering::sum;
        set.bound = problem.bound;
        if (auto best = solve_min_sum(problem)) {
            set.vectors.push_back(best->vector);
            set.minimal_sum = best->sum;
        }
    } else if (a.mode == "min-all") {
        set = all_min_sum(problem);
    } else if (a.mode == "pareto") {
        set = pareto_min(problem);
    } else {
        set = ocf_min(problem);
    }

    const std::vector<int> degenerate = problem.degenerate_rules();
    if (a.json) {
        out << solution_set_json(set, degenerate) << '\n';
    } else {
        for (const KappaVector& v : set.vectors) out << to_string(v) << '\n';
    }
    if (set.infeasible()) {
        report_no_solution(problem, err);
        return kExitNoSolution;
    }
    if (!set.complete) err << "note: listing truncated at " << set.vectors.size() << " solutions\n";
    return kExitOk;
}

int query(const QueryArgs& a, std::ostream& out, std::ostream& err) {
    const KnowledgeBase kb = load(a.file);
    const Conditional c = parse_conditional(a.conditional, kb.atoms);

    KappaVector v;
    if (!a.vector.empty()) {
        v = vector_for(kb, a.vector);
    } else {
        const CRProblem problem = build_problem(kb);
        const SolutionSet minimal = all_min_sum(problem);
        if (minimal.infeasible()) {
            report_no_solution(problem, err);
            return kExitNoSolution;
        }
        v = minimal.vectors.front();
        if (minimal.vectors.size() > 1) {
            err << "warning: " << minimal.vectors.size()
                << " sum-minimal solutions exist; using the lexicographically least (" << to_string(v) << ")\n";
        }
    }

    const RankingFunction r = induced_ocf(kb, v);
    const ConditionalVerdict verdict = evaluate_conditional(r, c);
    out << (verdict.accepted ? "ACCEPTED" : "REJECTED") << '\n'
        << "conditional: " << render_conditional(c, kb.atoms) << '\n'
        << "vector: " << to_string(v) << '\n'
        << "rank_verify: " << verdict.verifying << '\n'
        << "rank_falsify: " << verdict.falsifying << '\n'
        << "rank_conditional: " << verdict.conditional << '\n';
    return kExitOk;
}

int show_ocf(const VectorArgs& a, std::ostream& out) {
    const KnowledgeBase kb = load(a.file);
    const RankingFunction r = induced_ocf(kb, vector_for(kb, a.vector));
    if (a.json) {
        out << ocf_json(r) << '\n';
    } else {
        out << ocf_table(r);
    }
    return kExitOk;
}

int check(const VectorArgs& a, std::ostream& out) {
    const KnowledgeBase kb = load(a.file);
    const CRProblem problem = build_problem(kb);
    const std::vector<int> bad = violated_rules(problem, vector_for(kb, a.vector));
    if (bad.empty()) {
        out << "SOLUTION\n";
        return kExitOk;
    }
    out << "NOT_A_SOLUTION violated:";
    for (int id : bad) out << ' ' << id;
    out << '\n';
    return kExitNoSolution;
}

int bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    const std::optional<BenchOp> op = parse_bench_op(a.op);
    if (!op) throw std::invalid_argument("unknown bench operation '" + a.op + "'");
    if (a.n_from > a.n_to) throw std::invalid_argument("--n-from must not exceed --n-to");
    std::vector<SyntheticSpec> specs;
    for (int n = a.n_from; n <= a.n_to; ++n) specs.push_back(SyntheticSpec{n, a.j});

    BenchOptions options;
    options.repetitions = a.reps;
    if (a.timeout_s) {
        options.timeout = std::chrono::milliseconds(static_cast<long long>(*a.timeout_s * 1000.0));
    }
    // Validate every spec before spending time on any of them.
    for (const SyntheticSpec& s : specs) gen_synthetic(s.n, s.j);

    const std::vector<BenchRecord> records = run_bench(specs, *op, options);
    const std::string csv = bench_csv(records);
    out << csv;
    if (!a.csv.empty()) {
        std::ofstream file(a.csv, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write '" + a.csv + "'");
        file << csv;
    }
    for (const BenchRecord& r : records) {
        if (r.timed_out) err << "warning: " << r.kb_name << " timed out\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Computes c-representations of conditional knowledge bases and answers ranking queries.", "crep"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve the constraint system for impact vectors");
    solve_cmd->add_option("--mode", solve_args.mode, "Which solutions to list")
        ->required()
        ->check(CLI::IsMember({"all", "min", "min-all", "pareto", "ocf-min"}));
    solve_cmd->add_option("--limit", solve_args.limit, "Stop after N solutions (mode all)")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--bound", solve_args.bound, "Upper bound for every impact (default: rule count)")
        ->check(CLI::Range(0, 4096));
    solve_cmd->add_flag("--json", solve_args.json, "Emit JSON");
    solve_cmd->add_option("FILE", solve_args.file, "Knowledge base file")->required();

    QueryArgs query_args;
    CLI::App* query_cmd = app.add_subcommand("query", "Check whether an induced ranking function accepts a conditional");
    CLI::Option* min_opt = query_cmd->add_flag("--min", query_args.use_min, "Use the least sum-minimal solution (default)");
    query_cmd->add_option("--vector", query_args.vector, "Explicit impact vector v1,v2,...")->excludes(min_opt);
    query_cmd->add_option("CONDITIONAL", query_args.conditional, "Conditional \"(B | A)\"")->required();
    query_cmd->add_option("FILE", query_args.file, "Knowledge base file")->required();

    VectorArgs show_args;
    CLI::App* show_cmd = app.add_subcommand("show-ocf", "Print the ranking function induced by a vector");
    show_cmd->add_option("--vector", show_args.vector, "Impact vector v1,v2,...")->required();
    show_cmd->add_flag("--json", show_args.json, "Emit JSON records");
    show_cmd->add_option("FILE", show_args.file, "Knowledge base file")->required();

    VectorArgs check_args;
    CLI::App* check_cmd = app.add_subcommand("check", "Test whether a vector solves the constraint system");
    check_cmd->add_option("--vector", check_args.vector, "Impact vector v1,v2,...")->required();
    check_cmd->add_option("FILE", check_args.file, "Knowledge base file")->required();

    BenchArgs bench_args;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Time the solver on the synthetic kb(n, m) family");
    bench_cmd->add_option("--n-from", bench_args.n_from, "First chain length")->required()->check(CLI::Range(1, kMaxAtoms - 1));
    bench_cmd->add_option("--n-to", bench_args.n_to, "Last chain length")->required()->check(CLI::Range(1, kMaxAtoms - 1));
    bench_cmd->add_option("--j", bench_args.j, "Number of trailing rules removed")->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--reps", bench_args.reps, "Repetitions per knowledge base")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--op", bench_args.op, "Operation to time")
        ->check(CLI::IsMember({"min-all", "enumerate", "min"}));
    bench_cmd->add_option("--timeout", bench_args.timeout_s, "Per-run timeout in seconds")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--csv", bench_args.csv, "Also write the CSV to PATH");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve_cmd) return solve(solve_args, out, err);
        if (*query_cmd) return query(query_args, out, err);
        if (*show_cmd) return show_ocf(show_args, out);
        if (*check_cmd) return check(check_args, out);
        if (*bench_cmd) return bench(bench_args, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace crep
