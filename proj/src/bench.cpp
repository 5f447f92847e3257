#include "crep/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "crep/csp.hpp"

namespace crep {

namespace {

Formula literal(int atom_index, bool positive, int atom_count, std::string source) {
    Term t(atom_count);
    t.require(atom_index, positive);
    return Formula{{t}, std::move(source)};
}

}  // namespace

KnowledgeBase gen_synthetic(int n, int j) {
    if (n < 1 || n + 1 > kMaxAtoms) {
        throw std::invalid_argument("synthetic chain length must be in [1, " + std::to_string(kMaxAtoms - 1) + "]");
    }
    if (j < 0 || j > 2 * n - 2) {
        throw std::invalid_argument("removal count must be in [0, " + std::to_string(2 * n - 2) + "]");
    }
    KnowledgeBase kb;
    const int m = n + 1;
    kb.atoms.push_back(Atom{"f", 1});
    for (int i = 1; i <= n; ++i) kb.atoms.push_back(Atom{"a" + std::to_string(i), i + 1});

    auto add = [&](Formula consequent, Formula antecedent) {
        Conditional c;
        c.id = kb.rule_count() + 1;
        c.consequent = std::move(consequent);
        c.antecedent = std::move(antecedent);
        kb.conditionals.push_back(std::move(c));
    };
    for (int i = 1; i <= n; ++i) {
        const bool odd = i % 2 == 1;
        add(literal(1, odd, m, odd ? "f" : "!f"), literal(i + 1, true, m, "a" + std::to_string(i)));
    }
    for (int i = 1; i < n; ++i) {
        add(literal(i + 1, true, m, "a" + std::to_string(i)), literal(i + 2, true, m, "a" + std::to_string(i + 1)));
    }
    kb.conditionals.resize(kb.conditionals.size() - static_cast<std::size_t>(j));
    return kb;
}

std::string synthetic_name(const SyntheticSpec& spec) {
    return "kb(" + std::to_string(spec.n) + "," + std::to_string(spec.rule_count()) + ")";
}

std::string_view to_string(BenchOp op) {
    switch (op) {
        case BenchOp::min_all: return "min-all";
        case BenchOp::enumerate: return "enumerate";
        case BenchOp::min: return "min";
    }
    return "unknown";
}

std::optional<BenchOp> parse_bench_op(std::string_view name) {
    for (BenchOp op : {BenchOp::min_all, BenchOp::enumerate, BenchOp::min}) {
        if (to_string(op) == name) return op;
    }
    return std::nullopt;
}

std::vector<BenchRecord> run_bench(std::span<const SyntheticSpec> specs, BenchOp op, const BenchOptions& options) {
    if (options.repetitions < 1) throw std::invalid_argument("repetitions must be positive");
    std::vector<BenchRecord> records;
    for (const SyntheticSpec& spec : specs) {
        const KnowledgeBase kb = gen_synthetic(spec.n, spec.j);
        BenchRecord rec;
        rec.kb_name = synthetic_name(spec);
        rec.variables = kb.atom_count();
        rec.conditionals = kb.rule_count();
        rec.operation = op;

        std::vector<double> times;
        for (int r = 0; r < options.repetitions && !rec.timed_out; ++r) {
            using clock = std::chrono::steady_clock;
            const auto start = clock::now();
            SearchControl control;
            if (options.timeout) control.deadline = start + *options.timeout;
            try {
                const CRProblem problem = build_problem(kb);
                switch (op) {
                    case BenchOp::min_all: rec.solutions_found = all_min_sum(problem, control).vectors.size(); break;
                    case BenchOp::enumerate:
                        rec.solutions_found = enumerate_solutions(problem, std::nullopt, control).vectors.size();
                        break;
                    case BenchOp::min: rec.solutions_found = solve_min_sum(problem, control) ? 1 : 0; break;
                }
            } catch (const SearchTimeout&) {
                rec.timed_out = true;
                rec.solutions_found = 0;
            }
            times.push_back(std::chrono::duration<double>(clock::now() - start).count());
        }
        std::sort(times.begin(), times.end());
        const std::size_t mid = times.size() / 2;
        rec.wall_time_s = times.size() % 2 == 1 ? times[mid] : (times[mid - 1] + times[mid]) / 2.0;
        records.push_back(std::move(rec));
    }
    return records;
}

std::string bench_csv(std::span<const BenchRecord> records) {
    std::string out = "kb_name,vars,conditionals,operation,wall_time_s,solutions_found\n";
    for (const BenchRecord& r : records) {
        char time[32];
        std::snprintf(time, sizeof time, "%.6f", r.wall_time_s);
        // kb names contain a comma, so they are quoted.
        out += '"' + r.kb_name + "\"," + std::to_string(r.variables) + ',' + std::to_string(r.conditionals) + ',' +
               std::string(to_string(r.operation)) + ',' + time + ',' +
               (r.timed_out ? std::string("timeout") : std::to_string(r.solutions_found)) + '\n';
    }
    return out;
}

}  // namespace crep
