#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crep/kb.hpp"

namespace crep {

/// kb(n, 2n-1-j): the chain family with its last j rules removed.
struct SyntheticSpec {
    int n = 1;
    int j = 0;

    int rule_count() const { return 2 * n - 1 - j; }
};

/// Atoms (f, a1, ..., an). Rules: (f|ai) for odd i and (!f|ai) for even i,
/// then the chain (ai|ai+1); the last j rules are dropped.
/// Throws std::invalid_argument unless 1 <= n <= 19 and 0 <= j <= 2n-2.
KnowledgeBase gen_synthetic(int n, int j);

/// "kb(n,m)" with m the remaining rule count.
std::string synthetic_name(const SyntheticSpec& spec);

enum class BenchOp { min_all, enumerate, min };

std::string_view to_string(BenchOp op);
std::optional<BenchOp> parse_bench_op(std::string_view name);

struct BenchRecord {
    std::string kb_name;
    int variables = 0;
    int conditionals = 0;
    BenchOp operation = BenchOp::min_all;
    double wall_time_s = 0.0;  // median over repetitions
    std::size_t solutions_found = 0;
    bool timed_out = false;
};

struct BenchOptions {
    int repetitions = 1;
    /// Per repetition; an expired run yields a flagged record.
    std::optional<std::chrono::milliseconds> timeout;
};

std::vector<BenchRecord> run_bench(std::span<const SyntheticSpec> specs, BenchOp op, const BenchOptions& options = {});

/// Header `kb_name,vars,conditionals,operation,wall_time_s,solutions_found`;
/// a timed-out record carries `timeout` in the last column.
std::string bench_csv(std::span<const BenchRecord> records);

}  // namespace crep
