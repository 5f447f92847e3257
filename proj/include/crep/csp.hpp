#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crep/kb.hpp"
#include "crep/worlds.hpp"

namespace crep {

/// Impact values (kappa_1^-, ..., kappa_n^-), one per rule in id order.
class KappaVector {
public:
    KappaVector() = default;
    explicit KappaVector(std::vector<int> values) : values_(std::move(values)) {}
    KappaVector(std::initializer_list<int> values) : values_(values) {}

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    int operator[](std::size_t i) const { return values_[i]; }
    int& operator[](std::size_t i) { return values_[i]; }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }
    std::span<const int> values() const { return values_; }

    long long sum() const;

    /// Lexicographic.
    friend auto operator<=>(const KappaVector&, const KappaVector&) = default;

private:
    std::vector<int> values_;
};

/// "1 0 1"
std::string to_string(const KappaVector& v);
std::ostream& operator<<(std::ostream& os, const KappaVector& v);

/// Parses "1,2,2,1,1". Throws std::invalid_argument on malformed or negative input.
KappaVector parse_kappa_vector(std::string_view text);

/// a_i <= b_i for every i.
bool componentwise_leq(const KappaVector& a, const KappaVector& b);

struct Domains {
    std::vector<int> lo;
    std::vector<int> hi;

    bool all_fixed() const { return lo == hi; }
    friend bool operator==(const Domains&, const Domains&) = default;
};

/// Compiled form of one acceptance constraint
///   k_i > min_{w in V_i} S_i(w) - min_{w in F_i} S_i(w),  S_i(w) = sum_{j != i, w in F_j} k_j.
///
/// Each world is reduced to its falsification signature (bit j-1 set iff the
/// world falsifies rule j, own bit cleared). Only subset-minimal signatures are
/// kept since impacts are non-negative. An empty list stands for an empty
/// world set, whose minimum is infinite.
struct RuleConstraint {
    std::vector<std::uint64_t> verifying;
    std::vector<std::uint64_t> falsifying;
};

struct CRProblem {
    int rule_count = 0;
    int bound = 0;
    FalsificationMatrix partitions;
    std::vector<RuleConstraint> constraints;
    /// Distinct falsification signatures over all worlds, ascending.
    std::vector<std::uint64_t> signatures;
    Domains domains;

    /// Ids of rules without a verifying world; no finite impact satisfies them.
    std::vector<int> degenerate_rules() const;
};

/// Domains start at [0, bound]; the default bound is the rule count.
CRProblem build_problem(const KnowledgeBase& kb, std::optional<int> bound = std::nullopt);

/// Sum of v over rules j != rule_id falsified by w.
long long falsified_sum(const CRProblem& p, int rule_id, World w, const KappaVector& v);

bool check_solution(const CRProblem& p, const KappaVector& v);

/// Ids of the rules whose constraint v violates.
std::vector<int> violated_rules(const CRProblem& p, const KappaVector& v);

/// Bounds-consistency fixpoint of lo_i <- max(lo_i, lb(rhs_i) + 1). With a sum
/// cap, additionally enforces sum(lo) <= cap and hi_i <= cap - sum_{j != i} lo_j.
/// Returns nullopt when some domain becomes empty.
std::optional<Domains> propagate_domains(const CRProblem& p, Domains d,
                                         std::optional<long long> sum_cap = std::nullopt);

/// Problem with tightened domains, or nullopt if infeasible within the box.
std::optional<CRProblem> propagate(const CRProblem& p);

class SearchTimeout : public std::runtime_error {
public:
    SearchTimeout() : std::runtime_error("search deadline exceeded") {}
};

struct SearchControl {
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

enum class Ordering { all, sum, componentwise, induced_ocf };

std::string_view to_string(Ordering o);

struct SolutionSet {
    Ordering ordering = Ordering::all;
    int bound = 0;
    std::vector<KappaVector> vectors;  // lexicographic, no duplicates
    std::optional<long long> minimal_sum;
    /// False when a limit cut the enumeration short. Completeness is always relative to the box.
    bool complete = true;

    bool infeasible() const { return vectors.empty(); }
};

struct MinSumSolution {
    long long sum = 0;
    KappaVector vector;
};

SolutionSet enumerate_solutions(const CRProblem& p, std::optional<std::size_t> limit = std::nullopt,
                                const SearchControl& control = {});

/// Lexicographically least vector among those of minimal sum.
std::optional<MinSumSolution> solve_min_sum(const CRProblem& p, const SearchControl& control = {});

SolutionSet all_min_sum(const CRProblem& p, const SearchControl& control = {});

/// Solutions not componentwise dominated by another solution in the box.
SolutionSet pareto_min(const CRProblem& p, const SearchControl& control = {});

/// Solutions whose induced ranking function is not pointwise dominated by a
/// different induced ranking function. Vectors inducing the same function are kept together.
SolutionSet ocf_min(const CRProblem& p, const SearchControl& control = {});

/// Ranks of v's induced function on each entry of p.signatures.
std::vector<long long> signature_ranks(const CRProblem& p, std::span<const int> v);

/// {"ordering", "bound", "solutions", "minimal_sum", "complete_within_box", "status"[, "degenerate_rules"]}
std::string solution_set_json(const SolutionSet& set, std::span<const int> degenerate_rules = {});

}  // namespace crep
