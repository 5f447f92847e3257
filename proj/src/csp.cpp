#include "crep/csp.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <charconv>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace crep {

namespace {

constexpr long long kInfinity = std::numeric_limits<long long>::max();

std::uint64_t rule_bit(int rule_id) { return std::uint64_t{1} << (rule_id - 1); }

template <class Values>
long long mask_sum(std::uint64_t mask, const Values& values) {
    long long s = 0;
    while (mask != 0) {
        s += values[static_cast<std::size_t>(std::countr_zero(mask))];
        mask &= mask - 1;
    }
    return s;
}

/// min over masks of the masked sum; kInfinity for an empty list.
template <class Values>
long long min_sum(const std::vector<std::uint64_t>& masks, const Values& values) {
    long long best = kInfinity;
    for (std::uint64_t m : masks) best = std::min(best, mask_sum(m, values));
    return best;
}

/// Sorted, deduplicated, and reduced to subset-minimal masks.
std::vector<std::uint64_t> minimal_masks(std::vector<std::uint64_t> masks) {
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
        return std::popcount(a) < std::popcount(b);
    });
    std::vector<std::uint64_t> kept;
    for (std::uint64_t m : masks) {
        const bool covered = std::any_of(kept.begin(), kept.end(), [m](std::uint64_t k) { return (k & m) == k; });
        if (!covered) kept.push_back(m);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

/// Depth-first labeling: variables in rule order, values ascending, so leaves
/// arrive in lexicographic order.
class Labeling {
public:
    using Visit = std::function<bool(const KappaVector&)>;
    using Prune = std::function<bool(const Domains&)>;

    Labeling(const CRProblem& p, const SearchControl& control) : p_(p), control_(control) {}

    void set_sum_cap(std::optional<long long> cap) { sum_cap_ = cap; }

    void run(const Visit& visit, const Prune& prune = {}) {
        visit_ = &visit;
        prune_ = prune ? &prune : nullptr;
        descend(p_.domains);
    }

private:
    bool descend(Domains d) {
        tick();
        std::optional<Domains> r = propagate_domains(p_, std::move(d), sum_cap_);
        if (!r) return true;
        if (prune_ != nullptr && (*prune_)(*r)) return true;

        const auto it = std::mismatch(r->lo.begin(), r->lo.end(), r->hi.begin()).first;
        if (it == r->lo.end()) {
            KappaVector v(r->lo);
            assert(check_solution(p_, v));
            return (*visit_)(v);
        }
        const auto var = static_cast<std::size_t>(it - r->lo.begin());
        for (int value = r->lo[var]; value <= r->hi[var]; ++value) {
            Domains child = *r;
            child.lo[var] = child.hi[var] = value;
            if (!descend(std::move(child))) return false;
        }
        return true;
    }

    void tick() {
        if (control_.deadline && (++nodes_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > *control_.deadline) {
            throw SearchTimeout();
        }
    }

    const CRProblem& p_;
    const SearchControl& control_;
    std::optional<long long> sum_cap_;
    const Visit* visit_ = nullptr;
    const Prune* prune_ = nullptr;
    std::uint64_t nodes_ = 0;
};

SolutionSet empty_set(const CRProblem& p, Ordering ordering) {
    SolutionSet s;
    s.ordering = ordering;
    s.bound = p.bound;
    return s;
}

}  // namespace

long long KappaVector::sum() const {
    long long s = 0;
    for (int v : values_) s += v;
    return s;
}

std::string to_string(const KappaVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ' ';
        out += std::to_string(v[i]);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const KappaVector& v) { return os << '(' << to_string(v) << ')'; }

KappaVector parse_kappa_vector(std::string_view text) {
    std::vector<int> values;
    if (text.empty()) return KappaVector(values);
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || value < 0) {
            throw std::invalid_argument("malformed impact vector '" + std::string(text) +
                                        "': expected comma-separated natural numbers");
        }
        values.push_back(value);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return KappaVector(std::move(values));
}

bool componentwise_leq(const KappaVector& a, const KappaVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("impact vectors of different length");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

std::vector<int> CRProblem::degenerate_rules() const {
    std::vector<int> ids;
    for (int i = 0; i < rule_count; ++i) {
        if (constraints[static_cast<std::size_t>(i)].verifying.empty()) ids.push_back(i + 1);
    }
    return ids;
}

CRProblem build_problem(const KnowledgeBase& kb, std::optional<int> bound) {
    if (bound && *bound < 0) throw std::invalid_argument("bound must be non-negative");
    CRProblem p;
    p.rule_count = kb.rule_count();
    p.bound = bound.value_or(p.rule_count);
    p.partitions = build_partitions(kb);

    std::vector<std::uint64_t> signature(world_count(kb.atom_count()), 0);
    for (int j = 1; j <= p.rule_count; ++j) {
        p.partitions.falsifying[static_cast<std::size_t>(j - 1)].for_each(
            [&](World w) { signature[w] |= rule_bit(j); });
    }

    p.constraints.reserve(static_cast<std::size_t>(p.rule_count));
    for (int i = 1; i <= p.rule_count; ++i) {
        const std::uint64_t own = ~rule_bit(i);
        std::vector<std::uint64_t> v_masks;
        std::vector<std::uint64_t> f_masks;
        p.partitions.verifying[static_cast<std::size_t>(i - 1)].for_each(
            [&](World w) { v_masks.push_back(signature[w] & own); });
        p.partitions.falsifying[static_cast<std::size_t>(i - 1)].for_each(
            [&](World w) { f_masks.push_back(signature[w] & own); });
        p.constraints.push_back(RuleConstraint{minimal_masks(std::move(v_masks)), minimal_masks(std::move(f_masks))});
    }

    p.signatures = signature;
    std::sort(p.signatures.begin(), p.signatures.end());
    p.signatures.erase(std::unique(p.signatures.begin(), p.signatures.end()), p.signatures.end());

    p.domains.lo.assign(static_cast<std::size_t>(p.rule_count), 0);
    p.domains.hi.assign(static_cast<std::size_t>(p.rule_count), p.bound);
    return p;
}

long long falsified_sum(const CRProblem& p, int rule_id, World w, const KappaVector& v) {
    long long s = 0;
    for (int j = 1; j <= p.rule_count; ++j) {
        if (j != rule_id && p.partitions.falsifying[static_cast<std::size_t>(j - 1)].contains(w)) {
            s += v[static_cast<std::size_t>(j - 1)];
        }
    }
    return s;
}

std::vector<int> violated_rules(const CRProblem& p, const KappaVector& v) {
    if (static_cast<int>(v.size()) != p.rule_count) {
        throw std::invalid_argument("impact vector has " + std::to_string(v.size()) + " entries, expected " +
                                    std::to_string(p.rule_count));
    }
    std::vector<int> bad;
    for (int i = 0; i < p.rule_count; ++i) {
        const RuleConstraint& c = p.constraints[static_cast<std::size_t>(i)];
        const int ki = v[static_cast<std::size_t>(i)];
        bool ok = ki >= 0;
        if (c.verifying.empty()) {
            ok = false;  // inf - x, and inf - inf, are never below a finite value
        } else if (!c.falsifying.empty()) {
            ok = ok && min_sum(c.verifying, v.values()) - min_sum(c.falsifying, v.values()) < ki;
        }
        if (!ok) bad.push_back(i + 1);
    }
    return bad;
}

bool check_solution(const CRProblem& p, const KappaVector& v) { return violated_rules(p, v).empty(); }

std::optional<Domains> propagate_domains(const CRProblem& p, Domains d, std::optional<long long> sum_cap) {
    const auto n = static_cast<std::size_t>(p.rule_count);
    if (d.lo.size() != n || d.hi.size() != n) throw std::invalid_argument("domain vector size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (d.lo[i] < 0) d.lo[i] = 0;
        if (d.lo[i] > d.hi[i]) return std::nullopt;
    }

    bool changed = true;
    while (changed) {
        changed = false;
        if (sum_cap) {
            long long total = 0;
            for (int lo : d.lo) total += lo;
            if (total > *sum_cap) return std::nullopt;
            for (std::size_t i = 0; i < n; ++i) {
                const long long cap = *sum_cap - (total - d.lo[i]);
                if (cap < d.hi[i]) {
                    d.hi[i] = static_cast<int>(cap);
                    changed = true;
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            const RuleConstraint& c = p.constraints[i];
            if (c.verifying.empty()) return std::nullopt;
            if (c.falsifying.empty()) continue;
            const long long need = min_sum(c.verifying, d.lo) - min_sum(c.falsifying, d.hi) + 1;
            if (need > d.lo[i]) {
                if (need > d.hi[i]) return std::nullopt;
                d.lo[i] = static_cast<int>(need);
                changed = true;
            }
        }
    }
    return d;
}

std::optional<CRProblem> propagate(const CRProblem& p) {
    std::optional<Domains> d = propagate_domains(p, p.domains);
    if (!d) return std::nullopt;
    CRProblem out = p;
    out.domains = std::move(*d);
    return out;
}

std::string_view to_string(Ordering o) {
    switch (o) {
        case Ordering::all: return "all";
        case Ordering::sum: return "sum";
        case Ordering::componentwise: return "componentwise";
        case Ordering::induced_ocf: return "induced_ocf";
    }
    return "unknown";
}

SolutionSet enumerate_solutions(const CRProblem& p, std::optional<std::size_t> limit, const SearchControl& control) {
    SolutionSet out = empty_set(p, Ordering::all);
    if (limit && *limit == 0) {
        out.complete = false;
        return out;
    }
    Labeling search(p, control);
    bool stopped = false;
    search.run([&](const KappaVector& v) {
        out.vectors.push_back(v);
        if (limit && out.vectors.size() >= *limit) {
            stopped = true;
            return false;
        }
        return true;
    });
    // Hitting the limit exactly on the last solution still leaves the set complete,
    // but we cannot know that without searching on.
    out.complete = !stopped;
    return out;
}

std::optional<MinSumSolution> solve_min_sum(const CRProblem& p, const SearchControl& control) {
    std::optional<MinSumSolution> best;
    Labeling search(p, control);
    search.run([&](const KappaVector& v) {
        const long long s = v.sum();
        if (!best || s < best->sum) {
            best = MinSumSolution{s, v};
            search.set_sum_cap(s - 1);
        }
        return true;
    });
    return best;
}

SolutionSet all_min_sum(const CRProblem& p, const SearchControl& control) {
    SolutionSet out = empty_set(p, Ordering::sum);
    const std::optional<MinSumSolution> best = solve_min_sum(p, control);
    if (!best) return out;
    out.minimal_sum = best->sum;

    Labeling search(p, control);
    search.set_sum_cap(best->sum);
    search.run([&](const KappaVector& v) {
        if (v.sum() == best->sum) out.vectors.push_back(v);
        return true;
    });
    return out;
}

SolutionSet pareto_min(const CRProblem& p, const SearchControl& control) {
    // In lexicographic order every dominator of v precedes v, so a solution
    // that survives the archive check on arrival is final.
    SolutionSet out = empty_set(p, Ordering::componentwise);
    Labeling search(p, control);
    auto dominated_subtree = [&](const Domains& d) {
        return std::any_of(out.vectors.begin(), out.vectors.end(), [&](const KappaVector& u) {
            for (std::size_t i = 0; i < u.size(); ++i) {
                if (u[i] > d.lo[i]) return false;
            }
            return true;
        });
    };
    search.run(
        [&](const KappaVector& v) {
            out.vectors.push_back(v);
            return true;
        },
        dominated_subtree);
    if (!out.vectors.empty()) {
        long long m = kInfinity;
        for (const KappaVector& v : out.vectors) m = std::min(m, v.sum());
        out.minimal_sum = m;
    }
    return out;
}

std::vector<long long> signature_ranks(const CRProblem& p, std::span<const int> v) {
    std::vector<long long> ranks;
    ranks.reserve(p.signatures.size());
    for (std::uint64_t sig : p.signatures) ranks.push_back(mask_sum(sig, v));
    return ranks;
}

SolutionSet ocf_min(const CRProblem& p, const SearchControl& control) {
    // Induced ranks are monotone in the impacts, so every rank-minimal function
    // is induced by some componentwise-minimal vector.
    SolutionSet out = empty_set(p, Ordering::induced_ocf);
    const SolutionSet pareto = pareto_min(p, control);
    if (pareto.vectors.empty()) return out;

    std::vector<std::vector<long long>> candidates;
    for (const KappaVector& v : pareto.vectors) candidates.push_back(signature_ranks(p, v.values()));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto leq = [](const std::vector<long long>& a, const std::vector<long long>& b) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] > b[k]) return false;
        }
        return true;
    };
    std::vector<std::vector<long long>> targets;
    for (const auto& c : candidates) {
        const bool beaten = std::any_of(candidates.begin(), candidates.end(),
                                        [&](const auto& other) { return other != c && leq(other, c); });
        if (!beaten) targets.push_back(c);
    }

    Labeling search(p, control);
    auto hopeless = [&](const Domains& d) {
        const std::vector<long long> floor = signature_ranks(p, d.lo);
        return std::none_of(targets.begin(), targets.end(), [&](const auto& t) { return leq(floor, t); });
    };
    search.run(
        [&](const KappaVector& v) {
            const std::vector<long long> ranks = signature_ranks(p, v.values());
            if (std::find(targets.begin(), targets.end(), ranks) != targets.end()) out.vectors.push_back(v);
            return true;
        },
        hopeless);
    return out;
}

std::string solution_set_json(const SolutionSet& set, std::span<const int> degenerate_rules) {
    nlohmann::ordered_json j;
    j["ordering"] = std::string(to_string(set.ordering));
    j["bound"] = set.bound;
    nlohmann::ordered_json solutions = nlohmann::ordered_json::array();
    for (const KappaVector& v : set.vectors) solutions.push_back(std::vector<int>(v.begin(), v.end()));
    j["solutions"] = std::move(solutions);
    j["minimal_sum"] = set.minimal_sum ? nlohmann::ordered_json(*set.minimal_sum) : nlohmann::ordered_json(nullptr);
    j["complete_within_box"] = set.complete;
    if (!degenerate_rules.empty()) {
        j["status"] = "degenerate_rule";
        j["degenerate_rules"] = std::vector<int>(degenerate_rules.begin(), degenerate_rules.end());
    } else {
        j["status"] = set.vectors.empty() ? "infeasible_within_bound" : "ok";
    }
    return j.dump();
}

}  // namespace crep
