#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "crep/csp.hpp"
#include "crep/kb.hpp"
#include "crep/worlds.hpp"

namespace crep {

/// A natural number or infinity. Infinity compares greater than every natural.
class Rank {
public:
    constexpr explicit Rank(std::uint64_t value) : value_(value) {}
    static constexpr Rank infinity() { return Rank(); }

    constexpr bool is_infinite() const { return !value_.has_value(); }
    /// Precondition: finite.
    std::uint64_t value() const { return value_.value(); }

    friend constexpr bool operator==(const Rank&, const Rank&) = default;
    friend constexpr std::strong_ordering operator<=>(const Rank& a, const Rank& b) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        if (a.is_infinite()) return std::strong_ordering::greater;
        if (b.is_infinite()) return std::strong_ordering::less;
        return *a.value_ <=> *b.value_;
    }

private:
    constexpr Rank() = default;
    std::optional<std::uint64_t> value_;
};

std::string to_string(const Rank& r);
std::ostream& operator<<(std::ostream& os, const Rank& r);

/// Ranking function induced by an impact vector: the rank of a world is the
/// sum of the impacts of the rules it falsifies.
class RankingFunction {
public:
    RankingFunction(std::vector<Atom> atoms, KappaVector source, std::vector<std::uint64_t> ranks);

    const std::vector<Atom>& atoms() const { return atoms_; }
    int atom_count() const { return static_cast<int>(atoms_.size()); }
    const KappaVector& source() const { return source_; }
    std::uint64_t rank(World w) const { return ranks_[w]; }
    const std::vector<std::uint64_t>& ranks() const { return ranks_; }
    std::uint64_t min_rank() const;

private:
    std::vector<Atom> atoms_;
    KappaVector source_;
    std::vector<std::uint64_t> ranks_;
};

/// Throws std::invalid_argument if v does not have one entry per rule.
RankingFunction induced_ocf(const KnowledgeBase& kb, const KappaVector& v);
RankingFunction induced_ocf(const KnowledgeBase& kb, const FalsificationMatrix& partitions, const KappaVector& v);

Rank rank_worlds(const RankingFunction& r, const WorldSet& worlds);
Rank rank_formula(const RankingFunction& r, const Formula& f);
/// rank(A & B) - rank(A), or infinity when rank(A) is infinite.
Rank rank_conditional(const RankingFunction& r, const Conditional& c);
/// rank(A & B) < rank(A & !B).
bool accepts(const RankingFunction& r, const Conditional& c);

struct ConditionalVerdict {
    Rank verifying;     // rank(A & B)
    Rank falsifying;    // rank(A & !B)
    Rank conditional;   // rank((B|A))
    bool accepted;
};

ConditionalVerdict evaluate_conditional(const RankingFunction& r, const Conditional& c);

/// One "world  rank" line per world, in truth-table order (all-true world first).
std::string ocf_table(const RankingFunction& r);
/// Array of {"world": ..., "rank": ...} records in truth-table order. World strings
/// are compact ("pb-fw-k") when every atom name is one character, spaced otherwise.
std::string ocf_json(const RankingFunction& r);

}  // namespace crep
