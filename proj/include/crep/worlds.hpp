#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crep/kb.hpp"

namespace crep {

/// World index in [0, 2^m). Atom i (1-based) is bit m - i.
using World = std::uint32_t;

inline std::size_t world_count(int atom_count) { return std::size_t{1} << atom_count; }

inline bool holds(World w, int atom_index, int atom_count) {
    return ((w >> (atom_count - atom_index)) & 1u) != 0;
}

/// Dense set of worlds over a fixed alphabet.
class WorldSet {
public:
    WorldSet() = default;
    explicit WorldSet(int atom_count);
    static WorldSet all(int atom_count);

    int atom_count() const { return atom_count_; }
    std::size_t universe_size() const { return world_count(atom_count_); }

    bool contains(World w) const { return ((words_[w >> 6] >> (w & 63)) & 1u) != 0; }
    void insert(World w) { words_[w >> 6] |= std::uint64_t{1} << (w & 63); }
    std::size_t count() const;
    bool empty() const;

    WorldSet& operator|=(const WorldSet& other);
    WorldSet& operator&=(const WorldSet& other);
    /// Set difference.
    WorldSet& operator-=(const WorldSet& other);

    friend WorldSet operator|(WorldSet lhs, const WorldSet& rhs) { return lhs |= rhs; }
    friend WorldSet operator&(WorldSet lhs, const WorldSet& rhs) { return lhs &= rhs; }
    friend WorldSet operator-(WorldSet lhs, const WorldSet& rhs) { return lhs -= rhs; }
    friend bool operator==(const WorldSet&, const WorldSet&) = default;

    /// Visits members in ascending index order.
    template <class F>
    void for_each(F&& visit) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t word = words_[k];
            while (word != 0) {
                const int bit = std::countr_zero(word);
                visit(static_cast<World>(k * 64 + static_cast<std::size_t>(bit)));
                word &= word - 1;
            }
        }
    }

    std::vector<World> to_vector() const;

private:
    void check_compatible(const WorldSet& other) const;

    int atom_count_ = 0;
    std::vector<std::uint64_t> words_;
};

enum class Indicator { verifies, falsifies, not_applicable };

bool eval_term(const Term& term, World w);
bool eval_formula(const Formula& formula, World w);

WorldSet term_worlds(const Term& term);
WorldSet formula_worlds(const Formula& formula);

Indicator indicator(const Conditional& conditional, World w);

/// Verifying and falsifying world sets for each rule, indexed by id - 1.
struct FalsificationMatrix {
    int atom_count = 0;
    std::vector<WorldSet> verifying;
    std::vector<WorldSet> falsifying;

    int rule_count() const { return static_cast<int>(verifying.size()); }
};

FalsificationMatrix build_partitions(const KnowledgeBase& kb);

enum class WorldStyle {
    spaced,   // "p b -f w -k"
    compact,  // "pb-fw-k"
};

std::string render_world(World w, std::span<const Atom> atoms, WorldStyle style = WorldStyle::spaced);

/// Parses a complete world given as whitespace-separated literals, e.g. "p b -f w -k".
/// Every atom must appear exactly once; `!x` is accepted as well as `-x`.
World parse_world(std::string_view text, std::span<const Atom> atoms);

}  // namespace crep
