#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crep {

inline constexpr int kMaxAtoms = 20;
inline constexpr int kMaxRules = 64;

struct Atom {
    std::string name;
    int index = 0;  // 1-based position in the vars declaration

    friend bool operator==(const Atom&, const Atom&) = default;
};

enum class Polarity : std::uint8_t { free, pos, neg, conflict };

/// Conjunction of literals over a fixed alphabet of `atom_count` atoms.
///
/// Literal masks use the world bit layout: atom i (1-based) of m is stored at
/// bit m - i, so the first declared atom is the most significant bit. A term
/// that requires an atom both true and false is contradictory and is satisfied
/// by no world; this is how `bot` is represented.
class Term {
public:
    Term() = default;
    explicit Term(int atom_count);

    static Term top(int atom_count) { return Term(atom_count); }
    /// The canonical unsatisfiable term a1 & !a1.
    static Term contradiction(int atom_count);

    int atom_count() const { return atom_count_; }
    Polarity polarity(int atom_index) const;
    void require(int atom_index, bool positive);

    bool contradictory() const { return (pos_ & neg_) != 0; }
    bool is_top() const { return pos_ == 0 && neg_ == 0; }
    std::uint32_t pos_mask() const { return pos_; }
    std::uint32_t neg_mask() const { return neg_; }

    /// Conjunction of two terms; may be contradictory.
    friend Term operator&(const Term& lhs, const Term& rhs);
    friend bool operator==(const Term&, const Term&) = default;

private:
    std::uint32_t bit(int atom_index) const;

    int atom_count_ = 0;
    std::uint32_t pos_ = 0;
    std::uint32_t neg_ = 0;
};

/// Disjunctive normal form; never empty.
struct Formula {
    std::vector<Term> terms;
    std::string source;

    int atom_count() const { return terms.empty() ? 0 : terms.front().atom_count(); }
};

struct Conditional {
    int id = 0;  // 1-based, contiguous in file order
    Formula antecedent;
    Formula consequent;
    std::string label;
};

struct KnowledgeBase {
    std::vector<Atom> atoms;
    std::vector<Conditional> conditionals;

    int atom_count() const { return static_cast<int>(atoms.size()); }
    int rule_count() const { return static_cast<int>(conditionals.size()); }
    std::optional<int> find_atom(std::string_view name) const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    int line_;
    int column_;
    std::string detail_;
};

KnowledgeBase parse_kb(std::string_view text);
KnowledgeBase load_kb_file(const std::filesystem::path& path);

Formula parse_formula(std::string_view text, std::span<const Atom> atoms);

/// Parses a single `( CONSEQUENT | ANTECEDENT )` conditional.
Conditional parse_conditional(std::string_view text, std::span<const Atom> atoms, int id = 1);

std::string render_term(const Term& term, std::span<const Atom> atoms);
std::string render_formula(const Formula& formula, std::span<const Atom> atoms);
std::string render_conditional(const Conditional& conditional, std::span<const Atom> atoms);
std::string render_kb(const KnowledgeBase& kb);

/// Same atoms, same rule labels and identical term lists; formula source text is ignored.
bool structurally_equal(const KnowledgeBase& lhs, const KnowledgeBase& rhs);

}  // namespace crep
