#include "crep/worlds.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace crep {

WorldSet::WorldSet(int atom_count)
    : atom_count_(atom_count), words_((world_count(atom_count) + 63) / 64, 0) {
    if (atom_count < 1 || atom_count > kMaxAtoms) {
        throw std::invalid_argument("world set width must be in [1, " + std::to_string(kMaxAtoms) + "]");
    }
}

WorldSet WorldSet::all(int atom_count) {
    WorldSet s(atom_count);
    const std::size_t n = s.universe_size();
    for (std::size_t k = 0; k < s.words_.size(); ++k) {
        const std::size_t bits = std::min<std::size_t>(64, n - k * 64);
        s.words_[k] = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    }
    return s;
}

std::size_t WorldSet::count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool WorldSet::empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void WorldSet::check_compatible(const WorldSet& other) const {
    if (atom_count_ != other.atom_count_) throw std::invalid_argument("world sets over different alphabets");
}

WorldSet& WorldSet::operator|=(const WorldSet& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
}

WorldSet& WorldSet::operator&=(const WorldSet& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
}

WorldSet& WorldSet::operator-=(const WorldSet& other) {
    check_compatible(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
    return *this;
}

std::vector<World> WorldSet::to_vector() const {
    std::vector<World> out;
    out.reserve(count());
    for_each([&](World w) { out.push_back(w); });
    return out;
}

bool eval_term(const Term& term, World w) {
    return (w & term.pos_mask()) == term.pos_mask() && (w & term.neg_mask()) == 0;
}

bool eval_formula(const Formula& formula, World w) {
    return std::any_of(formula.terms.begin(), formula.terms.end(),
                       [w](const Term& t) { return eval_term(t, w); });
}

WorldSet term_worlds(const Term& term) {
    WorldSet s(term.atom_count());
    if (term.contradictory()) return s;
    // Enumerate the subcube: fixed bits from the literals, every subset of the free bits.
    const World full = static_cast<World>(world_count(term.atom_count()) - 1);
    const World base = term.pos_mask();
    const World free_bits = full & ~(term.pos_mask() | term.neg_mask());
    World sub = free_bits;
    while (true) {
        s.insert(base | sub);
        if (sub == 0) break;
        sub = (sub - 1) & free_bits;
    }
    return s;
}

WorldSet formula_worlds(const Formula& formula) {
    WorldSet s(formula.atom_count());
    for (const Term& t : formula.terms) s |= term_worlds(t);
    return s;
}

Indicator indicator(const Conditional& conditional, World w) {
    if (!eval_formula(conditional.antecedent, w)) return Indicator::not_applicable;
    return eval_formula(conditional.consequent, w) ? Indicator::verifies : Indicator::falsifies;
}

FalsificationMatrix build_partitions(const KnowledgeBase& kb) {
    FalsificationMatrix fm;
    fm.atom_count = kb.atom_count();
    fm.verifying.reserve(kb.conditionals.size());
    fm.falsifying.reserve(kb.conditionals.size());
    for (const Conditional& c : kb.conditionals) {
        const WorldSet a = formula_worlds(c.antecedent);
        const WorldSet b = formula_worlds(c.consequent);
        fm.verifying.push_back(a & b);
        fm.falsifying.push_back(a - b);
    }
    return fm;
}

std::string render_world(World w, std::span<const Atom> atoms, WorldStyle style) {
    const int m = static_cast<int>(atoms.size());
    std::string out;
    for (const Atom& a : atoms) {
        if (style == WorldStyle::spaced && !out.empty()) out += ' ';
        if (!holds(w, a.index, m)) out += '-';
        out += a.name;
    }
    return out;
}

World parse_world(std::string_view text, std::span<const Atom> atoms) {
    const int m = static_cast<int>(atoms.size());
    std::vector<bool> seen(atoms.size(), false);
    World w = 0;
    std::istringstream in{std::string(text)};
    std::string lit;
    while (in >> lit) {
        bool positive = true;
        std::string_view name = lit;
        if (name.front() == '-' || name.front() == '!') {
            positive = false;
            name.remove_prefix(1);
        }
        const auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.name == name; });
        if (it == atoms.end()) throw std::invalid_argument("unknown atom in world: '" + lit + "'");
        if (seen[static_cast<std::size_t>(it->index - 1)]) {
            throw std::invalid_argument("atom listed twice in world: '" + it->name + "'");
        }
        seen[static_cast<std::size_t>(it->index - 1)] = true;
        if (positive) w |= World{1} << (m - it->index);
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("world must assign every atom: '" + std::string(text) + "'");
    }
    return w;
}

}  // namespace crep
