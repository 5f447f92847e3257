#include "crep/ocf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace crep {

std::string to_string(const Rank& r) { return r.is_infinite() ? "inf" : std::to_string(r.value()); }

std::ostream& operator<<(std::ostream& os, const Rank& r) { return os << to_string(r); }

RankingFunction::RankingFunction(std::vector<Atom> atoms, KappaVector source, std::vector<std::uint64_t> ranks)
    : atoms_(std::move(atoms)), source_(std::move(source)), ranks_(std::move(ranks)) {
    if (ranks_.size() != world_count(atom_count())) {
        throw std::invalid_argument("rank table size does not match the alphabet");
    }
}

std::uint64_t RankingFunction::min_rank() const { return *std::min_element(ranks_.begin(), ranks_.end()); }

RankingFunction induced_ocf(const KnowledgeBase& kb, const KappaVector& v) {
    return induced_ocf(kb, build_partitions(kb), v);
}

RankingFunction induced_ocf(const KnowledgeBase& kb, const FalsificationMatrix& partitions, const KappaVector& v) {
    if (static_cast<int>(v.size()) != kb.rule_count() || partitions.rule_count() != kb.rule_count()) {
        throw std::invalid_argument("impact vector has " + std::to_string(v.size()) + " entries, expected " +
                                    std::to_string(kb.rule_count()));
    }
    std::vector<std::uint64_t> ranks(world_count(kb.atom_count()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto impact = static_cast<std::uint64_t>(v[i]);
        if (impact == 0) continue;
        partitions.falsifying[i].for_each([&](World w) { ranks[w] += impact; });
    }
    return RankingFunction(kb.atoms, v, std::move(ranks));
}

Rank rank_worlds(const RankingFunction& r, const WorldSet& worlds) {
    std::optional<std::uint64_t> best;
    worlds.for_each([&](World w) {
        if (!best || r.rank(w) < *best) best = r.rank(w);
    });
    return best ? Rank(*best) : Rank::infinity();
}

Rank rank_formula(const RankingFunction& r, const Formula& f) { return rank_worlds(r, formula_worlds(f)); }

ConditionalVerdict evaluate_conditional(const RankingFunction& r, const Conditional& c) {
    const WorldSet a = formula_worlds(c.antecedent);
    const WorldSet b = formula_worlds(c.consequent);
    const Rank ab = rank_worlds(r, a & b);
    const Rank a_not_b = rank_worlds(r, a - b);
    const Rank ra = std::min(ab, a_not_b);  // A is the disjoint union of AB and A!B
    const Rank cond = (ra.is_infinite() || ab.is_infinite()) ? Rank::infinity() : Rank(ab.value() - ra.value());
    return ConditionalVerdict{ab, a_not_b, cond, ab < a_not_b};
}

Rank rank_conditional(const RankingFunction& r, const Conditional& c) {
    const Rank ra = rank_formula(r, c.antecedent);
    if (ra.is_infinite()) return Rank::infinity();
    const Rank ab = rank_worlds(r, formula_worlds(c.antecedent) & formula_worlds(c.consequent));
    if (ab.is_infinite()) return Rank::infinity();
    return Rank(ab.value() - ra.value());
}

bool accepts(const RankingFunction& r, const Conditional& c) {
    const WorldSet a = formula_worlds(c.antecedent);
    const WorldSet b = formula_worlds(c.consequent);
    return rank_worlds(r, a & b) < rank_worlds(r, a - b);
}

namespace {

WorldStyle json_style(const RankingFunction& r) {
    const bool single = std::all_of(r.atoms().begin(), r.atoms().end(), [](const Atom& a) { return a.name.size() == 1; });
    return single ? WorldStyle::compact : WorldStyle::spaced;
}

}  // namespace

std::string ocf_table(const RankingFunction& r) {
    std::vector<std::string> names;
    std::size_t width = 0;
    for (World w = static_cast<World>(r.ranks().size()); w-- > 0;) {
        names.push_back(render_world(w, r.atoms()));
        width = std::max(width, names.back().size());
    }
    std::ostringstream out;
    World w = static_cast<World>(r.ranks().size());
    for (const std::string& name : names) {
        --w;
        out << name << std::string(width - name.size() + 2, ' ') << r.rank(w) << '\n';
    }
    return out.str();
}

std::string ocf_json(const RankingFunction& r) {
    const WorldStyle style = json_style(r);
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (World w = static_cast<World>(r.ranks().size()); w-- > 0;) {
        nlohmann::ordered_json rec;
        rec["world"] = render_world(w, r.atoms(), style);
        rec["rank"] = r.rank(w);
        records.push_back(std::move(rec));
    }
    return records.dump();
}

}  // namespace crep
