#include <doctest.h>

#include <random>

#include "crep/kb.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace crep;

namespace {

using P = Polarity;

std::vector<P> polarities(const Term& t) {
    std::vector<P> out;
    for (int i = 1; i <= t.atom_count(); ++i) out.push_back(t.polarity(i));
    return out;
}

std::vector<Atom> penguin_atoms() { return penguins_kb().atoms; }

}  // namespace

TEST_CASE("penguin knowledge base term polarities") {
    const KnowledgeBase kb = penguins_kb();
    REQUIRE(kb.atom_count() == 5);
    REQUIRE(kb.rule_count() == 5);
    const std::vector<std::string> names{"p", "b", "f", "w", "k"};
    for (int i = 0; i < 5; ++i) {
        CHECK(kb.atoms[i].name == names[i]);
        CHECK(kb.atoms[i].index == i + 1);
    }

    const Conditional& r3 = kb.conditionals[2];
    CHECK(r3.id == 3);
    CHECK(r3.label == "r3");
    REQUIRE(r3.antecedent.terms.size() == 1);
    REQUIRE(r3.consequent.terms.size() == 1);
    CHECK(polarities(r3.antecedent.terms[0]) == std::vector<P>{P::pos, P::free, P::free, P::free, P::free});
    CHECK(polarities(r3.consequent.terms[0]) == std::vector<P>{P::free, P::free, P::neg, P::free, P::free});

    const Conditional& r1 = kb.conditionals[0];
    CHECK(polarities(r1.antecedent.terms[0]) == std::vector<P>{P::free, P::pos, P::free, P::free, P::free});
    CHECK(polarities(r1.consequent.terms[0]) == std::vector<P>{P::free, P::free, P::pos, P::free, P::free});
}

TEST_CASE("top antecedent parses to a single all-free term") {
    const KnowledgeBase kb = parse_kb("vars: a\nrule: (a | top)");
    REQUIRE(kb.atom_count() == 1);
    REQUIRE(kb.rule_count() == 1);
    const Formula& ante = kb.conditionals[0].antecedent;
    REQUIRE(ante.terms.size() == 1);
    CHECK(ante.terms[0].is_top());
    CHECK(kb.conditionals[0].label.empty());
}

TEST_CASE("labels and ids") {
    const KnowledgeBase kb = parse_kb("vars: b, f\nrule r1: (f | b)\nrule r2: (!f | b)");
    REQUIRE(kb.rule_count() == 2);
    CHECK(kb.conditionals[0].id == 1);
    CHECK(kb.conditionals[1].id == 2);
    CHECK(kb.conditionals[1].label == "r2");
    for (const Conditional& c : kb.conditionals) {
        REQUIRE(c.antecedent.terms.size() == 1);
        CHECK(polarities(c.antecedent.terms[0]) == std::vector<P>{P::pos, P::free});
    }
    CHECK(polarities(kb.conditionals[1].consequent.terms[0]) == std::vector<P>{P::free, P::neg});
}

TEST_CASE("parse_formula") {
    const std::vector<Atom> atoms = penguin_atoms();

    SUBCASE("single literal") {
        const Formula f = parse_formula("b", atoms);
        REQUIRE(f.terms.size() == 1);
        CHECK(polarities(f.terms[0]) == std::vector<P>{P::free, P::pos, P::free, P::free, P::free});
    }
    SUBCASE("conjunction") {
        const Formula f = parse_formula("p, !f", atoms);
        REQUIRE(f.terms.size() == 1);
        CHECK(polarities(f.terms[0]) == std::vector<P>{P::pos, P::free, P::neg, P::free, P::free});
    }
    SUBCASE("disjunction splits into terms") {
        const Formula f = parse_formula("b ; k", atoms);
        REQUIRE(f.terms.size() == 2);
        CHECK(polarities(f.terms[0]) == std::vector<P>{P::free, P::pos, P::free, P::free, P::free});
        CHECK(polarities(f.terms[1]) == std::vector<P>{P::free, P::free, P::free, P::free, P::pos});
    }
    SUBCASE("parentheses distribute over conjunction") {
        const Formula f = parse_formula("p, (b ; !k)", atoms);
        REQUIRE(f.terms.size() == 2);
        CHECK(polarities(f.terms[0]) == std::vector<P>{P::pos, P::pos, P::free, P::free, P::free});
        CHECK(polarities(f.terms[1]) == std::vector<P>{P::pos, P::free, P::free, P::free, P::neg});
    }
    SUBCASE("contradictory conjuncts vanish") {
        const Formula f = parse_formula("p, !p ; w", atoms);
        REQUIRE(f.terms.size() == 1);
        CHECK(polarities(f.terms[0]) == std::vector<P>{P::free, P::free, P::free, P::pos, P::free});
    }
    SUBCASE("bot is the canonical contradictory term") {
        for (const char* text : {"bot", "!top", "p, !p", "b, bot"}) {
            const Formula f = parse_formula(text, atoms);
            REQUIRE(f.terms.size() == 1);
            CHECK(f.terms[0] == Term::contradiction(5));
            CHECK(f.terms[0].polarity(1) == P::conflict);
        }
    }
    SUBCASE("negated constants") {
        const Formula f = parse_formula("!bot", atoms);
        REQUIRE(f.terms.size() == 1);
        CHECK(f.terms[0].is_top());
    }
}

TEST_CASE("parse errors carry positions") {
    const std::vector<Atom> atoms = penguin_atoms();

    auto error_at = [](auto&& fn) -> std::pair<int, int> {
        try {
            fn();
        } catch (const ParseError& e) {
            return {e.line(), e.column()};
        }
        FAIL("expected a ParseError");
        return {0, 0};
    };

    CHECK(error_at([&] { parse_formula("p, x", atoms); }) == std::pair{1, 4});
    CHECK(error_at([&] { parse_formula("!(p ; b)", atoms); }) == std::pair{1, 2});
    CHECK(error_at([&] { parse_formula("p |", atoms); }) == std::pair{1, 3});
    CHECK(error_at([&] { parse_formula("p,", atoms); }) == std::pair{1, 3});
    CHECK(error_at([&] { parse_formula("(p", atoms); }) == std::pair{1, 3});

    CHECK(error_at([] { parse_kb("vars: a, b\nrule (a | (b | a))"); }) == std::pair{2, 14});
    CHECK(error_at([] { parse_kb("vars: a, a"); }) == std::pair{1, 10});
    CHECK(error_at([] { parse_kb("vars:\nrule (a | top)"); }) == std::pair{1, 6});
    CHECK(error_at([] { parse_kb("rule (a | top)\nvars: a"); }) == std::pair{1, 1});
    CHECK(error_at([] { parse_kb("vars: a\nrule (b | a)"); }) == std::pair{2, 7});
    CHECK(error_at([] { parse_kb("vars: a\nvars: b"); }) == std::pair{2, 1});
    CHECK(error_at([] { parse_kb("vars: a\nrule (a | a) extra"); }) == std::pair{2, 14});
    CHECK(error_at([] { parse_kb("vars: a\nrule (a | a | a)"); }) == std::pair{2, 13});
    CHECK(error_at([] { parse_kb("vars: a\nrule (a)"); }) == std::pair{2, 8});
    CHECK(error_at([] { parse_kb("vars: top"); }) == std::pair{1, 7});
    CHECK(error_at([] { parse_kb("# nothing here\n"); }).second == 1);
    CHECK(error_at([] { parse_kb("vars: a\nfact a"); }) == std::pair{2, 1});
}

TEST_CASE("size caps") {
    std::string vars = "vars: ";
    for (int i = 1; i <= kMaxAtoms + 1; ++i) vars += (i > 1 ? ", x" : "x") + std::to_string(i);
    CHECK_THROWS_AS(parse_kb(vars), ParseError);

    std::string rules = "vars: a\n";
    for (int i = 0; i <= kMaxRules; ++i) rules += "rule (a | top)\n";
    CHECK_THROWS_AS(parse_kb(rules), ParseError);
}

TEST_CASE("comments, blank lines and CRLF") {
    const KnowledgeBase kb = parse_kb("# header\r\n\r\nvars: a, b  # atoms\r\n  rule (a | b)   \r\n");
    CHECK(kb.atom_count() == 2);
    CHECK(kb.rule_count() == 1);
    CHECK(kb.conditionals[0].consequent.source == "a");
    CHECK(kb.conditionals[0].antecedent.source == "b");
}

TEST_CASE("an empty rule list is a valid knowledge base") {
    const KnowledgeBase kb = load_kb_file(data_path("kb_empty.kb"));
    CHECK(kb.atom_count() == 1);
    CHECK(kb.rule_count() == 0);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_kb_file(data_path("does_not_exist.kb")), std::runtime_error);
}

TEST_CASE("render then parse is structurally identity") {
    const KnowledgeBase penguins = penguins_kb();
    CHECK(structurally_equal(parse_kb(render_kb(penguins)), penguins));

    const KnowledgeBase odd = parse_kb("vars: a, b, c\nrule x: (a, !b ; c | top)\nrule (bot | a ; !a)\n");
    CHECK(structurally_equal(parse_kb(render_kb(odd)), odd));

    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        const int m = std::uniform_int_distribution<int>(1, 5)(rng);
        const int n = std::uniform_int_distribution<int>(0, 4)(rng);
        const KnowledgeBase kb = parse_kb(oracle::random_kb_text(rng, m, n));
        const std::string text = render_kb(kb);
        const KnowledgeBase again = parse_kb(text);
        REQUIRE(structurally_equal(again, kb));
        CHECK(render_kb(again) == text);
        for (const Conditional& c : kb.conditionals) {
            REQUIRE_FALSE(c.antecedent.terms.empty());
            REQUIRE_FALSE(c.consequent.terms.empty());
            for (const Term& t : c.antecedent.terms) CHECK(t.atom_count() == m);
        }
    }
}
