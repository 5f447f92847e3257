#include <doctest.h>

#include <random>

#include "crep/worlds.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace crep;

TEST_CASE("first declared atom is the most significant bit") {
    const KnowledgeBase kb = penguins_kb();
    CHECK(parse_world("p -b -f -w -k", kb.atoms) == 0b10000u);
    CHECK(parse_world("-p -b -f -w k", kb.atoms) == 0b00001u);
    CHECK(parse_world("p b f w k", kb.atoms) == 31u);
    CHECK(render_world(0b11010u, kb.atoms) == "p b -f w -k");
    CHECK(render_world(0b11010u, kb.atoms, WorldStyle::compact) == "pb-fw-k");
    CHECK_THROWS_AS(parse_world("p b f w", kb.atoms), std::invalid_argument);
    CHECK_THROWS_AS(parse_world("p b f w k p", kb.atoms), std::invalid_argument);
    CHECK_THROWS_AS(parse_world("p b f w z", kb.atoms), std::invalid_argument);
}

TEST_CASE("eval_term") {
    const KnowledgeBase kb = penguins_kb();
    const World pbfwk = parse_world("p b f w k", kb.atoms);
    const World not_p = parse_world("-p b f w k", kb.atoms);

    CHECK(eval_term(parse_formula("b", kb.atoms).terms[0], pbfwk));
    CHECK_FALSE(eval_term(parse_formula("p, !f", kb.atoms).terms[0], not_p));
    for (World w = 0; w < 32; ++w) {
        CHECK(eval_term(Term::top(5), w));
        CHECK_FALSE(eval_term(Term::contradiction(5), w));
    }
}

TEST_CASE("formula_worlds") {
    const KnowledgeBase kb = penguins_kb();
    const WorldSet b = formula_worlds(parse_formula("b", kb.atoms));
    CHECK(b.count() == 16);
    b.for_each([&](World w) { CHECK(holds(w, 2, 5)); });

    CHECK(formula_worlds(parse_formula("top", kb.atoms)) == WorldSet::all(5));
    CHECK(formula_worlds(parse_formula("bot", kb.atoms)).empty());

    // p & !f: brute-force count over all 32 worlds.
    const Formula pnf = parse_formula("p, !f", kb.atoms);
    std::size_t expected = 0;
    for (unsigned w = 0; w < 32; ++w) expected += oracle::satisfies(pnf, w) ? 1 : 0;
    CHECK(expected == 8);
    CHECK(formula_worlds(pnf).count() == expected);
}

TEST_CASE("formula_worlds distributes over disjunction and conjunction") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> atom_count(1, 8);
    for (int round = 0; round < 100; ++round) {
        const int m = atom_count(rng);
        const KnowledgeBase kb = parse_kb(oracle::random_kb_text(rng, m, 2));
        const auto& c1 = kb.conditionals[0];
        const auto& c2 = kb.conditionals[1];
        const std::string f1 = render_formula(c1.antecedent, kb.atoms);
        const std::string f2 = render_formula(c2.consequent, kb.atoms);
        const WorldSet w1 = formula_worlds(c1.antecedent);
        const WorldSet w2 = formula_worlds(c2.consequent);
        CHECK(formula_worlds(parse_formula("(" + f1 + ") ; (" + f2 + ")", kb.atoms)) == (w1 | w2));
        CHECK(formula_worlds(parse_formula("(" + f1 + "), (" + f2 + ")", kb.atoms)) == (w1 & w2));
        for (World w = 0; w < world_count(m); ++w) {
            REQUIRE(w1.contains(w) == oracle::satisfies(c1.antecedent, w));
        }
    }
}

TEST_CASE("indicator") {
    const KnowledgeBase kb = parse_kb("vars: p, b, f, w, k\nrule (f | b)");
    const Conditional& fb = kb.conditionals[0];
    CHECK(indicator(fb, parse_world("-p b f w k", kb.atoms)) == Indicator::verifies);
    CHECK(indicator(fb, parse_world("p b -f w k", kb.atoms)) == Indicator::falsifies);
    CHECK(indicator(fb, parse_world("-p -b f w k", kb.atoms)) == Indicator::not_applicable);
}

TEST_CASE("build_partitions on the penguin knowledge base") {
    const KnowledgeBase kb = penguins_kb();
    const FalsificationMatrix fm = build_partitions(kb);
    REQUIRE(fm.rule_count() == 5);

    auto oracle_count = [&](int rule, oracle::Ind want) {
        std::size_t c = 0;
        for (unsigned w = 0; w < 32; ++w) c += oracle::indicator(kb.conditionals[rule], w) == want ? 1 : 0;
        return c;
    };
    // (!f | p)
    CHECK(oracle_count(2, oracle::Ind::verifies) == 8);
    CHECK(oracle_count(2, oracle::Ind::falsifies) == 8);
    CHECK(fm.verifying[2].count() == 8);
    CHECK(fm.falsifying[2].count() == 8);
    // (f | b)
    CHECK(fm.verifying[0].count() == 8);
    CHECK(fm.falsifying[0].count() == 8);
    fm.verifying[0].for_each([](World w) { CHECK((holds(w, 2, 5) && holds(w, 3, 5))); });
    fm.falsifying[0].for_each([](World w) { CHECK((holds(w, 2, 5) && !holds(w, 3, 5))); });
}

TEST_CASE("unsatisfiable antecedent yields empty partitions") {
    const KnowledgeBase kb = parse_kb("vars: a\nrule (a | bot)");
    const FalsificationMatrix fm = build_partitions(kb);
    CHECK(fm.verifying[0].empty());
    CHECK(fm.falsifying[0].empty());
}

TEST_CASE("partitions agree with the pointwise indicator and tri-partition the worlds") {
    std::mt19937 rng(3);
    for (int round = 0; round < 60; ++round) {
        const int m = std::uniform_int_distribution<int>(1, 10)(rng);
        const int n = std::uniform_int_distribution<int>(1, 4)(rng);
        const KnowledgeBase kb = parse_kb(oracle::random_kb_text(rng, m, n));
        const FalsificationMatrix fm = build_partitions(kb);
        for (int i = 0; i < n; ++i) {
            const Conditional& c = kb.conditionals[i];
            CHECK((fm.verifying[i] & fm.falsifying[i]).empty());
            for (World w = 0; w < world_count(m); ++w) {
                const oracle::Ind expected = oracle::indicator(c, w);
                const Indicator got = indicator(c, w);
                const bool v = fm.verifying[i].contains(w);
                const bool f = fm.falsifying[i].contains(w);
                REQUIRE((v ? 1 : 0) + (f ? 1 : 0) + (got == Indicator::not_applicable ? 1 : 0) == 1);
                REQUIRE(v == (expected == oracle::Ind::verifies));
                REQUIRE(f == (expected == oracle::Ind::falsifies));
                REQUIRE(v == (got == Indicator::verifies));
            }
        }
    }
}

TEST_CASE("world set algebra") {
    WorldSet a(7);
    WorldSet b(7);
    for (World w = 0; w < 128; w += 3) a.insert(w);
    for (World w = 0; w < 128; w += 5) b.insert(w);
    std::size_t both = 0;
    std::size_t either = 0;
    for (World w = 0; w < 128; ++w) {
        both += (w % 15 == 0) ? 1 : 0;
        either += (w % 3 == 0 || w % 5 == 0) ? 1 : 0;
    }
    CHECK((a & b).count() == both);
    CHECK((a | b).count() == either);
    CHECK((a - b).count() == a.count() - both);
    CHECK(WorldSet::all(7).count() == 128);
    CHECK(WorldSet::all(3).count() == 8);
    CHECK_THROWS_AS(a |= WorldSet(6), std::invalid_argument);
}
