#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"

using namespace biposs;
using testutil::D;
using testutil::event_of;
using testutil::table_of;

namespace {

ComparativeRule pi_rule(const VariableTable& vars, const char* context, const char* conclusion) {
    return {RuleKind::Pi, parse_formula(context, vars), parse_formula(conclusion, vars)};
}

ComparativeRule delta_rule(const VariableTable& vars, const char* context,
                           const char* conclusion) {
    return {RuleKind::Delta, parse_formula(context, vars), parse_formula(conclusion, vars)};
}

/// Random rule whose positive part is satisfiable, so it is not rejected
/// up front.
ComparativeRule rand_rule(testutil::Rng& rng, const VariableTable& vars, RuleKind kind) {
    while (true) {
        const Formula context = testutil::rand_formula(rng, vars.size(), 2);
        const Formula conclusion = testutil::rand_formula(rng, vars.size(), 2);
        if (!(models(context, vars) & models(conclusion, vars)).empty())
            return {kind, context, conclusion};
    }
}

}  // namespace

TEST_CASE("an empty rule set yields the single-stratum partition", "[comparative]") {
    const VariableTable pq({"p", "q"});
    const WopResult upper = wop_upper(pq, {});
    REQUIRE(upper.consistent);
    REQUIRE(upper.partition.strata.size() == 1);
    CHECK(upper.partition.strata[0] == Event::all(4));

    const WopResult lower = wop_lower(pq, {});
    REQUIRE(lower.consistent);
    REQUIRE(lower.partition.strata.size() == 1);
    CHECK(lower.partition.strata[0] == Event::all(4));
}

TEST_CASE("upper stratification of a single default", "[comparative]") {
    const VariableTable bf({"b", "f"});
    const WopResult result = wop_upper(bf, {pi_rule(bf, "b", "f")});
    REQUIRE(result.consistent);
    REQUIRE(result.partition.strata.size() == 2);
    // bf, !bf, !b!f first; b!f demoted
    CHECK(result.partition.strata[0] == event_of(4, {0, 1, 3}));
    CHECK(result.partition.strata[1] == event_of(4, {2}));

    const auto d = wop_to_distribution(result.partition);
    CHECK(d.possibility(models(parse_formula("b & f", bf), bf)) >
          d.possibility(models(parse_formula("b & !f", bf), bf)));
}

TEST_CASE("contradicting defaults are rejected with their witnesses", "[comparative]") {
    const VariableTable pq({"p", "q"});
    const WopResult result = wop_upper(pq, {pi_rule(pq, "p", "q"), pi_rule(pq, "p", "!q")});
    REQUIRE_FALSE(result.consistent);
    CHECK(result.blocking == std::vector<std::size_t>{0, 1});

    const WopResult lower = wop_lower(pq, {delta_rule(pq, "p", "q"), delta_rule(pq, "p", "!q")});
    REQUIRE_FALSE(lower.consistent);
    CHECK(lower.blocking == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rules with an unsatisfiable positive part are degenerate", "[comparative]") {
    const VariableTable pq({"p", "q"});
    const WopResult upper = wop_upper(pq, {pi_rule(pq, "p & !p", "q")});
    REQUIRE_FALSE(upper.consistent);
    CHECK(upper.blocking == std::vector<std::size_t>{0});

    const WopResult lower = wop_lower(pq, {delta_rule(pq, "p", "false")});
    REQUIRE_FALSE(lower.consistent);
    CHECK(lower.blocking == std::vector<std::size_t>{0});
}

TEST_CASE("lower stratification reproduces the worked example", "[comparative]") {
    // G = {p ~> q, p ~> !r, q ~> r} over p,q,r; with worlds numbered by the
    // usual omega convention (omega_0 = pqr .. omega_7 = !p!q!r) the world
    // with index w here is omega_(7-w).
    const VariableTable pqr({"p", "q", "r"});
    const std::vector<ComparativeRule> rules{
        delta_rule(pqr, "p", "q"), delta_rule(pqr, "p", "!r"), delta_rule(pqr, "q", "r")};
    const WopResult result = wop_lower(pqr, rules);
    REQUIRE(result.consistent);
    REQUIRE(result.partition.strata.size() == 2);
    // E1 = {omega_0, omega_1, omega_3, omega_4} = worlds {7, 6, 4, 3}
    CHECK(result.partition.strata[0] == event_of(8, {3, 4, 6, 7}));
    // E2 = S1 = {omega_6, omega_7, omega_2, omega_5} = worlds {1, 0, 5, 2}
    CHECK(result.partition.strata[1] == event_of(8, {0, 1, 2, 5}));

    // the numeric embedding gives 1 to the top stratum, 1/2 to the other
    const auto d = wop_to_distribution(result.partition);
    CHECK(d.at(7) == Degree::one());       // omega_0
    CHECK(d.at(5) == D(1, 2));             // omega_2
    for (const auto& rule : rules) CHECK(rule_satisfied(rule, pqr, d));
}

TEST_CASE("global possibility comparisons encode as context rules", "[comparative]") {
    const VariableTable pq({"p", "q"});
    const ComparativeRule rule =
        global_comparison_rule(parse_formula("p", pq), parse_formula("q", pq));
    CHECK(rule.kind == RuleKind::Pi);
    CHECK(rule.context == parse_formula("p | q", pq));
    CHECK(rule.conclusion == parse_formula("!q", pq));

    const WopResult result = wop_upper(pq, {rule});
    REQUIRE(result.consistent);
    const auto d = wop_to_distribution(result.partition);
    CHECK(d.possibility(models(parse_formula("p & !q", pq), pq)) >
          d.possibility(models(parse_formula("q", pq), pq)));

    // comparing a formula against itself is unsatisfiable
    const ComparativeRule self =
        global_comparison_rule(parse_formula("p", pq), parse_formula("p", pq));
    CHECK_FALSE(wop_upper(pq, {self}).consistent);
}

TEST_CASE("numeric embedding of partitions", "[comparative]") {
    WellOrderedPartition one{{Event::all(4)}};
    CHECK(wop_to_distribution(one) == PossibilityDistribution(4, Degree::one()));

    WellOrderedPartition two{{event_of(4, {0, 1}), event_of(4, {2, 3})}};
    const auto d = wop_to_distribution(two);
    CHECK(d.at(0) == Degree::one());
    CHECK(d.at(3) == D(1, 2));
}

TEST_CASE("strata do not depend on rule order", "[comparative]") {
    testutil::Rng rng(5544);
    const VariableTable vars = table_of(3);
    for (int round = 0; round < 40; ++round) {
        std::vector<ComparativeRule> rules;
        const std::size_t count = 1 + testutil::pick(rng, 4);
        for (std::size_t i = 0; i < count; ++i) rules.push_back(rand_rule(rng, vars, RuleKind::Pi));
        const WopResult a = wop_upper(vars, rules);
        std::vector<ComparativeRule> shuffled = rules;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const WopResult b = wop_upper(vars, shuffled);
        REQUIRE(a.consistent == b.consistent);
        if (a.consistent) REQUIRE(a.partition.strata == b.partition.strata);
    }
}

TEST_CASE("consistent stratifications satisfy every constraint", "[comparative]") {
    testutil::Rng rng(987654);
    for (const RuleKind kind : {RuleKind::Pi, RuleKind::Delta}) {
        int produced = 0;
        while (produced < 120) {
            const std::size_t n = 1 + testutil::pick(rng, 4);
            const VariableTable vars = table_of(n);
            std::vector<ComparativeRule> rules;
            const std::size_t count = 1 + testutil::pick(rng, 4);
            for (std::size_t i = 0; i < count; ++i) rules.push_back(rand_rule(rng, vars, kind));
            const WopResult result =
                kind == RuleKind::Pi ? wop_upper(vars, rules) : wop_lower(vars, rules);
            if (!result.consistent) {
                REQUIRE_FALSE(result.blocking.empty());
                continue;
            }
            ++produced;
            const auto d = wop_to_distribution(result.partition);
            for (const auto& rule : rules) REQUIRE(rule_satisfied(rule, vars, d));
        }
    }
}

TEST_CASE("upper strata are minimally specific, lower maximally", "[comparative]") {
    testutil::Rng rng(24601);
    for (const RuleKind kind : {RuleKind::Pi, RuleKind::Delta}) {
        int produced = 0;
        while (produced < 60) {
            const std::size_t n = 1 + testutil::pick(rng, 3);
            const VariableTable vars = table_of(n);
            std::vector<ComparativeRule> rules;
            const std::size_t count = 1 + testutil::pick(rng, 4);
            for (std::size_t i = 0; i < count; ++i) rules.push_back(rand_rule(rng, vars, kind));
            const WopResult result =
                kind == RuleKind::Pi ? wop_upper(vars, rules) : wop_lower(vars, rules);
            if (!result.consistent || result.partition.strata.size() < 2) continue;
            ++produced;

            const auto& strata = result.partition.strata;
            const auto embedded = wop_to_distribution(result.partition);
            const std::size_t last = strata.size() - 1;
            for (std::size_t i = 0; i < strata.size(); ++i) {
                for (const auto w : strata[i].members()) {
                    // upper side: promoting any world one stratum up breaks
                    // a constraint; lower side: demoting one down does
                    const bool movable = kind == RuleKind::Pi ? i > 0 : i < last;
                    if (!movable) continue;
                    const std::size_t target = kind == RuleKind::Pi ? i - 1 : i + 1;
                    PossibilityDistribution moved = embedded;
                    moved.set(w, Degree(static_cast<std::int64_t>(strata.size() - target),
                                        static_cast<std::int64_t>(strata.size())));
                    const bool violated =
                        std::any_of(rules.begin(), rules.end(), [&](const ComparativeRule& r) {
                            return !rule_satisfied(r, vars, moved);
                        });
                    REQUIRE(violated);
                }
            }
        }
    }
}
