#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace biposs;
using testutil::D;
using testutil::event_of;

namespace {

/// {a: 1, b: 0.6, c: 0.3} over a three-world universe.
PossibilityDistribution abc() {
    PossibilityDistribution d(3);
    d.set(0, Degree::one());
    d.set(1, D(6, 10));
    d.set(2, D(3, 10));
    return d;
}

/// The upper/lower joint tables of the three-variable network example,
/// worlds ordered !x1!x2!x3 .. x1x2x3.
BipolarPair example_pair() {
    PossibilityDistribution upper(8);
    PossibilityDistribution lower(8);
    const std::int64_t up[8] = {5, 5, 10, 5, 5, 5, 5, 5};
    const std::int64_t lo[8] = {45, 45, 45, 45, 40, 40, 0, 40};
    for (std::size_t w = 0; w < 8; ++w) {
        upper.set(w, D(up[w], 10));
        lower.set(w, D(lo[w], 100));
    }
    return BipolarPair(std::move(lower), std::move(upper));
}

}  // namespace

TEST_CASE("possibility is the sup with empty-set convention 0", "[measures]") {
    PossibilityDistribution ones(3, Degree::one());
    CHECK(ones.possibility(Event::all(3)) == Degree::one());
    CHECK(ones.possibility(Event::none(3)) == Degree::zero());
    CHECK(abc().possibility(event_of(3, {1, 2})) == D(6, 10));
}

TEST_CASE("guaranteed possibility is the inf with empty-set convention 1", "[measures]") {
    PossibilityDistribution ones(3, Degree::one());
    CHECK(ones.guaranteed(Event::all(3)) == Degree::one());
    CHECK(ones.guaranteed(Event::none(3)) == Degree::one());
    CHECK(abc().guaranteed(event_of(3, {1, 2})) == D(3, 10));
}

TEST_CASE("necessity and potential necessity are the exact duals", "[measures]") {
    PossibilityDistribution ones(3, Degree::one());
    CHECK(ones.necessity(event_of(3, {0, 1})) == Degree::zero());
    CHECK(ones.necessity(Event::all(3)) == Degree::one());
    const auto d = abc();
    CHECK(d.necessity(event_of(3, {0})) == D(4, 10));
    CHECK(d.potential_necessity(event_of(3, {0})) == D(7, 10));
}

TEST_CASE("bipolar evaluation reads lower and upper sides", "[measures]") {
    const BipolarPair pair = example_pair();
    const BipolarValue v = pair.eval(event_of(8, {7}));
    CHECK(v == BipolarValue{D(4, 10), D(5, 10)});
    CHECK_FALSE(v.degenerate());

    // empty event: the conventions collide and the value is flagged
    const BipolarValue empty = pair.eval(Event::none(8));
    CHECK(empty == BipolarValue{Degree::one(), Degree::zero()});
    CHECK(empty.degenerate());

    const BipolarPair vacuous(PossibilityDistribution(4, Degree::zero()),
                              PossibilityDistribution(4, Degree::one()));
    CHECK(vacuous.eval(event_of(4, {1, 2})) == BipolarValue{Degree::zero(), Degree::one()});
    const DualValue dv = vacuous.eval_dual(event_of(4, {1, 2}));
    CHECK(dv == DualValue{Degree::zero(), Degree::one()});
}

TEST_CASE("pair construction rejects lower above upper", "[measures]") {
    PossibilityDistribution lower(2, D(1, 2));
    PossibilityDistribution upper(2, D(1, 4));
    CHECK(consistency_violations(lower, upper) == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(BipolarPair(lower, upper), std::invalid_argument);
}

TEST_CASE("informedness order compares interval containment", "[measures]") {
    CHECK(compare_informedness({D(1, 2), D(1, 2)}, {Degree::zero(), Degree::one()}) ==
          Comparison::Less);
    CHECK(compare_informedness({D(3, 10), D(4, 10)}, {D(3, 10), D(4, 10)}) == Comparison::Equal);
    CHECK(compare_informedness({D(3, 10), D(4, 10)}, {D(2, 10), D(3, 10)}) ==
          Comparison::Incomparable);
}

TEST_CASE("possibility order compares componentwise", "[measures]") {
    CHECK(compare_possibility({Degree::zero(), Degree::zero()}, {D(1, 2), D(1, 4)}) ==
          Comparison::Less);
    CHECK(compare_possibility({D(4, 10), D(8, 10)}, {D(4, 10), D(9, 10)}) == Comparison::Less);
    CHECK(compare_possibility({D(2, 10), D(9, 10)}, {D(4, 10), D(8, 10)}) ==
          Comparison::Incomparable);
    // raw values are compared as given, no hidden validation
    CHECK(compare_possibility({D(5, 10), D(2, 10)}, {D(5, 10), D(2, 10)}) == Comparison::Equal);
}

TEST_CASE("unrelatedness tests are exact equalities", "[measures]") {
    const auto d = abc();
    // B = U with d normalized
    CHECK(unrelated_possibility(d, event_of(3, {0, 1}), Event::all(3)));
    // A = B, idempotence
    CHECK(unrelated_possibility(d, event_of(3, {1}), event_of(3, {1})));
    CHECK(unrelated_guaranteed(d, event_of(3, {1}), event_of(3, {1})));

    // {ab: 1, a!b: .2, !ab: .2, !a!b: .2}: a and b are unrelated
    PossibilityDistribution e(4, D(2, 10));
    e.set(3, Degree::one());
    const Event a = event_of(4, {2, 3});
    const Event b = event_of(4, {1, 3});
    CHECK(unrelated_possibility(e, a, b));
}

TEST_CASE("cuts of fuzzy sets and distributions", "[measures]") {
    const FuzzySet a({"x", "y"}, {D(3, 10), D(7, 10)});
    CHECK(a.weak_cut(Degree::zero()) == std::vector<std::size_t>{0, 1});
    CHECK(a.strict_cut(Degree::one()).empty());
    CHECK(a.weak_cut(D(1, 2)) == std::vector<std::size_t>{1});
    CHECK(a.strict_cut(D(1, 2)) == std::vector<std::size_t>{1});

    const auto d = abc();
    CHECK(d.weak_cut(Degree::zero()) == Event::all(3));
    CHECK(d.strict_cut(Degree::one()) == Event::none(3));
    CHECK(d.weak_cut(D(6, 10)) == event_of(3, {0, 1}));
    CHECK(d.strict_cut(D(6, 10)) == event_of(3, {0}));
}

TEST_CASE("cut nesting", "[measures]") {
    testutil::Rng rng(5150);
    for (int round = 0; round < 30; ++round) {
        const auto d = testutil::rand_distribution(rng, 8);
        const auto levels = d.levels();
        for (std::size_t i = 0; i < levels.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) {
                // levels[i] >= levels[j]
                CHECK(d.strict_cut(levels[i]).subset_of(d.strict_cut(levels[j])));
                CHECK(d.weak_cut(levels[i]).subset_of(d.weak_cut(levels[j])));
            }
    }
}

TEST_CASE("union decompositions hold for every event pair", "[measures]") {
    testutil::Rng rng(31337);
    for (const std::size_t universe : {2u, 4u, 8u}) {
        for (int round = 0; round < 6; ++round) {
            const auto d = testutil::rand_distribution(rng, universe);
            const std::uint32_t limit = 1u << universe;
            for (std::uint32_t ma = 0; ma < limit; ++ma)
                for (std::uint32_t mb = 0; mb < limit; ++mb) {
                    const Event a = testutil::event_from_mask(universe, ma);
                    const Event b = testutil::event_from_mask(universe, mb);
                    REQUIRE(d.possibility(a | b) ==
                            std::max(d.possibility(a), d.possibility(b)));
                    REQUIRE(d.guaranteed(a | b) ==
                            std::min(d.guaranteed(a), d.guaranteed(b)));
                }
        }
    }
}

TEST_CASE("union decompositions hold on random events of a large universe", "[measures]") {
    testutil::Rng rng(90210);
    const auto d = testutil::rand_distribution(rng, 1024);  // ten variables
    for (int round = 0; round < 300; ++round) {
        const Event a = testutil::rand_event(rng, 1024);
        const Event b = testutil::rand_event(rng, 1024);
        REQUIRE(d.possibility(a | b) == std::max(d.possibility(a), d.possibility(b)));
        REQUIRE(d.guaranteed(a | b) == std::min(d.guaranteed(a), d.guaranteed(b)));
    }
}

TEST_CASE("duality and the intersection laws of the dual pair", "[measures]") {
    testutil::Rng rng(777);
    const std::size_t universe = 8;
    for (int round = 0; round < 4; ++round) {
        auto [lower, upper] = testutil::rand_consistent_pair(rng, universe);
        const BipolarPair pair(lower, upper);
        const std::uint32_t limit = 1u << universe;
        for (std::uint32_t ma = 0; ma < limit; ++ma) {
            const Event a = testutil::event_from_mask(universe, ma);
            const BipolarValue cv = pair.eval(a.complement());
            const DualValue dv = pair.eval_dual(a);
            REQUIRE(dv.necessity == cv.possibility.complement());
            REQUIRE(dv.potential == cv.guaranteed.complement());
        }
        for (int pairs = 0; pairs < 3000; ++pairs) {
            const Event a = testutil::rand_event(rng, universe);
            const Event b = testutil::rand_event(rng, universe);
            const DualValue da = pair.eval_dual(a);
            const DualValue db = pair.eval_dual(b);
            const DualValue dab = pair.eval_dual(a & b);
            REQUIRE(dab.necessity == std::min(da.necessity, db.necessity));
            REQUIRE(dab.potential == std::max(da.potential, db.potential));
        }
    }
}

TEST_CASE("intersection inequalities", "[measures]") {
    testutil::Rng rng(424242);
    const std::size_t universe = 8;
    for (int round = 0; round < 5; ++round) {
        const auto d = testutil::rand_distribution(rng, universe);
        for (int pairs = 0; pairs < 4000; ++pairs) {
            const Event a = testutil::rand_event(rng, universe);
            const Event b = testutil::rand_event(rng, universe);
            REQUIRE(d.possibility(a & b) <= std::min(d.possibility(a), d.possibility(b)));
            REQUIRE(d.guaranteed(a & b) >= std::max(d.guaranteed(a), d.guaranteed(b)));
        }
    }
}

TEST_CASE("four-function bound under its normalization preconditions", "[measures]") {
    testutil::Rng rng(60601);
    const std::size_t universe = 4;
    for (int round = 0; round < 25; ++round) {
        auto [lower, upper] = testutil::rand_consistent_pair(rng, universe);
        upper.set(testutil::pick(rng, universe), Degree::one());
        lower.set(testutil::pick(rng, universe), Degree::zero());
        const BipolarPair pair(lower, upper);
        const Eq6Report report = check_eq6(pair);
        REQUIRE(report.applicable());
        const std::uint32_t limit = 1u << universe;
        for (std::uint32_t mask = 1; mask + 1 < limit; ++mask) {
            const Event a = testutil::event_from_mask(universe, mask);
            const BipolarValue bv = pair.eval(a);
            const DualValue dv = pair.eval_dual(a);
            REQUIRE(std::max(dv.necessity, bv.guaranteed) <=
                    std::min(bv.possibility, dv.potential));
        }
    }

    // precondition failure is reported, not repaired
    const BipolarPair all_half(PossibilityDistribution(3, D(1, 2)),
                               PossibilityDistribution(3, D(1, 2)));
    const Eq6Report report = check_eq6(all_half);
    CHECK_FALSE(report.upper_normalized);
    CHECK_FALSE(report.lower_vanishes);
    CHECK_FALSE(report.applicable());
}

TEST_CASE("measures are monotone under event inclusion", "[measures]") {
    testutil::Rng rng(11);
    const std::size_t universe = 8;
    const auto d = testutil::rand_distribution(rng, universe);
    for (int round = 0; round < 4000; ++round) {
        const Event b = testutil::rand_event(rng, universe);
        Event a = b;
        for (const auto w : b.members())
            if (testutil::pick(rng, 2)) a.erase(w);
        REQUIRE(d.possibility(a) <= d.possibility(b));
        REQUIRE(d.necessity(a) <= d.necessity(b));
        REQUIRE(d.guaranteed(a) >= d.guaranteed(b));
        REQUIRE(d.potential_necessity(a) >= d.potential_necessity(b));
    }
}
