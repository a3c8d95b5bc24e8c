#pragma once

// Shared generators and brute-force oracles for the test suites. Oracles
// here stay on the definitional route (per-world truth evaluation, direct
// sup/inf loops) so they are independent of the set-algebra and compiled
// paths they check.

#include <cstdint>
#include <random>
#include <vector>

#include "biposs/biposs.hpp"

namespace testutil {

using biposs::Degree;
using biposs::Event;
using biposs::Formula;
using biposs::PossibilityDistribution;
using biposs::VariableTable;
using biposs::World;

using Rng = std::mt19937;

inline Degree D(std::int64_t num, std::int64_t den) { return Degree(num, den); }

inline std::size_t pick(Rng& rng, std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

inline Degree rand_degree(Rng& rng) {
    const std::int64_t den = 1 + static_cast<std::int64_t>(pick(rng, 10));
    const std::int64_t num = static_cast<std::int64_t>(pick(rng, static_cast<std::size_t>(den) + 1));
    return Degree(num, den);
}

inline VariableTable table_of(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    return VariableTable(std::move(names));
}

inline Event event_of(std::size_t universe, const std::vector<std::size_t>& worlds) {
    Event e = Event::none(universe);
    for (const auto w : worlds) e.insert(w);
    return e;
}

inline Event event_from_mask(std::size_t universe, std::uint32_t mask) {
    Event e = Event::none(universe);
    for (std::size_t w = 0; w < universe; ++w)
        if ((mask >> w) & 1u) e.insert(w);
    return e;
}

inline Event rand_event(Rng& rng, std::size_t universe) {
    Event e = Event::none(universe);
    for (std::size_t w = 0; w < universe; ++w)
        if (pick(rng, 2)) e.insert(w);
    return e;
}

inline Event rand_nonempty_event(Rng& rng, std::size_t universe) {
    Event e = rand_event(rng, universe);
    if (e.empty()) e.insert(pick(rng, universe));
    return e;
}

inline PossibilityDistribution rand_distribution(Rng& rng, std::size_t universe) {
    PossibilityDistribution d(universe);
    for (std::size_t w = 0; w < universe; ++w) d.set(w, rand_degree(rng));
    return d;
}

/// Lower <= upper pointwise by construction.
inline std::pair<PossibilityDistribution, PossibilityDistribution> rand_consistent_pair(
    Rng& rng, std::size_t universe) {
    PossibilityDistribution lower(universe);
    PossibilityDistribution upper(universe);
    for (std::size_t w = 0; w < universe; ++w) {
        Degree a = rand_degree(rng);
        Degree b = rand_degree(rng);
        if (b < a) std::swap(a, b);
        lower.set(w, a);
        upper.set(w, b);
    }
    return {std::move(lower), std::move(upper)};
}

inline Formula rand_formula(Rng& rng, std::size_t nvars, std::size_t depth) {
    if (depth == 0 || pick(rng, 4) == 0) {
        const std::size_t leaf = pick(rng, nvars + 2);
        if (leaf < nvars) return Formula::var(leaf);
        return Formula::constant(leaf == nvars);
    }
    switch (pick(rng, 4)) {
        case 0: return !rand_formula(rng, nvars, depth - 1);
        case 1: return rand_formula(rng, nvars, depth - 1) & rand_formula(rng, nvars, depth - 1);
        case 2: return rand_formula(rng, nvars, depth - 1) | rand_formula(rng, nvars, depth - 1);
        default:
            return implies(rand_formula(rng, nvars, depth - 1), rand_formula(rng, nvars, depth - 1));
    }
}

/// Definitional oracle for models(): per-world truth evaluation.
inline Event truth_table_models(const Formula& f, const VariableTable& vars) {
    Event e = Event::none(vars.world_count());
    for (std::size_t w = 0; w < vars.world_count(); ++w)
        if (biposs::eval(f, vars, static_cast<World>(w))) e.insert(w);
    return e;
}

/// Direct sup over the member list.
inline Degree brute_possibility(const PossibilityDistribution& d, const Event& A) {
    Degree best = Degree::zero();
    for (const auto w : A.members()) best = std::max(best, d.at(w));
    return best;
}

/// Direct inf over the member list.
inline Degree brute_guaranteed(const PossibilityDistribution& d, const Event& A) {
    Degree worst = Degree::one();
    for (const auto w : A.members()) worst = std::min(worst, d.at(w));
    return worst;
}

}  // namespace testutil
