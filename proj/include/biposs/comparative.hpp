#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "biposs/degree.hpp"
#include "biposs/distribution.hpp"
#include "biposs/logic.hpp"

namespace biposs {

enum class RuleKind {
    /// "in context a, b is more possible than !b":
    /// possibility(a & b) > possibility(a & !b), read on the upper side.
    Pi,
    /// the guaranteed-possibility analogue, read on the lower side:
    /// guaranteed(a & b) > guaranteed(a & !b).
    Delta,
};

struct ComparativeRule {
    RuleKind kind;
    Formula context;
    Formula conclusion;
};

/// Ordered partition E_1..E_n of the interpretation space; E_1 holds the
/// most possible worlds.
struct WellOrderedPartition {
    std::vector<Event> strata;

    std::size_t rank_of(std::size_t w) const {
        for (std::size_t i = 0; i < strata.size(); ++i)
            if (strata[i].contains(w)) return i;
        throw std::invalid_argument("world not covered by the partition");
    }
};

/// Result of a stratification: on failure `blocking` holds the indices of
/// the rules still unsatisfied when the construction stalled.
struct WopResult {
    bool consistent = false;
    WellOrderedPartition partition;
    std::vector<std::size_t> blocking;
};

/// Fixed numeric embedding of a partition with n strata: worlds in E_i get
/// degree (n-i+1)/n. Any strictly decreasing assignment would do; this one
/// is pinned so emitted tables are stable.
inline PossibilityDistribution wop_to_distribution(const WellOrderedPartition& wop) {
    if (wop.strata.empty()) throw std::invalid_argument("empty partition");
    const std::size_t n = wop.strata.size();
    PossibilityDistribution out(wop.strata.front().universe(), Degree::zero());
    for (std::size_t i = 0; i < n; ++i)
        for (const std::size_t w : wop.strata[i].members())
            out.set(w, Degree(static_cast<std::int64_t>(n - i),
                              static_cast<std::int64_t>(n)));
    return out;
}

/// The strict constraint expressed by a rule, evaluated on a distribution
/// with the sup/inf conventions for empty events.
inline bool rule_satisfied(const ComparativeRule& rule, const VariableTable& vars,
                           const PossibilityDistribution& d) {
    const Event ctx = models(rule.context, vars);
    const Event pro = ctx & models(rule.conclusion, vars);
    const Event con = ctx - pro;
    if (rule.kind == RuleKind::Pi) return d.possibility(con) < d.possibility(pro);
    return d.guaranteed(con) < d.guaranteed(pro);
}

namespace detail {

struct RuleEvents {
    std::size_t index;
    Event pro;  // models(context & conclusion)
    Event con;  // models(context & !conclusion)
};

inline std::vector<RuleEvents> rule_events(const VariableTable& vars,
                                           const std::vector<ComparativeRule>& rules,
                                           RuleKind expected) {
    std::vector<RuleEvents> out;
    out.reserve(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (rules[i].kind != expected)
            throw std::invalid_argument("rule kind does not match the requested stratification");
        const Event ctx = models(rules[i].context, vars);
        const Event pro = ctx & models(rules[i].conclusion, vars);
        out.push_back({i, pro, ctx - pro});
    }
    return out;
}

inline std::vector<std::size_t> indices_of(const std::vector<RuleEvents>& rules) {
    std::vector<std::size_t> out;
    out.reserve(rules.size());
    for (const auto& r : rules) out.push_back(r.index);
    return out;
}

}  // namespace detail

/// Least specific well-ordered partition satisfying a set of Pi-rules:
/// each round collects every unassigned world that sits in no remaining
/// rule's negative part, then drops the rules whose positive part reached
/// the new stratum. A round that assigns nothing while worlds remain means
/// the remaining rules are unsatisfiable together.
///
/// Rules whose positive part has no models are rejected up front: they ask
/// for possibility(empty) > x, which nothing satisfies.
inline WopResult wop_upper(const VariableTable& vars,
                           const std::vector<ComparativeRule>& rules) {
    auto active = detail::rule_events(vars, rules, RuleKind::Pi);
    WopResult result;
    for (const auto& r : active)
        if (r.pro.empty()) result.blocking.push_back(r.index);
    if (!result.blocking.empty()) return result;

    Event unassigned = Event::all(vars.world_count());
    while (!unassigned.empty()) {
        Event stratum = unassigned;
        for (const auto& r : active) stratum = stratum - r.con;
        if (stratum.empty()) {
            result.blocking = detail::indices_of(active);
            return result;
        }
        std::erase_if(active, [&](const detail::RuleEvents& r) {
            return r.pro.intersects(stratum);
        });
        result.partition.strata.push_back(stratum);
        unassigned = unassigned - stratum;
    }
    result.consistent = true;
    return result;
}

/// Most specific partition satisfying a set of Delta-rules. Strata are
/// built from the least possible end: each round collects the worlds in no
/// remaining rule's positive part, and a rule is discharged once its
/// negative part reaches a stratum (its positive part then lands strictly
/// higher). The collected sequence is reversed at the end so that E_1 is
/// again the most possible stratum.
///
/// Rules whose positive part has no models are rejected up front: with the
/// inf-over-empty convention their constraint degenerates and is not
/// order-expressible, so they are reported as blocking.
inline WopResult wop_lower(const VariableTable& vars,
                           const std::vector<ComparativeRule>& rules) {
    auto active = detail::rule_events(vars, rules, RuleKind::Delta);
    WopResult result;
    for (const auto& r : active)
        if (r.pro.empty()) result.blocking.push_back(r.index);
    if (!result.blocking.empty()) return result;

    Event remaining = Event::all(vars.world_count());
    std::vector<Event> upward;  // least possible first
    while (!remaining.empty()) {
        Event stratum = remaining;
        for (const auto& r : active) stratum = stratum - r.pro;
        if (stratum.empty()) {
            result.blocking = detail::indices_of(active);
            return result;
        }
        std::erase_if(active, [&](const detail::RuleEvents& r) {
            return r.con.intersects(stratum);
        });
        upward.push_back(stratum);
        remaining = remaining - stratum;
    }
    result.partition.strata.assign(upward.rbegin(), upward.rend());
    result.consistent = true;
    return result;
}

/// Encodes the global comparison possibility(A) > possibility(B) as the
/// context rule (a | b) -> !b, which expresses the equivalent constraint
/// possibility((A u B) & !B) > possibility(B).
inline ComparativeRule global_comparison_rule(const Formula& a, const Formula& b) {
    return {RuleKind::Pi, a | b, !b};
}

}  // namespace biposs
