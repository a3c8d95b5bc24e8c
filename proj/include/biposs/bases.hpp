#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biposs/degree.hpp"
#include "biposs/distribution.hpp"
#include "biposs/logic.hpp"

namespace biposs {

struct WeightedFormula {
    Formula formula;
    Degree weight;
};

namespace detail {

/// Shared storage for the two base kinds: a set of positively weighted
/// formulas over one variable table. Duplicate (formula, weight) entries
/// are collapsed.
class WeightedBase {
public:
    explicit WeightedBase(VariableTable vars) : vars_(std::move(vars)) {}

    const VariableTable& vars() const { return vars_; }
    const std::vector<WeightedFormula>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    void add(Formula f, Degree weight) {
        if (weight.is_zero())
            throw std::invalid_argument("weighted base: zero weight is vacuous and rejected");
        for (const auto& e : entries_)
            if (e.weight == weight && e.formula == f) return;
        entries_.push_back({std::move(f), weight});
    }

private:
    VariableTable vars_;
    std::vector<WeightedFormula> entries_;
};

}  // namespace detail

/// Necessity-weighted formulas: entry (a, w) constrains N(models(a)) >= w.
class NecessityBase : public detail::WeightedBase {
public:
    using detail::WeightedBase::WeightedBase;
};

/// Guaranteed-possibility-weighted formulas: entry [b, w] constrains
/// guaranteed(models(b)) >= w.
class GuaranteedBase : public detail::WeightedBase {
public:
    using detail::WeightedBase::WeightedBase;
};

/// The least specific distribution satisfying every constraint of the
/// base: 1 on worlds satisfying all formulas, otherwise the complement of
/// the strongest violated weight. An inconsistent base compiles to a
/// subnormalized distribution (sup < 1); that is reported by callers, not
/// treated as an error here.
inline PossibilityDistribution compile_upper(const NecessityBase& base) {
    PossibilityDistribution out(base.vars().world_count(), Degree::one());
    for (const auto& entry : base.entries()) {
        const Event violators = models(entry.formula, base.vars()).complement();
        const Degree cap = entry.weight.complement();
        for (std::size_t w = 0; w < out.universe(); ++w)
            if (violators.contains(w) && cap < out.at(w)) out.set(w, cap);
    }
    return out;
}

/// The most specific distribution satisfying every guaranteed-possibility
/// constraint: each world gets the strongest weight among the formulas it
/// satisfies, 0 if it satisfies none.
inline PossibilityDistribution compile_lower(const GuaranteedBase& base) {
    PossibilityDistribution out(base.vars().world_count(), Degree::zero());
    for (const auto& entry : base.entries()) {
        const Event supporters = models(entry.formula, base.vars());
        for (std::size_t w = 0; w < out.universe(); ++w)
            if (supporters.contains(w) && out.at(w) < entry.weight) out.set(w, entry.weight);
    }
    return out;
}

/// Outcome of compiling a necessity base and a guaranteed base together:
/// either a consistent pair, or the worlds witnessing lower > upper.
struct PairResult {
    std::optional<BipolarPair> pair;
    std::vector<std::size_t> violations;

    bool ok() const { return pair.has_value(); }
};

inline PairResult make_bipolar_pair(const NecessityBase& sigma, const GuaranteedBase& xi) {
    if (!(sigma.vars() == xi.vars()))
        throw std::invalid_argument("bases use different variable tables");
    PossibilityDistribution lower = compile_lower(xi);
    PossibilityDistribution upper = compile_upper(sigma);
    auto bad = consistency_violations(lower, upper);
    if (!bad.empty()) return {std::nullopt, std::move(bad)};
    return {BipolarPair(std::move(lower), std::move(upper)), {}};
}

namespace detail {

struct Literal {
    std::size_t var;
    bool positive;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Flattens a formula that is a disjunction (`disjunctive` true) or a
/// conjunction of literals; nullopt when the formula has any other shape.
inline std::optional<std::vector<Literal>> flatten(const Formula& f, bool disjunctive) {
    const auto wanted = disjunctive ? Formula::Kind::Or : Formula::Kind::And;
    if (f.kind() == wanted) {
        auto left = flatten(f.lhs(), disjunctive);
        auto right = flatten(f.rhs(), disjunctive);
        if (!left || !right) return std::nullopt;
        left->insert(left->end(), right->begin(), right->end());
        return left;
    }
    if (f.kind() == Formula::Kind::Var) return std::vector<Literal>{{f.var_index(), true}};
    if (f.kind() == Formula::Kind::Not && f.lhs().kind() == Formula::Kind::Var)
        return std::vector<Literal>{{f.lhs().var_index(), false}};
    return std::nullopt;
}

inline Formula rebuild(const std::vector<Literal>& literals, bool disjunctive) {
    if (literals.empty()) return Formula::constant(!disjunctive);
    std::optional<Formula> acc;
    for (const auto& lit : literals) {
        Formula leaf = lit.positive ? Formula::var(lit.var) : !Formula::var(lit.var);
        if (!acc)
            acc = leaf;
        else
            acc = disjunctive ? (*acc | leaf) : (*acc & leaf);
    }
    return *acc;
}

inline WeightedFormula resolve(const WeightedFormula& c1, const WeightedFormula& c2,
                               std::size_t pivot, bool disjunctive) {
    const char* shape = disjunctive ? "a disjunction" : "a conjunction";
    const auto l1 = flatten(c1.formula, disjunctive);
    const auto l2 = flatten(c2.formula, disjunctive);
    if (!l1 || !l2)
        throw std::invalid_argument(std::string("resolution premise is not ") + shape +
                                    " of literals");
    const auto polarity = [pivot](const std::vector<Literal>& lits) -> std::optional<bool> {
        for (const auto& lit : lits)
            if (lit.var == pivot) return lit.positive;
        return std::nullopt;
    };
    const auto p1 = polarity(*l1);
    const auto p2 = polarity(*l2);
    if (!p1 || !p2 || *p1 == *p2)
        throw std::invalid_argument("premises do not share a complementary pivot literal");
    std::vector<Literal> merged;
    for (const auto* side : {&*l1, &*l2})
        for (const auto& lit : *side) {
            if (lit.var == pivot) continue;
            if (std::find(merged.begin(), merged.end(), lit) == merged.end())
                merged.push_back(lit);
        }
    return {rebuild(merged, disjunctive), std::min(c1.weight, c2.weight)};
}

}  // namespace detail

/// Weighted resolution on clauses: from (a|b, w1) and (!a|c, w2) derive
/// (b|c, min(w1,w2)). The caller designates the pivot variable; the empty
/// resolvent is the constant false.
inline WeightedFormula resolve_necessity(const WeightedFormula& c1, const WeightedFormula& c2,
                                         std::size_t pivot) {
    return detail::resolve(c1, c2, pivot, true);
}

/// The cut rule on conjunctions: from [a&b, w1] and [!a&c, w2] derive
/// [b&c, min(w1,w2)]; the empty resolvent is the constant true.
inline WeightedFormula resolve_guaranteed(const WeightedFormula& c1, const WeightedFormula& c2,
                                          std::size_t pivot) {
    return detail::resolve(c1, c2, pivot, false);
}

/// Disjunction of minterms denoting exactly this event.
inline Formula formula_from_event(const Event& A, const VariableTable& vars) {
    if (A.universe() != vars.world_count())
        throw std::invalid_argument("event universe does not match variable table");
    std::optional<Formula> acc;
    for (std::size_t w = 0; w < A.universe(); ++w) {
        if (!A.contains(w)) continue;
        std::optional<Formula> minterm;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            Formula leaf = vars.truth(static_cast<World>(w), v) ? Formula::var(v)
                                                                : !Formula::var(v);
            minterm = minterm ? (*minterm & leaf) : leaf;
        }
        if (!minterm) minterm = Formula::constant(true);  // zero variables
        acc = acc ? (*acc | *minterm) : *minterm;
    }
    return acc ? *acc : Formula::constant(false);
}

/// Reads a fuzzy set on the interpretation space as upper-type information:
/// one necessity constraint per attained membership level below 1. The
/// compiled distribution of the result reproduces the input exactly.
inline NecessityBase to_necessity_base(const PossibilityDistribution& A,
                                       const VariableTable& vars) {
    if (A.universe() != vars.world_count())
        throw std::invalid_argument("fuzzy set universe does not match variable table");
    NecessityBase base(vars);
    for (const auto& level : A.levels())
        if (!level.is_one())
            base.add(formula_from_event(A.strict_cut(level), vars), level.complement());
    return base;
}

/// The lower-type reading: one guaranteed-possibility constraint per
/// attained level above 0.
inline GuaranteedBase to_guaranteed_base(const PossibilityDistribution& A,
                                         const VariableTable& vars) {
    if (A.universe() != vars.world_count())
        throw std::invalid_argument("fuzzy set universe does not match variable table");
    GuaranteedBase base(vars);
    for (const auto& level : A.levels())
        if (!level.is_zero())
            base.add(formula_from_event(A.weak_cut(level), vars), level);
    return base;
}

}  // namespace biposs
