#pragma once

#include <cassert>
#include <stdexcept>

#include "biposs/degree.hpp"
#include "biposs/distribution.hpp"
#include "biposs/logic.hpp"

namespace biposs {

namespace detail {

inline void require_evidence(const Event& A) {
    if (A.empty()) throw std::invalid_argument("conditioning on the empty event");
}

}  // namespace detail

/// Qualitative conditional possibility: the greatest solution of
/// possibility(A & B) = min(possibility(B|A), possibility(A)).
/// Evidence with possibility 0 is allowed (every hypothesis then gets 1);
/// only empty evidence is rejected.
inline Degree cond_possibility(const PossibilityDistribution& d, const Event& A,
                               const Event& B) {
    detail::require_evidence(A);
    const Degree joint = d.possibility(A & B);
    const Degree margin = d.possibility(A);
    // the two branches are exhaustive: margin == max(joint, possibility(A & ~B))
    assert(margin == std::max(joint, d.possibility(A & B.complement())));
    if (joint == margin) return Degree::one();
    return joint;
}

/// Conditional distribution: A-worlds at the plateau of A are promoted to
/// 1, other A-worlds keep their degree, worlds outside A drop to 0. Always
/// normalized for nonempty A.
inline PossibilityDistribution cond_distribution(const PossibilityDistribution& d,
                                                 const Event& A) {
    detail::require_evidence(A);
    const Degree margin = d.possibility(A);
    PossibilityDistribution out(d.universe(), Degree::zero());
    for (std::size_t w = 0; w < d.universe(); ++w) {
        if (!A.contains(w)) continue;
        out.set(w, d.at(w) == margin ? Degree::one() : d.at(w));
    }
    return out;
}

inline Degree cond_necessity(const PossibilityDistribution& d, const Event& A,
                             const Event& B) {
    return cond_possibility(d, A, B.complement()).complement();
}

/// Conditional guaranteed possibility: the smallest solution of
/// guaranteed(A & B) = max(guaranteed(B|A), guaranteed(A)).
inline Degree cond_guaranteed(const PossibilityDistribution& d, const Event& A,
                              const Event& B) {
    detail::require_evidence(A);
    const Degree joint = d.guaranteed(A & B);
    const Degree margin = d.guaranteed(A);
    assert(margin == std::min(joint, d.guaranteed(A & B.complement())));
    if (margin < joint) return joint;
    return Degree::zero();
}

/// Bipolar conditioning: guaranteed part from the lower distribution,
/// possibility part from the upper one. Satisfies
/// max_min(result, pair.eval(A)) == pair.eval(A & B).
inline BipolarValue cond_bipolar(const BipolarPair& pair, const Event& A, const Event& B) {
    return {cond_guaranteed(pair.lower(), A, B), cond_possibility(pair.upper(), A, B)};
}

}  // namespace biposs
