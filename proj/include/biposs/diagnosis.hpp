#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biposs/degree.hpp"
#include "biposs/distribution.hpp"

namespace biposs {

/// Finite ordered domain of one attribute (e.g. discretized fever values).
struct AttributeDomain {
    std::string name;
    std::vector<std::string> values;
};

/// Consistent pair of effect profiles of one cause on one attribute:
/// `lower` grades the values guaranteed to be possible effects, `upper`
/// the values not impossible as effects.
struct ProfilePair {
    FuzzySet lower;
    FuzzySet upper;
};

struct CauseModel {
    std::string name;
    std::map<std::string, ProfilePair> profiles;  // keyed by attribute name
};

/// Fuzzy observations, at most one per attribute.
struct Observation {
    std::map<std::string, FuzzySet> attributes;
};

/// Goedel implication: full membership when x <= y, otherwise y.
inline Degree godel_implication(const Degree& x, const Degree& y) {
    if (x <= y) return Degree::one();
    return y;
}

namespace detail {

inline void require_same_domain(const FuzzySet& a, const FuzzySet& b) {
    if (a.domain != b.domain)
        throw std::invalid_argument("fuzzy sets are over different attribute domains");
}

}  // namespace detail

/// Consistency of an observation with an upper effect profile: sup-min
/// overlap. For a crisp observation this is the possibility of the
/// observed subset under the profile.
inline Degree consistency_index(const FuzzySet& obs, const FuzzySet& upper) {
    detail::require_same_domain(obs, upper);
    Degree best = Degree::zero();
    for (std::size_t i = 0; i < obs.size(); ++i)
        best = std::max(best, std::min(obs.at(i), upper.at(i)));
    return best;
}

/// Relevance of a cause for an observation: inf of the Goedel implication
/// from observation membership into the lower profile. For a crisp
/// observation this is the guaranteed possibility of the observed subset.
inline Degree relevance_index(const FuzzySet& obs, const FuzzySet& lower) {
    detail::require_same_domain(obs, lower);
    Degree worst = Degree::one();
    for (std::size_t i = 0; i < obs.size(); ++i)
        worst = std::min(worst, godel_implication(obs.at(i), lower.at(i)));
    return worst;
}

struct CauseScore {
    std::string cause;
    Degree cons;
    Degree rel;
};

/// Scores every cause against the observation and ranks by consistency,
/// relevance refining ties, cause name breaking the rest. Per cause both
/// indices combine observed attributes by min; an attribute the cause has
/// no profile for contributes the vacuous pair (lower = 0, upper = 1). An
/// observation with no attributes scores (1, 1) everywhere.
inline std::vector<CauseScore> rank_causes(const std::vector<CauseModel>& causes,
                                           const Observation& obs) {
    std::vector<CauseScore> out;
    out.reserve(causes.size());
    for (const auto& cause : causes) {
        Degree cons = Degree::one();
        Degree rel = Degree::one();
        for (const auto& [attribute, observed] : obs.attributes) {
            const auto it = cause.profiles.find(attribute);
            if (it == cause.profiles.end()) {
                const FuzzySet upper = FuzzySet::constant(observed.domain, Degree::one());
                const FuzzySet lower = FuzzySet::constant(observed.domain, Degree::zero());
                cons = std::min(cons, consistency_index(observed, upper));
                rel = std::min(rel, relevance_index(observed, lower));
            } else {
                cons = std::min(cons, consistency_index(observed, it->second.upper));
                rel = std::min(rel, relevance_index(observed, it->second.lower));
            }
        }
        out.push_back({cause.name, cons, rel});
    }
    std::sort(out.begin(), out.end(), [](const CauseScore& a, const CauseScore& b) {
        if (a.cons != b.cons) return b.cons < a.cons;
        if (a.rel != b.rel) return b.rel < a.rel;
        return a.cause < b.cause;
    });
    return out;
}

/// Profile-pair coherence gaps (lower > upper) of one cause model, as
/// "attribute/value" strings.
inline std::vector<std::string> profile_coherence_issues(const CauseModel& cause) {
    std::vector<std::string> out;
    for (const auto& [attribute, pair] : cause.profiles) {
        if (pair.lower.domain != pair.upper.domain) {
            out.push_back(attribute + ": profile domains differ");
            continue;
        }
        for (std::size_t i = 0; i < pair.lower.size(); ++i)
            if (pair.upper.at(i) < pair.lower.at(i))
                out.push_back(attribute + "/" + pair.lower.domain[i] + ": lower " +
                              pair.lower.at(i).str() + " > upper " + pair.upper.at(i).str());
    }
    return out;
}

}  // namespace biposs
