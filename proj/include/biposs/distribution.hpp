#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biposs/degree.hpp"
#include "biposs/logic.hpp"

namespace biposs {

/// Total mapping from the worlds of a finite universe to degrees.
/// The universe is abstract here; module `logic` supplies 2^n-world
/// universes, module `diagnosis` uses labeled attribute domains.
class PossibilityDistribution {
public:
    explicit PossibilityDistribution(std::size_t universe, Degree fill = Degree::zero())
        : table_(universe, fill) {
        if (universe == 0) throw std::invalid_argument("empty universe");
    }

    std::size_t universe() const { return table_.size(); }

    const Degree& at(std::size_t w) const { return table_.at(w); }
    void set(std::size_t w, Degree d) { table_.at(w) = d; }

    /// Possibility measure: sup over A, with the convention that the
    /// supremum over the empty set is 0.
    Degree possibility(const Event& A) const {
        check(A);
        Degree best = Degree::zero();
        for (std::size_t w = 0; w < table_.size(); ++w)
            if (A.contains(w)) best = std::max(best, table_[w]);
        return best;
    }

    /// Guaranteed possibility: inf over A, with inf over the empty set = 1.
    Degree guaranteed(const Event& A) const {
        check(A);
        Degree worst = Degree::one();
        for (std::size_t w = 0; w < table_.size(); ++w)
            if (A.contains(w)) worst = std::min(worst, table_[w]);
        return worst;
    }

    /// N(A) = 1 - possibility of the complement.
    Degree necessity(const Event& A) const {
        return possibility(A.complement()).complement();
    }

    /// The dual of guaranteed possibility: 1 - guaranteed(complement).
    Degree potential_necessity(const Event& A) const {
        return guaranteed(A.complement()).complement();
    }

    Degree sup() const {
        Degree best = Degree::zero();
        for (const auto& d : table_) best = std::max(best, d);
        return best;
    }

    bool is_normalized() const {
        for (const auto& d : table_)
            if (d.is_one()) return true;
        return false;
    }

    bool vanishes_somewhere() const {
        for (const auto& d : table_)
            if (d.is_zero()) return true;
        return false;
    }

    /// {w : table(w) >= alpha} viewed as an event.
    Event weak_cut(const Degree& alpha) const {
        Event e = Event::none(table_.size());
        for (std::size_t w = 0; w < table_.size(); ++w)
            if (table_[w] >= alpha) e.insert(w);
        return e;
    }

    /// {w : table(w) > alpha}.
    Event strict_cut(const Degree& alpha) const {
        Event e = Event::none(table_.size());
        for (std::size_t w = 0; w < table_.size(); ++w)
            if (table_[w] > alpha) e.insert(w);
        return e;
    }

    /// Distinct degrees appearing in the table, ascending.
    std::vector<Degree> levels() const {
        std::vector<Degree> out(table_);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const PossibilityDistribution& a,
                           const PossibilityDistribution& b) {
        return a.table_ == b.table_;
    }

private:
    void check(const Event& A) const {
        if (A.universe() != table_.size())
            throw std::invalid_argument("event universe does not match distribution");
    }

    std::vector<Degree> table_;
};

/// The (guaranteed, possibility) evaluation of an event under a bipolar
/// pair. For a consistent pair and a nonempty event, guaranteed <=
/// possibility; the empty event gives (1, 0) by the sup/inf conventions and
/// is flagged via degenerate() rather than rejected.
struct BipolarValue {
    Degree guaranteed;
    Degree possibility;

    bool degenerate() const { return possibility < guaranteed; }

    friend bool operator==(const BipolarValue&, const BipolarValue&) = default;
};

/// The dual (necessity, potential necessity) evaluation.
struct DualValue {
    Degree necessity;
    Degree potential;

    friend bool operator==(const DualValue&, const DualValue&) = default;
};

inline BipolarValue min_max(const BipolarValue& a, const BipolarValue& b) {
    return {std::min(a.guaranteed, b.guaranteed), std::max(a.possibility, b.possibility)};
}

inline BipolarValue max_min(const BipolarValue& a, const BipolarValue& b) {
    return {std::max(a.guaranteed, b.guaranteed), std::min(a.possibility, b.possibility)};
}

/// Worlds where `lower` exceeds `upper`, i.e. where the consistency
/// requirement fails.
inline std::vector<std::size_t> consistency_violations(
    const PossibilityDistribution& lower, const PossibilityDistribution& upper) {
    if (lower.universe() != upper.universe())
        throw std::invalid_argument("distribution universe mismatch");
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < lower.universe(); ++w)
        if (upper.at(w) < lower.at(w)) out.push_back(w);
    return out;
}

/// Consistent pair of a lower (guaranteed-possible) and an upper
/// (not-impossible) distribution; lower <= upper pointwise is enforced at
/// construction.
class BipolarPair {
public:
    BipolarPair(PossibilityDistribution lower, PossibilityDistribution upper)
        : lower_(std::move(lower)), upper_(std::move(upper)) {
        const auto bad = consistency_violations(lower_, upper_);
        if (!bad.empty())
            throw std::invalid_argument("inconsistent pair: lower > upper at " +
                                        std::to_string(bad.size()) + " world(s)");
    }

    const PossibilityDistribution& lower() const { return lower_; }
    const PossibilityDistribution& upper() const { return upper_; }

    BipolarValue eval(const Event& A) const {
        return {lower_.guaranteed(A), upper_.possibility(A)};
    }

    /// (N, nabla)(A) = 1 - (guaranteed, possibility)(complement of A),
    /// where 1 - (a, b) = (1 - b, 1 - a).
    DualValue eval_dual(const Event& A) const {
        const BipolarValue c = eval(A.complement());
        return {c.possibility.complement(), c.guaranteed.complement()};
    }

private:
    PossibilityDistribution lower_;
    PossibilityDistribution upper_;
};

enum class Comparison { Less, Greater, Equal, Incomparable };

/// "Better informed than": (a,b) below (c,d) when a >= c and b <= d,
/// i.e. the interval [a,b] is included in [c,d].
inline Comparison compare_informedness(const BipolarValue& v1, const BipolarValue& v2) {
    const bool le = v1.guaranteed >= v2.guaranteed && v1.possibility <= v2.possibility;
    const bool ge = v2.guaranteed >= v1.guaranteed && v2.possibility <= v1.possibility;
    if (le && ge) return Comparison::Equal;
    if (le) return Comparison::Less;
    if (ge) return Comparison::Greater;
    return Comparison::Incomparable;
}

/// "Less possible than": componentwise <= on (guaranteed, possibility).
inline Comparison compare_possibility(const BipolarValue& v1, const BipolarValue& v2) {
    const bool le = v1.guaranteed <= v2.guaranteed && v1.possibility <= v2.possibility;
    const bool ge = v2.guaranteed <= v1.guaranteed && v2.possibility <= v1.possibility;
    if (le && ge) return Comparison::Equal;
    if (le) return Comparison::Less;
    if (ge) return Comparison::Greater;
    return Comparison::Incomparable;
}

/// Possibilistic unrelatedness of A and B: the possibility of the
/// conjunction carries no information beyond the marginals.
inline bool unrelated_possibility(const PossibilityDistribution& d,
                                  const Event& A, const Event& B) {
    return d.possibility(A & B) == std::min(d.possibility(A), d.possibility(B));
}

inline bool unrelated_guaranteed(const PossibilityDistribution& d,
                                 const Event& A, const Event& B) {
    return d.guaranteed(A & B) == std::max(d.guaranteed(A), d.guaranteed(B));
}

/// Preconditions under which max(N(A), guaranteed(A)) <=
/// min(possibility(A), potential(A)) holds for every nonempty proper A:
/// the upper distribution must be normalized and the lower one must vanish
/// somewhere. Checking is opt-in; the library never adds worlds to force
/// the preconditions.
struct Eq6Report {
    bool upper_normalized = false;
    bool lower_vanishes = false;

    bool applicable() const { return upper_normalized && lower_vanishes; }
};

inline Eq6Report check_eq6(const BipolarPair& pair) {
    return {pair.upper().is_normalized(), pair.lower().vanishes_somewhere()};
}

/// Fuzzy subset of a small labeled domain.
struct FuzzySet {
    std::vector<std::string> domain;
    std::vector<Degree> grade;

    FuzzySet() = default;

    FuzzySet(std::vector<std::string> domain_, std::vector<Degree> grade_)
        : domain(std::move(domain_)), grade(std::move(grade_)) {
        if (domain.size() != grade.size())
            throw std::invalid_argument("fuzzy set: domain/grade size mismatch");
    }

    static FuzzySet constant(std::vector<std::string> domain_, Degree value) {
        const std::size_t n = domain_.size();
        return FuzzySet(std::move(domain_), std::vector<Degree>(n, value));
    }

    std::size_t size() const { return domain.size(); }
    const Degree& at(std::size_t i) const { return grade.at(i); }

    Degree height() const {
        Degree best = Degree::zero();
        for (const auto& d : grade) best = std::max(best, d);
        return best;
    }

    bool is_normalized() const {
        for (const auto& d : grade)
            if (d.is_one()) return true;
        return false;
    }

    std::vector<std::size_t> weak_cut(const Degree& alpha) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < grade.size(); ++i)
            if (grade[i] >= alpha) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> strict_cut(const Degree& alpha) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < grade.size(); ++i)
            if (grade[i] > alpha) out.push_back(i);
        return out;
    }

    friend bool operator==(const FuzzySet&, const FuzzySet&) = default;
};

}  // namespace biposs
