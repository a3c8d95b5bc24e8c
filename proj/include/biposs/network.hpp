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

/// DAG over binary variables with one (guaranteed, possibility) table per
/// node, covering both values of the node under every complete parent
/// instantiation.
class BipolarNetwork {
public:
    struct Node {
        std::string name;
        std::vector<std::string> parents;
        /// Indexed by entry_index(value, parent_bits); missing rows stay
        /// unset and are reported by validate().
        std::vector<std::optional<BipolarValue>> table;

        std::size_t context_count() const { return std::size_t{1} << parents.size(); }

        static std::size_t entry_index(bool value, std::size_t parent_bits,
                                       std::size_t parent_count) {
            return (value ? std::size_t{1} : 0) * (std::size_t{1} << parent_count) + parent_bits;
        }

        const std::optional<BipolarValue>& entry(bool value, std::size_t parent_bits) const {
            return table[entry_index(value, parent_bits, parents.size())];
        }

        /// Parent literals for a context, e.g. "x1 !x2"; "-" for roots.
        /// The first declared parent occupies the most significant bit.
        std::string context_label(std::size_t parent_bits) const {
            if (parents.empty()) return "-";
            std::string out;
            for (std::size_t i = 0; i < parents.size(); ++i) {
                if (i) out += ' ';
                if (!((parent_bits >> (parents.size() - 1 - i)) & 1u)) out += '!';
                out += parents[i];
            }
            return out;
        }
    };

    explicit BipolarNetwork(std::size_t max_vars = kDefaultMaxVariables)
        : max_vars_(max_vars) {}

    void add_node(std::string name, std::vector<std::string> parents) {
        if (nodes_.size() + 1 > max_vars_)
            throw LimitError("variable limit exceeded: more than " +
                             std::to_string(max_vars_) + " nodes");
        Node node{std::move(name), std::move(parents), {}};
        node.table.assign(2 * node.context_count(), std::nullopt);
        nodes_.push_back(std::move(node));
    }

    void set_entry(std::string_view node_name, bool value, std::size_t parent_bits,
                   BipolarValue bv) {
        Node& node = nodes_.at(require_node(node_name));
        node.table.at(Node::entry_index(value, parent_bits, node.parents.size())) = bv;
    }

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }

    std::optional<std::size_t> node_index(std::string_view name) const {
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].name == name) return i;
        return std::nullopt;
    }

    /// Node declaration order defines the interpretation order.
    VariableTable variable_table() const {
        std::vector<std::string> names;
        names.reserve(nodes_.size());
        for (const auto& n : nodes_) names.push_back(n.name);
        return VariableTable(std::move(names), max_vars_);
    }

private:
    std::size_t require_node(std::string_view name) const {
        const auto i = node_index(name);
        if (!i) throw std::invalid_argument("unknown node: '" + std::string(name) + "'");
        return *i;
    }

    std::vector<Node> nodes_;
    std::size_t max_vars_;
};

struct ValidationIssue {
    std::string node;
    std::string context;  // parent literals, "-" for roots, empty for structural issues
    std::string message;
};

struct ValidationReport {
    bool structural_ok = true;
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
};

/// Checks the DAG structure first (duplicate names, unknown parents,
/// cycles); table conditions are only examined on a structurally sound
/// network. Table conditions: totality, coherence (guaranteed <=
/// possibility per entry), and per-context normalization
/// (max possibility = 1, min guaranteed = 0 across the two values).
inline ValidationReport validate(const BipolarNetwork& net) {
    ValidationReport report;
    const auto& nodes = net.nodes();

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (nodes[i].name == nodes[j].name)
                report.issues.push_back({nodes[i].name, "", "duplicate node name"});
        for (std::size_t a = 0; a < nodes[i].parents.size(); ++a) {
            if (!net.node_index(nodes[i].parents[a]))
                report.issues.push_back(
                    {nodes[i].name, "", "unknown parent '" + nodes[i].parents[a] + "'"});
            for (std::size_t b = 0; b < a; ++b)
                if (nodes[i].parents[a] == nodes[i].parents[b])
                    report.issues.push_back(
                        {nodes[i].name, "", "duplicate parent '" + nodes[i].parents[a] + "'"});
        }
    }
    if (report.issues.empty()) {
        // Kahn's algorithm; anything not peeled off lies on a cycle.
        std::vector<std::size_t> indegree(nodes.size(), 0);
        for (const auto& node : nodes) indegree[*net.node_index(node.name)] = node.parents.size();
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (indegree[i] == 0) queue.push_back(i);
        std::size_t peeled = 0;
        while (!queue.empty()) {
            const std::size_t done = queue.back();
            queue.pop_back();
            ++peeled;
            for (std::size_t i = 0; i < nodes.size(); ++i)
                for (const auto& p : nodes[i].parents)
                    if (*net.node_index(p) == done && --indegree[i] == 0) queue.push_back(i);
        }
        if (peeled != nodes.size())
            for (std::size_t i = 0; i < nodes.size(); ++i)
                if (indegree[i] > 0)
                    report.issues.push_back({nodes[i].name, "", "node lies on a cycle"});
    }
    if (!report.issues.empty()) {
        report.structural_ok = false;
        return report;
    }

    for (const auto& node : nodes) {
        for (std::size_t ctx = 0; ctx < node.context_count(); ++ctx) {
            const auto& pos = node.entry(true, ctx);
            const auto& neg = node.entry(false, ctx);
            const std::string where = node.context_label(ctx);
            if (!pos || !neg) {
                report.issues.push_back({node.name, where, "missing table row"});
                continue;
            }
            for (const auto* side : {&*pos, &*neg})
                if (side->possibility < side->guaranteed)
                    report.issues.push_back(
                        {node.name, where,
                         "coherence violated: guaranteed " + side->guaranteed.str() +
                             " > possibility " + side->possibility.str()});
            if (!std::max(pos->possibility, neg->possibility).is_one())
                report.issues.push_back(
                    {node.name, where, "possibility normalization violated: max is " +
                                           std::max(pos->possibility, neg->possibility).str()});
            if (!std::min(pos->guaranteed, neg->guaranteed).is_zero())
                report.issues.push_back(
                    {node.name, where, "guaranteed normalization violated: min is " +
                                           std::min(pos->guaranteed, neg->guaranteed).str()});
        }
    }
    return report;
}

namespace detail {

/// Looks up each node's table entry selected by the world: the node's own
/// value and its parents' values, both read off the interpretation bits.
template <typename Fold>
void fold_entries(const BipolarNetwork& net, const VariableTable& vars, World w,
                  Fold&& fold) {
    const auto& nodes = net.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const bool value = vars.truth(w, i);
        std::size_t parent_bits = 0;
        for (const auto& p : nodes[i].parents)
            parent_bits = (parent_bits << 1) | (vars.truth(w, *net.node_index(p)) ? 1u : 0u);
        const auto& entry = nodes[i].entry(value, parent_bits);
        if (!entry) throw std::invalid_argument("network table is not total");
        fold(*entry);
    }
}

}  // namespace detail

/// Chain rule for the upper distribution: the minimum of the selected
/// conditional possibilities along each world.
inline PossibilityDistribution joint_upper(const BipolarNetwork& net) {
    const VariableTable vars = net.variable_table();
    PossibilityDistribution out(vars.world_count(), Degree::one());
    for (std::size_t w = 0; w < out.universe(); ++w) {
        Degree acc = Degree::one();
        detail::fold_entries(net, vars, static_cast<World>(w), [&](const BipolarValue& e) {
            acc = std::min(acc, e.possibility);
        });
        out.set(w, acc);
    }
    return out;
}

/// Chain rule for the lower distribution: the maximum of the selected
/// guaranteed degrees along each world. May exceed the upper joint; see
/// joint() for the repaired version.
inline PossibilityDistribution joint_lower_raw(const BipolarNetwork& net) {
    const VariableTable vars = net.variable_table();
    PossibilityDistribution out(vars.world_count(), Degree::zero());
    for (std::size_t w = 0; w < out.universe(); ++w) {
        Degree acc = Degree::zero();
        detail::fold_entries(net, vars, static_cast<World>(w), [&](const BipolarValue& e) {
            acc = std::max(acc, e.guaranteed);
        });
        out.set(w, acc);
    }
    return out;
}

/// Lower joint revised by the upper one, pointwise min; restores
/// consistency wherever the raw lower exceeds the upper.
inline PossibilityDistribution joint_lower_revised(const BipolarNetwork& net) {
    PossibilityDistribution upper = joint_upper(net);
    PossibilityDistribution lower = joint_lower_raw(net);
    for (std::size_t w = 0; w < lower.universe(); ++w)
        if (upper.at(w) < lower.at(w)) lower.set(w, upper.at(w));
    return lower;
}

/// Joint synthesis keeping the raw and revised lower distributions side by
/// side, with the worlds where the raw lower breaks consistency. Requires
/// a network that passes validate().
struct JointResult {
    PossibilityDistribution upper;
    PossibilityDistribution lower_raw;
    PossibilityDistribution lower_revised;
    std::vector<std::size_t> violations;
};

inline JointResult joint(const BipolarNetwork& net) {
    if (!validate(net).ok())
        throw std::invalid_argument("network failed validation; run validate() for details");
    PossibilityDistribution upper = joint_upper(net);
    PossibilityDistribution lower_raw = joint_lower_raw(net);
    PossibilityDistribution lower_revised = lower_raw;
    std::vector<std::size_t> violations = consistency_violations(lower_raw, upper);
    for (const std::size_t w : violations) lower_revised.set(w, upper.at(w));
    return {std::move(upper), std::move(lower_raw), std::move(lower_revised),
            std::move(violations)};
}

/// One local table entry whose guaranteed degree is no longer a lower
/// bound of the revised joint over its (value & context) worlds. The raw
/// lower joint never has such gaps; revision can introduce them. Reported
/// as a measurement only.
struct LocalBoundGap {
    std::string node;
    bool value;
    std::string context;
    Degree entry;
    Degree achieved;
};

inline std::vector<LocalBoundGap> revised_local_bound_gaps(const BipolarNetwork& net) {
    const JointResult jr = joint(net);
    const VariableTable vars = net.variable_table();
    std::vector<LocalBoundGap> out;
    const auto& nodes = net.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t ctx = 0; ctx < nodes[i].context_count(); ++ctx) {
            for (const bool value : {false, true}) {
                const auto& entry = nodes[i].entry(value, ctx);
                // worlds selecting this row
                Degree worst = Degree::one();
                bool seen = false;
                for (std::size_t w = 0; w < vars.world_count(); ++w) {
                    if (vars.truth(static_cast<World>(w), i) != value) continue;
                    std::size_t bits = 0;
                    for (const auto& p : nodes[i].parents)
                        bits = (bits << 1) |
                               (vars.truth(static_cast<World>(w), *net.node_index(p)) ? 1u : 0u);
                    if (bits != ctx) continue;
                    seen = true;
                    worst = std::min(worst, jr.lower_revised.at(w));
                }
                if (seen && worst < entry->guaranteed)
                    out.push_back({nodes[i].name, value, nodes[i].context_label(ctx),
                                   entry->guaranteed, worst});
            }
        }
    }
    return out;
}

}  // namespace biposs
