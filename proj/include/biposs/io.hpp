#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "biposs/bases.hpp"
#include "biposs/comparative.hpp"
#include "biposs/diagnosis.hpp"
#include "biposs/distribution.hpp"
#include "biposs/errors.hpp"
#include "biposs/logic.hpp"
#include "biposs/network.hpp"

namespace biposs::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

[[noreturn]] inline void fail(std::string_view file, std::size_t line, const std::string& message) {
    throw ParseError(std::string(file) + ":" + std::to_string(line) + ": " + message, line, 0);
}

/// Content lines of a stream with their 1-based numbers; '#' comments and
/// blank lines removed.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::string_view s = raw;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (!s.empty()) out.emplace_back(number, std::string(s));
    }
    return out;
}

inline Degree parse_degree(std::string_view text, std::string_view file, std::size_t line) {
    const auto d = Degree::parse(trim(text));
    if (!d) fail(file, line, "invalid degree '" + std::string(trim(text)) + "'");
    return *d;
}

inline Formula parse_formula_at(std::string_view text, const VariableTable& vars,
                                std::string_view file, std::size_t line) {
    try {
        return parse_formula(trim(text), vars);
    } catch (const ParseError& e) {
        fail(file, line, e.what());
    }
}

inline VariableTable parse_vars_line(std::string_view body, std::size_t max_vars,
                                     std::string_view file, std::size_t line) {
    try {
        return VariableTable(split_words(body), max_vars);
    } catch (const LimitError&) {
        throw;  // carries its own message; the CLI maps it to the limit exit code
    } catch (const std::invalid_argument& e) {
        fail(file, line, e.what());
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// base files: `vars: p q`, then `N: <formula> : <weight>` / `D: ... : ...`
// ---------------------------------------------------------------------------

struct BaseFile {
    VariableTable vars;
    NecessityBase sigma;
    GuaranteedBase xi;

    explicit BaseFile(VariableTable v) : vars(v), sigma(v), xi(std::move(v)) {}
};

inline BaseFile parse_base_file(std::istream& in, std::string_view file,
                                std::size_t max_vars = kDefaultMaxVariables) {
    const auto lines = detail::content_lines(in);
    if (lines.empty() || !lines.front().second.starts_with("vars:"))
        detail::fail(file, lines.empty() ? 1 : lines.front().first,
                     "expected a 'vars:' declaration first");
    BaseFile out(detail::parse_vars_line(std::string_view(lines.front().second).substr(5),
                                         max_vars, file, lines.front().first));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line, text] = lines[i];
        const bool necessity = text.starts_with("N:");
        const bool guaranteed = text.starts_with("D:");
        if (!necessity && !guaranteed)
            detail::fail(file, line, "expected 'N: <formula> : <weight>' or 'D: ...'");
        const std::string_view body = std::string_view(text).substr(2);
        const auto colon = body.rfind(':');
        if (colon == std::string_view::npos)
            detail::fail(file, line, "missing ': <weight>'");
        const Formula f = detail::parse_formula_at(body.substr(0, colon), out.vars, file, line);
        const Degree w = detail::parse_degree(body.substr(colon + 1), file, line);
        if (w.is_zero())
            detail::fail(file, line, "zero weight is vacuous and rejected");
        if (necessity)
            out.sigma.add(f, w);
        else
            out.xi.add(f, w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// rule files: `vars: ...`, then `PI: <formula> -> <formula>` or
// `GD: <formula> ~> <formula>`
// ---------------------------------------------------------------------------

struct RulesFile {
    VariableTable vars;
    std::vector<ComparativeRule> rules;
};

inline RulesFile parse_rules_file(std::istream& in, std::string_view file,
                                  std::size_t max_vars = kDefaultMaxVariables) {
    const auto lines = detail::content_lines(in);
    if (lines.empty() || !lines.front().second.starts_with("vars:"))
        detail::fail(file, lines.empty() ? 1 : lines.front().first,
                     "expected a 'vars:' declaration first");
    RulesFile out{detail::parse_vars_line(std::string_view(lines.front().second).substr(5),
                                          max_vars, file, lines.front().first),
                  {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [line, text] = lines[i];
        RuleKind kind;
        std::string_view arrow;
        if (text.starts_with("PI:")) {
            kind = RuleKind::Pi;
            arrow = "->";
        } else if (text.starts_with("GD:")) {
            kind = RuleKind::Delta;
            arrow = "~>";
        } else {
            detail::fail(file, line, "expected 'PI: a -> b' or 'GD: a ~> b'");
        }
        const std::string_view body = std::string_view(text).substr(3);
        const auto at = body.find(arrow);
        if (at == std::string_view::npos)
            detail::fail(file, line, "missing '" + std::string(arrow) + "'");
        out.rules.push_back(
            {kind, detail::parse_formula_at(body.substr(0, at), out.vars, file, line),
             detail::parse_formula_at(body.substr(at + 2), out.vars, file, line)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// network files:
//   node x3 parents: x1 x2
//   x3 | x1 !x2 : delta=0.4 pi=1      (roots use '-' as context)
// ---------------------------------------------------------------------------

namespace detail {

struct ParsedLiteral {
    std::string name;
    bool positive;
};

inline std::optional<ParsedLiteral> parse_literal(std::string_view token) {
    bool positive = true;
    if (token.starts_with('!')) {
        positive = false;
        token.remove_prefix(1);
    }
    if (!valid_identifier(token)) return std::nullopt;
    return ParsedLiteral{std::string(token), positive};
}

}  // namespace detail

inline BipolarNetwork parse_network_file(std::istream& in, std::string_view file,
                                         std::size_t max_vars = kDefaultMaxVariables) {
    BipolarNetwork net(max_vars);
    std::string current;  // node the rows attach to
    std::vector<std::string> current_parents;
    std::vector<bool> seen_rows;

    for (const auto& [line, text] : detail::content_lines(in)) {
        if (text.starts_with("node")) {
            auto words = detail::split_words(std::string_view(text).substr(4));
            if (words.empty()) detail::fail(file, line, "missing node name");
            const std::string name = words.front();
            std::vector<std::string> parents;
            if (words.size() > 1) {
                if (words[1] != "parents:")
                    detail::fail(file, line, "expected 'parents:' after the node name");
                parents.assign(words.begin() + 2, words.end());
            }
            if (net.node_index(name))
                detail::fail(file, line, "duplicate node '" + name + "'");
            net.add_node(name, parents);
            current = name;
            current_parents = std::move(parents);
            seen_rows.assign(2 * (std::size_t{1} << current_parents.size()), false);
            continue;
        }

        if (current.empty()) detail::fail(file, line, "table row before any 'node' line");
        const auto bar = text.find('|');
        if (bar == std::string::npos) detail::fail(file, line, "missing '|' in table row");
        const auto colon = text.find(':', bar);
        if (colon == std::string::npos) detail::fail(file, line, "missing ':' in table row");

        const auto value_lit = detail::parse_literal(detail::trim(std::string_view(text).substr(0, bar)));
        if (!value_lit || value_lit->name != current)
            detail::fail(file, line, "row value must be a literal of node '" + current + "'");

        const std::string_view ctx_text =
            detail::trim(std::string_view(text).substr(bar + 1, colon - bar - 1));
        std::size_t parent_bits = 0;
        if (current_parents.empty()) {
            if (ctx_text != "-")
                detail::fail(file, line, "root rows must use '-' as context");
        } else {
            const auto tokens = detail::split_words(ctx_text);
            if (tokens.size() != current_parents.size())
                detail::fail(file, line, "context must instantiate every declared parent");
            for (std::size_t i = 0; i < tokens.size(); ++i) {
                const auto lit = detail::parse_literal(tokens[i]);
                if (!lit || lit->name != current_parents[i])
                    detail::fail(file, line,
                                 "context literals must follow the declared parent order");
                parent_bits = (parent_bits << 1) | (lit->positive ? 1u : 0u);
            }
        }

        const auto fields = detail::split_words(std::string_view(text).substr(colon + 1));
        if (fields.size() != 2 || !fields[0].starts_with("delta=") || !fields[1].starts_with("pi="))
            detail::fail(file, line, "expected 'delta=<degree> pi=<degree>'");
        const Degree delta =
            detail::parse_degree(std::string_view(fields[0]).substr(6), file, line);
        const Degree pi = detail::parse_degree(std::string_view(fields[1]).substr(3), file, line);

        const std::size_t slot = BipolarNetwork::Node::entry_index(
            value_lit->positive, parent_bits, current_parents.size());
        if (seen_rows[slot]) detail::fail(file, line, "duplicate table row");
        seen_rows[slot] = true;
        net.set_entry(current, value_lit->positive, parent_bits, {delta, pi});
    }
    return net;
}

// ---------------------------------------------------------------------------
// diagnosis model files:
//   attribute temp: 37 38 39 40
//   cause flu
//   temp lower: 39=1 40=1
//   temp upper: 38=0.5 39=1 40=1
// observation files:
//   obs temp: 39=1
// ---------------------------------------------------------------------------

struct DiagnosisModel {
    std::vector<AttributeDomain> attributes;
    std::vector<CauseModel> causes;

    const AttributeDomain* find_attribute(std::string_view name) const {
        for (const auto& a : attributes)
            if (a.name == name) return &a;
        return nullptr;
    }
};

namespace detail {

/// Parses `v=deg ...` assignments into a fuzzy set over the domain;
/// unlisted values stay at 0.
inline FuzzySet parse_grades(const std::vector<std::string>& tokens, const AttributeDomain& domain,
                             std::string_view file, std::size_t line) {
    FuzzySet out = FuzzySet::constant(domain.values, Degree::zero());
    std::vector<bool> seen(domain.values.size(), false);
    for (const auto& token : tokens) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) fail(file, line, "expected '<value>=<degree>'");
        const std::string value = token.substr(0, eq);
        const auto it = std::find(domain.values.begin(), domain.values.end(), value);
        if (it == domain.values.end())
            fail(file, line, "unknown value '" + value + "' for attribute '" + domain.name + "'");
        const std::size_t index = static_cast<std::size_t>(it - domain.values.begin());
        if (seen[index]) fail(file, line, "value '" + value + "' assigned twice");
        seen[index] = true;
        out.grade[index] = parse_degree(std::string_view(token).substr(eq + 1), file, line);
    }
    return out;
}

}  // namespace detail

inline DiagnosisModel parse_model_file(std::istream& in, std::string_view file) {
    DiagnosisModel out;
    CauseModel* current = nullptr;
    for (const auto& [line, text] : detail::content_lines(in)) {
        if (text.starts_with("attribute")) {
            const auto colon = text.find(':');
            if (colon == std::string::npos) detail::fail(file, line, "missing ':'");
            const auto name_words =
                detail::split_words(std::string_view(text).substr(9, colon - 9));
            if (name_words.size() != 1) detail::fail(file, line, "expected one attribute name");
            if (out.find_attribute(name_words.front()))
                detail::fail(file, line, "duplicate attribute '" + name_words.front() + "'");
            auto values = detail::split_words(std::string_view(text).substr(colon + 1));
            if (values.empty()) detail::fail(file, line, "attribute domain is empty");
            for (std::size_t i = 0; i < values.size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (values[i] == values[j])
                        detail::fail(file, line, "duplicate value '" + values[i] + "'");
            out.attributes.push_back({name_words.front(), std::move(values)});
            current = nullptr;
            continue;
        }
        if (text.starts_with("cause")) {
            const auto words = detail::split_words(std::string_view(text).substr(5));
            if (words.size() != 1) detail::fail(file, line, "expected one cause name");
            for (const auto& c : out.causes)
                if (c.name == words.front())
                    detail::fail(file, line, "duplicate cause '" + words.front() + "'");
            out.causes.push_back({words.front(), {}});
            current = &out.causes.back();
            continue;
        }
        // profile line: `<attribute> lower: ...` or `<attribute> upper: ...`
        if (!current) detail::fail(file, line, "profile line before any 'cause' line");
        const auto colon = text.find(':');
        if (colon == std::string::npos) detail::fail(file, line, "missing ':'");
        const auto head = detail::split_words(std::string_view(text).substr(0, colon));
        if (head.size() != 2 || (head[1] != "lower" && head[1] != "upper"))
            detail::fail(file, line, "expected '<attribute> lower:' or '<attribute> upper:'");
        const AttributeDomain* domain = out.find_attribute(head[0]);
        if (!domain) detail::fail(file, line, "unknown attribute '" + head[0] + "'");
        auto& pair = current->profiles
                         .try_emplace(head[0],
                                      ProfilePair{FuzzySet::constant(domain->values, Degree::zero()),
                                                  FuzzySet::constant(domain->values, Degree::one())})
                         .first->second;
        const FuzzySet parsed = detail::parse_grades(
            detail::split_words(std::string_view(text).substr(colon + 1)), *domain, file, line);
        (head[1] == "lower" ? pair.lower : pair.upper) = parsed;
    }
    return out;
}

inline Observation parse_observation_file(std::istream& in, std::string_view file,
                                          const DiagnosisModel& model) {
    Observation out;
    for (const auto& [line, text] : detail::content_lines(in)) {
        if (!text.starts_with("obs")) detail::fail(file, line, "expected 'obs <attribute>: ...'");
        const auto colon = text.find(':');
        if (colon == std::string::npos) detail::fail(file, line, "missing ':'");
        const auto head = detail::split_words(std::string_view(text).substr(3, colon - 3));
        if (head.size() != 1) detail::fail(file, line, "expected one attribute name");
        const AttributeDomain* domain = model.find_attribute(head.front());
        if (!domain) detail::fail(file, line, "unknown attribute '" + head.front() + "'");
        if (out.attributes.count(head.front()))
            detail::fail(file, line, "attribute '" + head.front() + "' observed twice");
        out.attributes[head.front()] = detail::parse_grades(
            detail::split_words(std::string_view(text).substr(colon + 1)), *domain, file, line);
    }
    return out;
}

// ---------------------------------------------------------------------------
// emission: TSV tables and their JSON mirrors; byte-stable given identical
// inputs (canonical world order, exact degree printing)
// ---------------------------------------------------------------------------

using ordered_json = nlohmann::ordered_json;

inline void write_pair_tsv(std::ostream& os, const VariableTable& vars,
                           const PossibilityDistribution& lower,
                           const PossibilityDistribution& upper) {
    os << "interpretation\tlower\tupper\n";
    for (std::size_t w = 0; w < vars.world_count(); ++w)
        os << vars.world_label(static_cast<World>(w)) << '\t' << lower.at(w).str() << '\t'
           << upper.at(w).str() << '\n';
}

inline ordered_json pair_json(const VariableTable& vars, const PossibilityDistribution& lower,
                              const PossibilityDistribution& upper) {
    ordered_json rows = ordered_json::array();
    for (std::size_t w = 0; w < vars.world_count(); ++w)
        rows.push_back({{"interpretation", vars.world_label(static_cast<World>(w))},
                        {"lower", lower.at(w).str()},
                        {"upper", upper.at(w).str()}});
    return {{"variables", vars.names()}, {"rows", rows}};
}

inline void write_wop_text(std::ostream& os, const VariableTable& vars,
                           const WellOrderedPartition& wop) {
    for (std::size_t i = 0; i < wop.strata.size(); ++i) {
        os << 'E' << (i + 1) << ':';
        bool first = true;
        for (const std::size_t w : wop.strata[i].members()) {
            os << (first ? " " : ", ") << vars.world_label(static_cast<World>(w));
            first = false;
        }
        os << '\n';
    }
}

inline ordered_json wop_json(const VariableTable& vars, const WellOrderedPartition& wop) {
    ordered_json strata = ordered_json::array();
    for (const auto& stratum : wop.strata) {
        ordered_json members = ordered_json::array();
        for (const std::size_t w : stratum.members())
            members.push_back(vars.world_label(static_cast<World>(w)));
        strata.push_back(members);
    }
    return {{"variables", vars.names()}, {"strata", strata}};
}

inline void write_values_tsv(std::ostream& os, const std::vector<std::string>& names,
                             const std::vector<Degree>& values) {
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "\t" : "") << names[i];
    os << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "\t" : "") << values[i].str();
    os << '\n';
}

inline ordered_json values_json(const std::vector<std::string>& names,
                                const std::vector<Degree>& values) {
    ordered_json out;
    for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = values[i].str();
    return out;
}

inline void write_scores_tsv(std::ostream& os, const std::vector<CauseScore>& scores) {
    os << "cause\tcons\trel\n";
    for (const auto& s : scores)
        os << s.cause << '\t' << s.cons.str() << '\t' << s.rel.str() << '\n';
}

inline ordered_json scores_json(const std::vector<CauseScore>& scores) {
    ordered_json rows = ordered_json::array();
    for (const auto& s : scores)
        rows.push_back({{"cause", s.cause}, {"cons", s.cons.str()}, {"rel", s.rel.str()}});
    return {{"ranking", rows}};
}

}  // namespace biposs::io
