#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biposs/errors.hpp"

namespace biposs {

inline constexpr std::size_t kDefaultMaxVariables = 16;

/// Index of an interpretation. With variables v0..v(n-1), v0 occupies the
/// most significant bit, so enumeration order is binary counting: over
/// {p,q} the worlds are !p!q, !pq, p!q, pq.
using World = std::uint32_t;

inline bool valid_identifier(std::string_view name) {
    if (name.empty()) return false;
    const char c0 = name.front();
    if (!(std::isalpha(static_cast<unsigned char>(c0)) || c0 == '_')) return false;
    for (const char c : name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

/// Ordered set of binary variables. The order is fixed at creation and
/// defines the bit position of each variable in a World.
class VariableTable {
public:
    VariableTable() = default;

    explicit VariableTable(std::vector<std::string> names,
                           std::size_t max_vars = kDefaultMaxVariables)
        : names_(std::move(names)) {
        if (names_.size() > max_vars)
            throw LimitError("variable limit exceeded: " + std::to_string(names_.size()) +
                             " declared, at most " + std::to_string(max_vars) + " allowed");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!valid_identifier(names_[i]))
                throw std::invalid_argument("invalid variable name: '" + names_[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("duplicate variable name: '" + names_[i] + "'");
        }
    }

    std::size_t size() const { return names_.size(); }
    std::size_t world_count() const { return std::size_t{1} << names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t var) const { return names_.at(var); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    bool truth(World w, std::size_t var) const {
        return (w >> (names_.size() - 1 - var)) & 1u;
    }

    /// Space-separated literals, e.g. "!p q !r".
    std::string world_label(World w) const {
        std::string out;
        for (std::size_t v = 0; v < names_.size(); ++v) {
            if (v) out += ' ';
            if (!truth(w, v)) out += '!';
            out += names_[v];
        }
        return out;
    }

    friend bool operator==(const VariableTable& a, const VariableTable& b) {
        return a.names_ == b.names_;
    }

private:
    std::vector<std::string> names_;
};

inline std::vector<World> enumerate(const VariableTable& vars) {
    std::vector<World> out(vars.world_count());
    for (std::size_t w = 0; w < out.size(); ++w) out[w] = static_cast<World>(w);
    return out;
}

/// A set of interpretations out of a fixed finite universe.
class Event {
public:
    Event() : universe_(0) {}

    static Event none(std::size_t universe) { return Event(universe); }

    static Event all(std::size_t universe) {
        Event e(universe);
        for (auto& word : e.words_) word = ~std::uint64_t{0};
        e.trim();
        return e;
    }

    std::size_t universe() const { return universe_; }

    bool contains(std::size_t w) const {
        return (words_[w >> 6] >> (w & 63)) & 1u;
    }

    void insert(std::size_t w) { words_[w >> 6] |= std::uint64_t{1} << (w & 63); }
    void erase(std::size_t w) { words_[w >> 6] &= ~(std::uint64_t{1} << (w & 63)); }

    bool empty() const {
        for (const auto word : words_)
            if (word) return false;
        return true;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (const auto word : words_) n += static_cast<std::size_t>(__builtin_popcountll(word));
        return n;
    }

    Event complement() const {
        Event e(universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) e.words_[i] = ~words_[i];
        e.trim();
        return e;
    }

    friend Event operator&(const Event& a, const Event& b) {
        a.check_same(b);
        Event e(a.universe_);
        for (std::size_t i = 0; i < e.words_.size(); ++i) e.words_[i] = a.words_[i] & b.words_[i];
        return e;
    }

    friend Event operator|(const Event& a, const Event& b) {
        a.check_same(b);
        Event e(a.universe_);
        for (std::size_t i = 0; i < e.words_.size(); ++i) e.words_[i] = a.words_[i] | b.words_[i];
        return e;
    }

    /// Set difference a \ b.
    friend Event operator-(const Event& a, const Event& b) {
        a.check_same(b);
        Event e(a.universe_);
        for (std::size_t i = 0; i < e.words_.size(); ++i) e.words_[i] = a.words_[i] & ~b.words_[i];
        return e;
    }

    bool intersects(const Event& other) const {
        check_same(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    bool subset_of(const Event& other) const {
        check_same(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    friend bool operator==(const Event& a, const Event& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < universe_; ++w)
            if (contains(w)) out.push_back(w);
        return out;
    }

private:
    explicit Event(std::size_t universe)
        : words_((universe + 63) / 64, 0), universe_(universe) {}

    void trim() {
        const std::size_t tail = universe_ & 63;
        if (tail && !words_.empty())
            words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    void check_same(const Event& other) const {
        if (universe_ != other.universe_)
            throw std::invalid_argument("event universe mismatch");
    }

    std::vector<std::uint64_t> words_;
    std::size_t universe_;
};

/// Immutable propositional formula over NOT/AND/OR/IMPLIES, variable leaves
/// and the constants true/false. Copies share structure.
class Formula {
public:
    enum class Kind { True, False, Var, Not, And, Or, Implies };

    Formula() : Formula(constant(true)) {}

    static Formula constant(bool value) {
        return Formula(std::make_shared<Node>(Node{value ? Kind::True : Kind::False, 0, nullptr, nullptr}));
    }

    static Formula var(std::size_t index) {
        return Formula(std::make_shared<Node>(Node{Kind::Var, index, nullptr, nullptr}));
    }

    friend Formula operator!(const Formula& f) {
        return Formula(std::make_shared<Node>(Node{Kind::Not, 0, f.node_, nullptr}));
    }

    friend Formula operator&(const Formula& a, const Formula& b) {
        return Formula(std::make_shared<Node>(Node{Kind::And, 0, a.node_, b.node_}));
    }

    friend Formula operator|(const Formula& a, const Formula& b) {
        return Formula(std::make_shared<Node>(Node{Kind::Or, 0, a.node_, b.node_}));
    }

    friend Formula implies(const Formula& a, const Formula& b) {
        return Formula(std::make_shared<Node>(Node{Kind::Implies, 0, a.node_, b.node_}));
    }

    Kind kind() const { return node_->kind; }
    std::size_t var_index() const { return node_->var; }
    Formula lhs() const { return Formula(node_->lhs); }
    Formula rhs() const { return Formula(node_->rhs); }

    friend bool operator==(const Formula& a, const Formula& b) {
        return equal(a.node_.get(), b.node_.get());
    }

private:
    struct Node {
        Kind kind;
        std::size_t var;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static bool equal(const Node* a, const Node* b) {
        if (a == b) return true;
        if (!a || !b || a->kind != b->kind || a->var != b->var) return false;
        return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
    }

    std::shared_ptr<const Node> node_;
};

/// Truth of `f` in world `w` under classical semantics.
inline bool eval(const Formula& f, const VariableTable& vars, World w) {
    switch (f.kind()) {
        case Formula::Kind::True: return true;
        case Formula::Kind::False: return false;
        case Formula::Kind::Var: return vars.truth(w, f.var_index());
        case Formula::Kind::Not: return !eval(f.lhs(), vars, w);
        case Formula::Kind::And: return eval(f.lhs(), vars, w) && eval(f.rhs(), vars, w);
        case Formula::Kind::Or: return eval(f.lhs(), vars, w) || eval(f.rhs(), vars, w);
        case Formula::Kind::Implies: return !eval(f.lhs(), vars, w) || eval(f.rhs(), vars, w);
    }
    return false;
}

/// The event denoted by `f`: computed structurally by set algebra, not by
/// per-world evaluation.
inline Event models(const Formula& f, const VariableTable& vars) {
    const std::size_t n = vars.world_count();
    switch (f.kind()) {
        case Formula::Kind::True: return Event::all(n);
        case Formula::Kind::False: return Event::none(n);
        case Formula::Kind::Var: {
            Event e = Event::none(n);
            for (std::size_t w = 0; w < n; ++w)
                if (vars.truth(static_cast<World>(w), f.var_index())) e.insert(w);
            return e;
        }
        case Formula::Kind::Not: return models(f.lhs(), vars).complement();
        case Formula::Kind::And: return models(f.lhs(), vars) & models(f.rhs(), vars);
        case Formula::Kind::Or: return models(f.lhs(), vars) | models(f.rhs(), vars);
        case Formula::Kind::Implies:
            return models(f.lhs(), vars).complement() | models(f.rhs(), vars);
    }
    return Event::none(n);
}

namespace detail {

/// Recursive-descent parser for the formula grammar:
///   formula := impl
///   impl    := or ("=>" impl)?
///   or      := and ("|" and)*
///   and     := not ("&" not)*
///   not     := "!" not | atom
///   atom    := ident | "true" | "false" | "(" formula ")"
class FormulaParser {
public:
    FormulaParser(std::string_view text, const VariableTable& vars)
        : text_(text), vars_(vars) {}

    Formula run() {
        Formula f = impl();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return f;
    }

private:
    Formula impl() {
        Formula left = disjunction();
        skip_space();
        if (match("=>")) return implies(left, impl());
        return left;
    }

    Formula disjunction() {
        Formula left = conjunction();
        while (true) {
            skip_space();
            // stop before "=>"? '|' only; '=' never starts a disjunction op
            if (pos_ < text_.size() && text_[pos_] == '|') {
                ++pos_;
                left = left | conjunction();
            } else {
                return left;
            }
        }
    }

    Formula conjunction() {
        Formula left = negation();
        while (true) {
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '&') {
                ++pos_;
                left = left & negation();
            } else {
                return left;
            }
        }
    }

    Formula negation() {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '!') {
            ++pos_;
            return !negation();
        }
        return atom();
    }

    Formula atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("expected a formula");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Formula f = impl();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view word = text_.substr(start, pos_ - start);
            if (word == "true") return Formula::constant(true);
            if (word == "false") return Formula::constant(false);
            const auto index = vars_.index_of(word);
            if (!index) fail_at("unknown variable '" + std::string(word) + "'", start);
            return Formula::var(*index);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
        return Formula::constant(false);  // unreachable
    }

    bool match(std::string_view token) {
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) { fail_at(message, pos_); }

    [[noreturn]] void fail_at(const std::string& message, std::size_t at) {
        throw ParseError(message + " at position " + std::to_string(at + 1), 0, at + 1);
    }

    std::string_view text_;
    const VariableTable& vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, const VariableTable& vars) {
    return detail::FormulaParser(text, vars).run();
}

/// Prints with minimal parentheses; parse(print(parse(s))) == parse(s).
inline std::string print_formula(const Formula& f, const VariableTable& vars) {
    // precedence: implies 1, or 2, and 3, not 4
    struct Printer {
        const VariableTable& vars;

        std::string go(const Formula& f, int parent) const {
            switch (f.kind()) {
                case Formula::Kind::True: return "true";
                case Formula::Kind::False: return "false";
                case Formula::Kind::Var: return vars.name(f.var_index());
                case Formula::Kind::Not: return "!" + go(f.lhs(), 4);
                // left-associative: a right-nested operand of the same kind keeps its parens
                case Formula::Kind::And: return wrap(go(f.lhs(), 3) + " & " + go(f.rhs(), 4), 3, parent);
                case Formula::Kind::Or: return wrap(go(f.lhs(), 2) + " | " + go(f.rhs(), 3), 2, parent);
                case Formula::Kind::Implies:
                    // right-associative: the left operand needs one level more
                    return wrap(go(f.lhs(), 2) + " => " + go(f.rhs(), 1), 1, parent);
            }
            return {};
        }

        static std::string wrap(std::string s, int prec, int parent) {
            if (prec < parent) return "(" + std::move(s) + ")";
            return s;
        }
    };
    return Printer{vars}.go(f, 0);
}

}  // namespace biposs
