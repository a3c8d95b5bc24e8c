#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace biposs {

/// An exact rational degree in [0,1].
///
/// The whole calculus is order-theoretic: the only operations ever applied
/// to degrees are min, max and the complement 1-x, so exact rationals keep
/// every strict-inequality test deterministic. Values are stored normalized
/// (gcd(num,den) == 1, den > 0).
class Degree {
public:
    constexpr Degree() : num_(0), den_(1) {}

    Degree(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::invalid_argument("degree: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        if (num < 0 || num > den)
            throw std::invalid_argument("degree: value outside [0,1]");
        const std::int64_t g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    static constexpr Degree zero() { return Degree(); }
    static Degree one() { return Degree(1, 1); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    /// 1 - x. Exact; normalization is preserved.
    Degree complement() const { return Degree(den_ - num_, den_); }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == den_; }

    friend bool operator==(const Degree& a, const Degree& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
        const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Accepts exact decimals ("0.45", ".5", "1") and fractions ("9/20").
    static std::optional<Degree> parse(std::string_view text) {
        if (text.empty()) return std::nullopt;
        const auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            const auto p = parse_int(text.substr(0, slash));
            const auto q = parse_int(text.substr(slash + 1));
            if (!p || !q || *q == 0 || *p < 0 || *q < 0 || *p > *q) return std::nullopt;
            return Degree(*p, *q);
        }
        const auto dot = text.find('.');
        if (dot == std::string_view::npos) {
            const auto v = parse_int(text);
            if (!v || (*v != 0 && *v != 1)) return std::nullopt;
            return Degree(*v, 1);
        }
        const std::string_view whole = text.substr(0, dot);
        const std::string_view frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if (frac.size() > 18) return std::nullopt;
        std::int64_t w = 0;
        if (!whole.empty()) {
            const auto v = parse_int(whole);
            if (!v) return std::nullopt;
            w = *v;
        }
        std::int64_t f = 0;
        std::int64_t scale = 1;
        for (const char c : frac) {
            if (c < '0' || c > '9') return std::nullopt;
            f = f * 10 + (c - '0');
            scale *= 10;
        }
        const std::int64_t num = w * scale + f;
        if (num > scale) return std::nullopt;
        return Degree(num, scale);
    }

    /// Prints as an exact decimal when the denominator divides a power of
    /// ten, otherwise as "p/q".
    std::string str() const {
        if (num_ == 0) return "0";
        if (num_ == den_) return "1";
        std::int64_t rest = den_;
        int twos = 0;
        int fives = 0;
        while (rest % 2 == 0) { rest /= 2; ++twos; }
        while (rest % 5 == 0) { rest /= 5; ++fives; }
        if (rest != 1)
            return std::to_string(num_) + "/" + std::to_string(den_);
        const int digits = twos > fives ? twos : fives;
        std::int64_t scale = 1;
        for (int i = 0; i < digits; ++i) scale *= 10;
        std::string frac = std::to_string(num_ * (scale / den_));
        frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
        return "0." + frac;
    }

private:
    static std::optional<std::int64_t> parse_int(std::string_view s) {
        if (s.empty() || s.size() > 18) return std::nullopt;
        std::int64_t v = 0;
        for (const char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            v = v * 10 + (c - '0');
        }
        return v;
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace biposs
