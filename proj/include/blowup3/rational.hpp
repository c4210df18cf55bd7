#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace blowup3 {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always reduced, denominator > 0, zero is 0/1;
/// boost's rational adaptor maintains the canonical form.
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(BigInt num, BigInt den) {
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    // Division canonicalizes (reduces, keeps the denominator positive); the
    // two-argument constructor rejects negative denominators outright.
    return Rat(std::move(num)) / Rat(std::move(den));
}

inline Rat make_rat(long long num, long long den = 1) {
    return make_rat(BigInt(num), BigInt(den));
}

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

inline int rat_sign(const Rat& r) { return r.sign(); }

/// Text form "p/q", or "p" when the denominator is 1.
inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

/// Parses "p" or "p/q" (q > 0 after normalization). Throws std::invalid_argument.
inline Rat rat_parse(std::string_view text) {
    auto is_int = [](std::string_view t) {
        if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den))
        throw std::invalid_argument("bad rational literal: '" + std::string(text) + "'");
    return make_rat(BigInt(std::string(num)), BigInt(std::string(den)));
}

}  // namespace blowup3
