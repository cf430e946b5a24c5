#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

#include "error.hpp"

namespace hypertile {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline BigInt ipow(std::int64_t base, unsigned exponent) {
    return boost::multiprecision::pow(BigInt(base), exponent);
}

// Accepts "p/q", integers, and finite decimals ("0.125"); all parsed exactly.
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> BigInt {
        if (s.empty()) throw Error("malformed rational '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw Error("malformed rational '" + std::string(text) + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9') throw Error("malformed rational '" + std::string(text) + "'");
        return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw Error("rational with zero denominator");
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string whole(text.substr(0, dot));
        std::string_view frac = text.substr(dot + 1);
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        if (frac.empty()) throw Error("malformed rational '" + std::string(text) + "'");
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        BigInt int_part = parse_int(whole);
        BigInt frac_part = parse_int(frac);
        if (frac[0] == '-' || frac[0] == '+') throw Error("malformed rational '" + std::string(text) + "'");
        bool negative = whole[0] == '-';
        BigInt magnitude = (negative ? BigInt(-int_part) : int_part) * scale + frac_part;
        return Rational(negative ? BigInt(-magnitude) : magnitude, scale);
    }
    return Rational(parse_int(text));
}

inline std::string to_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace hypertile
