#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include "nambu/errors.hpp"

namespace nambu {

// Exact rational coefficient type. Canonical form (denominator > 0,
// gcd-reduced, zero is 0/1) is maintained by the backend.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

// Normalizing constructor: accepts any nonzero denominator sign.
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw DomainError("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("rational_from_double: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    Integer num = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(num);
    if (exp > 0)
        r *= Rational(Integer(1) << exp);
    else if (exp < 0)
        r /= Rational(Integer(1) << (-exp));
    return r;
}

// Accepts "p/q", integers, and plain decimals ("1.5" -> 3/2), all exact.
inline Rational rational_from_string(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw PolyParseError("empty rational literal");

    auto parse_int = [](const std::string& t) -> Integer {
        if (t.empty() || (t.size() == 1 && (t[0] == '+' || t[0] == '-')))
            throw PolyParseError("bad integer literal: '" + t + "'");
        std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw PolyParseError("bad integer literal: '" + t + "'");
        return Integer(t);
    };

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer num = parse_int(s.substr(0, slash));
        Integer den = parse_int(s.substr(slash + 1));
        if (den == 0) throw PolyParseError("zero denominator: '" + text + "'");
        return make_rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
        if (tail.empty()) return Rational(parse_int(head));
        Integer scale = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
        bool neg = !head.empty() && head[0] == '-';
        if (head == "-" || head == "+") head += "0";
        Integer whole = parse_int(head.empty() ? "0" : head);
        Integer frac = parse_int(tail);
        Rational r = Rational(whole) + (neg ? -Rational(frac, scale) : Rational(frac, scale));
        return r;
    }
    return Rational(parse_int(s));
}

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace nambu
