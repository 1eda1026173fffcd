#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "nambu/errors.hpp"
#include "nambu/rational.hpp"

namespace nambu {

// Sparse exact polynomials in the phase variables x1, x2, x3 and the formal
// step-size variable h. Coefficients are arbitrary-precision rationals, so
// every identity below is checked exactly, not to a tolerance.

enum class Var : int { x1 = 0, x2 = 1, x3 = 2, h = 3 };

inline const char* var_name(Var v) {
    static const char* names[4] = {"x1", "x2", "x3", "h"};
    return names[static_cast<int>(v)];
}

// Total-degree cap; products past it throw DegreeCapExceeded. All expressions
// in scope have degree <= 4 in phase variables and <= 3 in h, so hitting the
// cap flags an algebra bug rather than a legitimate result.
inline std::atomic<int>& degree_cap_ref() {
    static std::atomic<int> cap{12};
    return cap;
}
inline int degree_cap() { return degree_cap_ref().load(); }
inline void set_degree_cap(int cap) { degree_cap_ref().store(cap); }

struct Monomial {
    std::array<int, 4> exp{0, 0, 0, 0};

    int degree() const { return exp[0] + exp[1] + exp[2] + exp[3]; }
    int phase_degree() const { return exp[0] + exp[1] + exp[2]; }
    int operator[](Var v) const { return exp[static_cast<int>(v)]; }
    bool is_constant() const { return degree() == 0; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic in (x1, x2, x3, h), highest first; map iteration in
// this order is the canonical print order.
struct GradedLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.exp > b.exp;
    }
};

class Poly {
  public:
    using TermMap = std::map<Monomial, Rational, GradedLexGreater>;

    Poly() = default;
    explicit Poly(const Rational& c) {
        if (c != 0) terms_[Monomial{}] = c;
    }
    explicit Poly(long c) : Poly(Rational(c)) {}

    static Poly var(Var v) {
        Monomial m;
        m.exp[static_cast<int>(v)] = 1;
        return monomial(m, Rational(1));
    }

    static Poly monomial(const Monomial& m, const Rational& c) {
        Poly p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }
    int degree_in(Var v) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
        return d;
    }
    int phase_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.phase_degree());
        return d;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    Poly& operator/=(const Rational& c) {
        if (c == 0) throw DomainError("Poly: division by zero rational");
        for (auto& [m, v] : terms_) v /= c;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator/(Poly a, const Rational& c) { return a /= c; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        const int cap = degree_cap();
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (int i = 0; i < 4; ++i) m.exp[i] = ma.exp[i] + mb.exp[i];
                if (m.degree() > cap)
                    throw DegreeCapExceeded("poly_mul: monomial degree " +
                                            std::to_string(m.degree()) + " exceeds cap " +
                                            std::to_string(cap));
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    Poly pow(int n) const {
        if (n < 0) throw DomainError("Poly::pow: negative exponent");
        Poly r(1);
        for (int i = 0; i < n; ++i) r = r * (*this);
        return r;
    }

    // Formal partial derivative.
    Poly diff(Var v) const {
        Poly r;
        const int iv = static_cast<int>(v);
        for (const auto& [m, c] : terms_) {
            if (m.exp[iv] == 0) continue;
            Monomial d = m;
            d.exp[iv] -= 1;
            r.add_term(d, c * m.exp[iv]);
        }
        return r;
    }

    // Direct evaluation with coefficients converted to double.
    double eval(const std::array<double, 4>& point) const {
        double total = 0.0;
        for (const auto& [m, c] : terms_) {
            double term = to_double(c);
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < m.exp[i]; ++k) term *= point[i];
            total += term;
        }
        return total;
    }

    // Drops every term with h-exponent > order.
    Poly truncate_h(int order) const {
        Poly r;
        for (const auto& [m, c] : terms_)
            if (m[Var::h] <= order) r.terms_[m] = c;
        return r;
    }

    // Coefficient of h^k as a polynomial without h.
    Poly coefficient_of_h(int k) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            if (m[Var::h] != k) continue;
            Monomial n = m;
            n.exp[static_cast<int>(Var::h)] = 0;
            r.terms_[n] = c;
        }
        return r;
    }

    // Replaces every occurrence of v by the polynomial value.
    Poly substitute(Var v, const Poly& value) const {
        Poly r;
        const int iv = static_cast<int>(v);
        for (const auto& [m, c] : terms_) {
            Monomial rest = m;
            rest.exp[iv] = 0;
            Poly term = Poly::monomial(rest, c);
            if (m.exp[iv] > 0) term = term * value.pow(m.exp[iv]);
            r += term;
        }
        return r;
    }

    // Keeps only terms that involve at least one phase variable.
    Poly drop_phase_free() const {
        Poly r;
        for (const auto& [m, c] : terms_)
            if (m.phase_degree() > 0) r.terms_[m] = c;
        return r;
    }

    std::string to_string() const;
    static Poly parse(const std::string& text);

  private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

inline Poly operator*(Poly a, long c) { return a *= Rational(c); }
inline Poly operator*(long c, Poly a) { return a *= Rational(c); }

// --- canonical text form ----------------------------------------------------
//
//   poly    := term (('+'|'-') term)*
//   term    := rational ('*' factor)* | factor ('*' factor)*
//   factor  := ("x1"|"x2"|"x3"|"h") ('^' uint)?
//
// to_string emits terms in descending graded-lex order; parse accepts the
// same grammar with arbitrary whitespace.

inline std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;

        std::string vars;
        for (int i = 0; i < 4; ++i) {
            if (m.exp[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += var_name(static_cast<Var>(i));
            if (m.exp[i] > 1) vars += "^" + std::to_string(m.exp[i]);
        }
        if (vars.empty()) {
            os << a;
        } else if (a == 1) {
            os << vars;
        } else {
            os << a << "*" << vars;
        }
    }
    return os.str();
}

inline Poly Poly::parse(const std::string& text) {
    struct Scanner {
        const std::string& s;
        std::size_t i = 0;
        void skip_ws() {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        }
        bool done() {
            skip_ws();
            return i >= s.size();
        }
        char peek() {
            skip_ws();
            return i < s.size() ? s[i] : '\0';
        }
        bool accept(char c) {
            if (peek() == c) {
                ++i;
                return true;
            }
            return false;
        }
    } sc{text};

    auto parse_uint = [&]() -> int {
        sc.skip_ws();
        std::size_t start = sc.i;
        while (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i]))) ++sc.i;
        if (sc.i == start) throw PolyParseError("expected integer at offset " + std::to_string(start));
        return std::stoi(sc.s.substr(start, sc.i - start));
    };

    auto parse_number = [&]() -> Rational {
        sc.skip_ws();
        std::size_t start = sc.i;
        while (sc.i < sc.s.size() &&
               (std::isdigit(static_cast<unsigned char>(sc.s[sc.i])) || sc.s[sc.i] == '.'))
            ++sc.i;
        std::string head = sc.s.substr(start, sc.i - start);
        if (sc.accept('/')) {
            sc.skip_ws();
            std::size_t dstart = sc.i;
            while (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i]))) ++sc.i;
            return rational_from_string(head + "/" + sc.s.substr(dstart, sc.i - dstart));
        }
        return rational_from_string(head);
    };

    auto parse_var = [&]() -> Var {
        sc.skip_ws();
        if (sc.i < sc.s.size() && sc.s[sc.i] == 'h') {
            ++sc.i;
            return Var::h;
        }
        if (sc.i + 1 < sc.s.size() && sc.s[sc.i] == 'x' && sc.s[sc.i + 1] >= '1' &&
            sc.s[sc.i + 1] <= '3') {
            Var v = static_cast<Var>(sc.s[sc.i + 1] - '1');
            sc.i += 2;
            return v;
        }
        throw PolyParseError("expected variable at offset " + std::to_string(sc.i) + " in '" +
                             text + "'");
    };

    Poly result;
    bool expect_term = true;
    int sign = +1;
    while (!sc.done()) {
        if (!expect_term) {
            if (sc.accept('+')) {
                sign = +1;
            } else if (sc.accept('-')) {
                sign = -1;
            } else {
                throw PolyParseError("expected '+' or '-' at offset " + std::to_string(sc.i) +
                                     " in '" + text + "'");
            }
        } else {
            // leading sign on the first term
            if (sc.accept('-'))
                sign = -1;
            else if (sc.accept('+'))
                sign = +1;
        }
        expect_term = false;

        Rational coeff(1);
        Monomial m;
        bool saw_factor = false;
        char c = sc.peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            coeff = parse_number();
            saw_factor = true;
        }
        while (true) {
            char n = sc.peek();
            bool explicit_mul = false;
            if (n == '*') {
                sc.accept('*');
                explicit_mul = true;
                n = sc.peek();
            }
            if (n == 'x' || n == 'h') {
                Var v = parse_var();
                int e = 1;
                if (sc.accept('^')) e = parse_uint();
                m.exp[static_cast<int>(v)] += e;
                saw_factor = true;
            } else {
                if (explicit_mul) throw PolyParseError("dangling '*' in '" + text + "'");
                break;
            }
        }
        if (!saw_factor)
            throw PolyParseError("expected term at offset " + std::to_string(sc.i) + " in '" +
                                 text + "'");
        result += Poly::monomial(m, sign * coeff);
        sign = +1;
    }
    if (expect_term && result.is_zero()) throw PolyParseError("empty polynomial text");
    return result;
}

}  // namespace nambu
