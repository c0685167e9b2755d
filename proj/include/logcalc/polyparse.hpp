#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logcalc/ring.hpp"

namespace logcalc {

// Positioned parse failure with a distinct machine-readable code per error
// class. Line numbers are filled in by the document parser; the polynomial
// parser reports 1-based columns within the text it was given.
struct ParseError : std::runtime_error {
    std::string code;
    int line;
    int col;

    ParseError(std::string code_, int line_, int col_, const std::string& message)
        : std::runtime_error(message + " [" + code_ + " at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + "]"),
          code(std::move(code_)),
          line(line_),
          col(col_) {}
};

namespace codes {
inline constexpr const char* syntax = "E_SYNTAX";
inline constexpr const char* bad_number = "E_BAD_NUMBER";
inline constexpr const char* bad_exponent = "E_BAD_EXPONENT";
inline constexpr const char* unknown_generator = "E_UNKNOWN_GENERATOR";
inline constexpr const char* degree_mismatch = "E_DEGREE_MISMATCH";
inline constexpr const char* duplicate_name = "E_DUPLICATE_NAME";
inline constexpr const char* unknown_name = "E_UNKNOWN_NAME";
inline constexpr const char* missing_field = "E_MISSING_FIELD";
inline constexpr const char* range = "E_RANGE";
}  // namespace codes

namespace detail {

// Recursive-descent parser for the polynomial sublanguage:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' natural)*
//   atom   := rational | generator | '(' expr ')'
// Rationals are "p" or "p/q" with arbitrary-precision integers; there is no
// division operator and no floating point.
class PolyParser {
public:
    PolyParser(std::string_view text, const std::vector<Generator>& gens, int line)
        : text_(text), gens_(gens), line_(line) {}

    Poly parse() {
        skip_ws();
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw err(codes::syntax, "unexpected trailing input");
        return p;
    }

private:
    std::string_view text_;
    const std::vector<Generator>& gens_;
    int line_;
    std::size_t pos_ = 0;

    ParseError err(const char* code, const std::string& msg) const {
        return ParseError(code, line_, static_cast<int>(pos_) + 1, msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Poly expr() {
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        Poly acc = term();
        if (negate) acc = scale(acc, Rational(-1));
        while (true) {
            if (eat('+')) {
                acc = add(acc, term());
            } else if (eat('-')) {
                acc = add(acc, scale(term(), Rational(-1)));
            } else {
                break;
            }
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (eat('*')) acc = mul(acc, factor());
        return acc;
    }

    Poly factor() {
        Poly base = atom();
        while (eat('^')) {
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw err(codes::bad_exponent, "exponent must be a nonnegative integer");
            long long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + (text_[pos_] - '0');
                if (e > 1000) throw err(codes::bad_exponent, "exponent too large");
                ++pos_;
            }
            Poly r = unit_poly();
            for (long long i = 0; i < e; ++i) r = mul(r, base);
            base = std::move(r);
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw err(codes::syntax, "unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')')) throw err(codes::syntax, "missing closing parenthesis");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return generator_atom();
        throw err(codes::syntax, std::string("unexpected character '") + c + "'");
    }

    Poly number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string_view num = text_.substr(start, pos_ - start);
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == dstart) throw err(codes::bad_number, "missing denominator digits");
            std::string_view den = text_.substr(dstart, pos_ - dstart);
            if (BigInt::from_string(den).is_zero())
                throw err(codes::bad_number, "zero denominator");
            Poly p;
            add_term(p, Exponents(gens_.size(), 0),
                     Rational(BigInt::from_string(num), BigInt::from_string(den)));
            return p;
        }
        Poly p;
        add_term(p, Exponents(gens_.size(), 0), Rational(BigInt::from_string(num), BigInt(1)));
        return p;
    }

    Poly generator_atom() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name == name) {
                Poly p;
                Exponents e(gens_.size(), 0);
                e[i] = 1;
                p.emplace(std::move(e), Rational(1));
                return p;
            }
        }
        pos_ = start;
        throw err(codes::unknown_generator, "unknown generator '" + name + "'");
    }

    Poly unit_poly() const {
        Poly p;
        p.emplace(Exponents(gens_.size(), 0), Rational(1));
        return p;
    }

    static Poly add(Poly a, const Poly& b) {
        for (const auto& [e, c] : b) detail::add_term(a, e, c);
        return a;
    }

    static Poly scale(Poly a, const Rational& s) {
        if (s.is_zero()) return {};
        for (auto& [e, c] : a) {
            (void)e;
            c *= s;
        }
        return a;
    }

    static Poly mul(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) detail::add_term(r, mul_expo(ea, eb), ca * cb);
        return r;
    }
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, const std::vector<Generator>& generators,
                       int line = 0) {
    return detail::PolyParser(text, generators, line).parse();
}

// Degree of a homogeneous polynomial; throws a degree-mismatch ParseError on
// mixed degrees (zero polynomials report degree -1).
inline int homogeneous_degree(const Poly& p, const std::vector<Generator>& generators,
                              int line = 0) {
    int deg = -1;
    for (const auto& [e, c] : p) {
        (void)c;
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * generators[i].degree;
        if (deg == -1) deg = d;
        if (d != deg)
            throw ParseError(codes::degree_mismatch, line, 1,
                             "polynomial mixes degrees " + std::to_string(deg) + " and " +
                                 std::to_string(d));
    }
    return deg;
}

// Canonical rendering of a raw polynomial: terms sorted by ascending degree,
// graded-lex descending within a degree, joined sign-aware.
inline std::string render_poly(const Poly& p, const std::vector<Generator>& generators) {
    if (p.empty()) return "0";
    auto degree_of = [&](const Exponents& e) {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * generators[i].degree;
        return d;
    };
    std::vector<std::pair<Exponents, Rational>> terms(p.begin(), p.end());
    std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        int da = degree_of(a.first), db = degree_of(b.first);
        if (da != db) return da < db;
        return b.first < a.first;
    });
    std::string out;
    for (const auto& [e, c] : terms) {
        std::string name;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!name.empty()) name += "*";
            name += generators[i].name;
            if (e[i] > 1) name += "^" + std::to_string(e[i]);
        }
        const Rational mag = c.is_negative() ? -c : c;
        std::string term;
        if (name.empty())
            term = mag.to_string();
        else if (mag.is_one())
            term = name;
        else
            term = mag.to_string() + "*" + name;
        if (out.empty())
            out = (c.is_negative() ? "-" : "") + term;
        else
            out += (c.is_negative() ? " - " : " + ") + term;
    }
    return out;
}

}  // namespace logcalc
