#pragma once

#include <array>
#include <cctype>
#include <string>

#include "sosk49/cubic_order.hpp"
#include "sosk49/errors.hpp"

namespace sosk49 {

// Element text syntax: `a + b*r + c*r^2` with integer literals and optional
// whitespace (bare `r` / `r^2` and repeated powers are accepted, signs may
// sit on the separator or the literal), or the JSON form `[a, b, c]`.

namespace detail {

class ElementParser {
public:
    ElementParser(const CubicOrder& order, const std::string& text)
        : order_(order), s_(text) {}

    Element parse() {
        skip_ws();
        if (peek() == '[') return parse_bracket_triple();
        std::array<Int, 3> coeff = {Int(0), Int(0), Int(0)};
        parse_term(coeff, /*separator_sign=*/1);
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '\0') break;
            if (c != '+' && c != '-') fail("expected '+', '-' or end of input");
            ++pos_;
            parse_term(coeff, c == '-' ? -1 : 1);
        }
        return Element(order_, coeff[0], coeff[1], coeff[2]);
    }

private:
    void parse_term(std::array<Int, 3>& coeff, int separator_sign) {
        skip_ws();
        int sign = separator_sign;
        if (peek() == '+' || peek() == '-') {
            if (peek() == '-') sign = -sign;
            ++pos_;
            skip_ws();
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Int mag = parse_integer();
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                int power = parse_basis();
                coeff[size_t(power)] += sign * mag;
            } else {
                coeff[0] += sign * mag;
            }
        } else if (peek() == 'r') {
            int power = parse_basis();
            coeff[size_t(power)] += sign;
        } else {
            fail("expected an integer literal or 'r'");
        }
    }

    int parse_basis() {
        if (peek() != 'r') fail("expected 'r'");
        ++pos_;
        if (peek() != '^') return 1;
        ++pos_;
        char c = peek();
        if (c != '1' && c != '2') fail("exponent must be 1 or 2");
        ++pos_;
        return c - '0';
    }

    Int parse_integer() {
        size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Int(s_.substr(start, pos_ - start));
    }

    Element parse_bracket_triple() {
        expect('[');
        std::array<Int, 3> coeff;
        for (int i = 0; i < 3; ++i) {
            skip_ws();
            int sign = 1;
            if (peek() == '-') {
                sign = -1;
                ++pos_;
            } else if (peek() == '+') {
                ++pos_;
            }
            coeff[size_t(i)] = sign * parse_integer();
            skip_ws();
            if (i < 2) expect(',');
        }
        expect(']');
        skip_ws();
        if (peek() != '\0') fail("trailing input after ']'");
        return Element(order_, coeff[0], coeff[1], coeff[2]);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
    }

    const CubicOrder& order_;
    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline Element parse_element(const CubicOrder& order, const std::string& text) {
    return detail::ElementParser(order, text).parse();
}

inline std::string element_to_text(const Element& e) {
    return e.a().get_str() + " + " + e.b().get_str() + "*r + " + e.c().get_str() + "*r^2";
}

/// "p,q,r" with optional whitespace.
inline std::array<Int, 3> parse_order_triple(const std::string& text) {
    std::array<Int, 3> out;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    for (int i = 0; i < 3; ++i) {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer at position " + std::to_string(pos), pos);
        out[size_t(i)] = Int(text.substr(start, pos - start));
        skip_ws();
        if (i < 2) {
            if (pos >= text.size() || text[pos] != ',')
                throw ParseError("expected ',' at position " + std::to_string(pos), pos);
            ++pos;
        }
    }
    skip_ws();
    if (pos != text.size()) throw ParseError("trailing input at position " + std::to_string(pos), pos);
    return out;
}

}  // namespace sosk49
