#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace treeid {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p", or "p/q" with arbitrary-size integers.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + text);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer_square(const Integer& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Exact square root of a nonnegative rational, if it is a perfect square.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    if (!is_integer_square(num) || !is_integer_square(den)) return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

inline bool is_perfect_square(const Rational& q) { return exact_sqrt(q).has_value(); }

}  // namespace treeid
