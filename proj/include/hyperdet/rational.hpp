#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "hyperdet/errors.hpp"

namespace hyperdet {

using Integer = mpz_class;
/// Exact rational. GMP keeps every mpq_class result canonical: positive
/// denominator, numerator and denominator coprime.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

/// "num" for integers, "num/den" otherwise; always lowest terms.
inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Rational pow(const Rational& base, long exponent) {
    Rational result = 1;
    if (exponent == 0) return result;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                   : static_cast<unsigned long>(exponent);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    if (exponent < 0) {
        if (num == 0) throw InputError("zero raised to a negative power");
        std::swap(num, den);
    }
    result = Rational(num, den);
    result.canonicalize();
    return result;
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

/// Parses "[-]digits" or "[-]digits/digits". The fraction must be in lowest
/// terms with a nonzero denominator. The Unicode minus sign is accepted as well.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (s.starts_with("-")) {
        negative = true;
        s.remove_prefix(1);
    } else if (s.starts_with("−")) {
        negative = true;
        s.remove_prefix(std::string_view("−").size());
    }
    auto slash = s.find('/');
    std::string_view num_text = s.substr(0, slash);
    std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!detail::all_digits(num_text) || !detail::all_digits(den_text))
        throw ParseError("not a rational number: \"" + std::string(text) + "\"");
    Integer num(std::string(num_text), 10);
    Integer den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1 && !(num == 0 && den == 1))
        throw ParseError("rational not in lowest terms: \"" + std::string(text) + "\"");
    if (negative) num = -num;
    return Rational(num, den);
}

}  // namespace hyperdet
