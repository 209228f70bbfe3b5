#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

#include "secondary/errors.hpp"

namespace secondary {

/// Exact rational number. Arithmetic keeps values canonical (reduced, positive
/// denominator) as long as inputs are canonical, which the parser below enforces.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parse "p", "-p" or "p/q" into a reduced rational. The mpq string constructor
/// stores fractions unreduced, so we go through the canonicalizing
/// (numerator, denominator) constructor instead.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(text), Integer(1));
        }
        Integer den(text.substr(slash + 1));
        if (den == 0) throw WorkbenchError("rational with zero denominator: " + text);
        return Rational(Integer(text.substr(0, slash)), den);
    } catch (const std::runtime_error& e) {
        throw WorkbenchError("malformed rational '" + text + "': " + e.what());
    }
}

/// Canonical "p" / "p/q" form (q > 0, gcd(|p|, q) = 1).
inline std::string to_string(const Rational& r) { return r.str(); }

inline int sign_of(const Rational& r) { return r.sign(); }

}  // namespace secondary
