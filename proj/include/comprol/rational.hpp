#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "comprol/errors.hpp"

namespace comprol {

// Exact rational scalar. Canonical form (gcd-reduced, positive denominator)
// is maintained by the backend, so equality is structural and matrix
// identities can be checked without tolerances.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;  // prints "n" for integers, "n/d" otherwise
    return os.str();
}

// Strict literal parser: an optional minus sign, digits, and optionally
// "/digits" with a nonzero denominator. Anything else (floats, exponents,
// signs inside the denominator, blanks) is rejected.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw InvalidInput("not a rational literal: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '-') {
        negative = true;
        ++pos;
    }
    auto read_digits = [&](std::string& out) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out.push_back(text[pos]);
            ++pos;
        }
    };
    std::string num_digits;
    read_digits(num_digits);
    if (num_digits.empty()) return fail();

    std::string den_digits = "1";
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den_digits.clear();
        read_digits(den_digits);
        if (den_digits.empty()) return fail();
    }
    if (pos != text.size()) return fail();

    BigInt num(num_digits);
    BigInt den(den_digits);
    if (den == 0) return fail();
    if (negative) num = -num;
    return Rational(num, den);
}

}  // namespace comprol
