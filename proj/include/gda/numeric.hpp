#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace gda {

using Int = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, kept reduced with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

struct GdaError : std::runtime_error {
    std::string code;
    GdaError(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline int sign_of(const Rational& x) {
    if (x > 0) return 1;
    if (x < 0) return -1;
    return 0;
}

inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += "/" + denominator(q).str();
    }
    return s;
}

} // namespace gda
