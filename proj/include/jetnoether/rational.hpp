#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace jetnoether {

// Exact arbitrary-precision rationals back every coefficient in the engine.
// Nothing downstream ever rounds; doubles appear only in the numeric harness
// and the rank probe.
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational acc = 1, b = base;
    while (exp) {
        if (exp & 1u) acc *= b;
        b *= b;
        exp >>= 1u;
    }
    return acc;
}

} // namespace jetnoether
