#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "vkernel/errors.hpp"

namespace vk {

// Exact arbitrary-precision rationals keep the 1/r! combinatorics exact;
// doubles appear only at evaluation time.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string rational_to_string(const Rational& r);

/// base^exp for integer exp of either sign; exp < 0 requires base != 0.
Rational rational_pow(const Rational& base, long long exp);

Rational factorial(int n);

}  // namespace vk
