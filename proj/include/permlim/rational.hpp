#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace permlim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q", or just "p" when q == 1.
std::string rational_string(const Rational& r);

/// Parses "p/q" or "p".
Rational rational_from_string(const std::string& s);

BigInt binomial(int n, int k);
BigInt factorial(int n);

}  // namespace permlim
