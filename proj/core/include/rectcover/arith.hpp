#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rectcover {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);

// "p" or "p/q"; q must be positive after normalization.
Rat parse_rational(const std::string& text);
std::string rational_to_string(const Rat& x);

Int binomial(unsigned n, unsigned k);
// n! / (a! b! c!) with a+b+c == n
Int multinomial3(unsigned n, unsigned a, unsigned b, unsigned c);

}  // namespace rectcover
