#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace ptb {

// Exact arithmetic everywhere: binomials exceed 64 bits well before K=70,
// and rates / length ratios must be exact rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int binomial(int n, int k);
Int falling_factorial(int n, int k);

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

std::string to_string(const Int& v);
std::string to_string(const Rat& v);  // reduced "p/q", or "p" when integral

Int parse_int(const std::string& s);
Rat parse_rat(const std::string& s);

// Throws std::overflow_error when v does not fit.
long long to_ll(const Int& v);

}  // namespace ptb
