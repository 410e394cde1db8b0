#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace gldp {

// Block widths are exact; arbitrary precision keeps refinement of
// graphons with unrelated denominators overflow-free.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "a/b", an integer, or a finite decimal such as "0.125" exactly.
// Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

// Builds numerator/denominator from decimal integer strings.
Rational make_rational(std::string_view numerator, std::string_view denominator);

// Exact binary value of a double (every finite double is dyadic).
Rational rational_from_double(double x);

// Nearest multiple of 1/(base_denominator * 2^bits) to x, rounding in the
// requested direction. Used to place irrational breakpoints on a grid that
// shares its denominator with the rest of a construction.
enum class Rounding { Nearest, Down, Up };
Rational round_to_grid(double x, const BigInt& base_denominator, int bits,
                       Rounding mode = Rounding::Nearest);

double to_double(const Rational& q);

std::string numerator_string(const Rational& q);
std::string denominator_string(const Rational& q);
std::string to_string(const Rational& q);

}  // namespace gldp
