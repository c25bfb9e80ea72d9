#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace icl {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses an integer, a decimal ("0.25") or a fraction ("13/20") exactly.
std::optional<Rational> parseRational(const std::string& text);

/// Prints integers plainly and everything else as "num/den".
std::string rationalToString(const Rational& r);

double rationalToDouble(const Rational& r);

}  // namespace icl
