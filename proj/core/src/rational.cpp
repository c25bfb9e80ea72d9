#include "iclsc/rational.hpp"

#include <cctype>

namespace icl {

std::optional<Rational> parseRational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-' || text[i] == '+') {
    neg = text[i] == '-';
    ++i;
  }
  Integer intPart = 0;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    intPart = intPart * 10 + (text[i] - '0');
    ++i;
    ++digits;
  }
  if (digits == 0) return std::nullopt;
  Rational value(intPart);
  if (i < text.size() && text[i] == '.') {
    ++i;
    Integer frac = 0;
    Integer scale = 1;
    std::size_t fracDigits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      frac = frac * 10 + (text[i] - '0');
      scale *= 10;
      ++i;
      ++fracDigits;
    }
    if (fracDigits == 0) return std::nullopt;
    value += Rational(frac, scale);
  } else if (i < text.size() && text[i] == '/') {
    ++i;
    Integer den = 0;
    std::size_t denDigits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      den = den * 10 + (text[i] - '0');
      ++i;
      ++denDigits;
    }
    if (denDigits == 0 || den == 0) return std::nullopt;
    value = Rational(intPart, den);
  }
  if (i != text.size()) return std::nullopt;
  return neg ? Rational(-value) : value;
}

std::string rationalToString(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double rationalToDouble(const Rational& r) { return static_cast<double>(r); }

}  // namespace icl
