#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace silverlab {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// Terminating decimals print as decimals ("0.9"), everything else as n/d.
inline std::string format_rational(const Rational& q) {
  std::int64_t den = q.denominator();
  int twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  const int digits = twos > fives ? twos : fives;
  if (den != 1 || digits > 15 || q.denominator() == 1) return to_string(q);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const std::int64_t num = q.numerator();
  const std::int64_t scaled = (num < 0 ? -num : num) * (scale / q.denominator());
  std::string frac = std::to_string(scaled % scale);
  frac = std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  return (num < 0 ? "-" : "") + std::to_string(scaled / scale) + "." + frac;
}

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

}  // namespace silverlab
