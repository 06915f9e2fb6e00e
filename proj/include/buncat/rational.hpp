#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "buncat/error.hpp"

namespace buncat {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    const Integer num(text.substr(0, slash));
    const Integer den(text.substr(slash + 1));
    if (den == 0) fail("BadRational", "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail("BadRational", "cannot parse '" + text + "'");
  }
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Integer factorial(unsigned n) {
  Integer out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer out = 1;
  for (unsigned i = 0; i < k; ++i) {
    out *= (n - i);
    out /= (i + 1);
  }
  return out;
}

}  // namespace buncat
