#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace bassdyn {

  using Integer  = boost::multiprecision::cpp_int;
  using Rational = boost::multiprecision::cpp_rational;

  // Non-negative remainder, so that floor_mod(g, k) lies in [0, |k|).
  inline Integer floor_mod(Integer const& g, Integer const& k) {
    Integer m = abs(k);
    Integer r = g % m;
    if (r < 0) {
      r += m;
    }
    return r;
  }

  // num/den with the sign moved to the numerator; den must be nonzero.
  inline Rational ratio(Integer num, Integer den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rational(num, den);
  }

  inline std::string to_string(Integer const& x) {
    return x.str();
  }

  // "p/q" in lowest terms, or "p" when the denominator is one.
  inline std::string to_string(Rational const& q) {
    auto num = numerator(q);
    auto den = denominator(q);
    if (den == 1) {
      return num.str();
    }
    return num.str() + "/" + den.str();
  }

}  // namespace bassdyn
