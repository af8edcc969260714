#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <string>

#include "halphen/fp.hpp"

namespace halphen {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

inline bool is_zero(const Rational& a) { return a == 0; }

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Usage("rational with zero denominator");
  return Rational(num, den);
}

/// Image of a rational in GF(p); throws BadPrime when p divides the denominator.
/// `what` names the coordinate in the error message.
Fp reduce_rational(const Rational& q, const std::string& what = "value");

}  // namespace halphen
