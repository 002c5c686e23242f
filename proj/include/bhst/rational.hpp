// Exact rationals and small dense integer/rational matrices.
#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

// Boost 1.74's mixed-type operator== recurses forever under C++20 rewritten
// comparisons; exact-match overloads take precedence over its templates.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
}  // namespace boost

namespace bhst {

using Rational = boost::rational<std::int64_t>;
using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor_of(const Rational& r);
// Representative in [0, 1).
Rational frac_part(const Rational& r);
std::string to_string(const Rational& r);
// Accepts "c/d" or an integer.
Rational parse_rational(const std::string& text);

IntMatrix transpose(const IntMatrix& m);
// Bareiss elimination; throws on overflow.
std::int64_t determinant(const IntMatrix& m);
// Throws kSingularMatrix when not invertible.
RationalMatrix inverse(const IntMatrix& m);
RationalVector row_times(const RationalVector& v, const RationalMatrix& m);
RationalVector row_times(const IntVector& v, const RationalMatrix& m);
RationalVector row_times(const RationalVector& v, const IntMatrix& m);

std::int64_t lcm_of_denominators(const RationalVector& v);

}  // namespace bhst
