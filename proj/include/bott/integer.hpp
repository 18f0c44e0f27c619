#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace bott {

/// Exact integer used for every coefficient and matrix entry.
using Integer = boost::multiprecision::cpp_int;

using IntVector = std::vector<Integer>;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline bool is_even(const Integer& x) { return x % 2 == 0; }

Integer gcd_of(const IntVector& v);

Integer parse_integer(std::string_view text);

inline std::string to_string(const Integer& x) { return x.str(); }

}  // namespace bott
