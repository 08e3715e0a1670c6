#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace cotv {

// Exact cost arithmetic. Every cost, weight and dimension value goes through this type.
using Rational = boost::rational<std::int64_t>;

// "p/q" with q > 0; integers still carry "/1" so reports stay uniform.
std::string to_string(const Rational& r);

// Accepts "p/q", "p", or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r)
{
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace cotv
