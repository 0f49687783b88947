#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace montest {

using Rational = boost::rational<std::int64_t>;

/// Renders as "num/den", always with a denominator ("2/1").
std::string to_string(const Rational& r);

/// Accepts "p/q" or a bare integer "p". Throws InvalidInput.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// Exact square root when r is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& r);

}  // namespace montest
