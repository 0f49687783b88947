#include "montest/rational.hpp"

#include <charconv>
#include <cmath>

#include "montest/errors.hpp"

namespace montest {

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw InvalidInput("not a rational number: '" + std::string(whole) + "'");
  }
  return value;
}

std::optional<std::int64_t> exact_isqrt(std::int64_t v) {
  if (v < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) return std::nullopt;
  return r;
}

}  // namespace

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const auto num = parse_integer(text.substr(0, slash), text);
  const auto den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::optional<Rational> exact_sqrt(const Rational& r) {
  const auto num = exact_isqrt(r.numerator());
  const auto den = exact_isqrt(r.denominator());
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

}  // namespace montest
