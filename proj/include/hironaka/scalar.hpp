#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hironaka {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
inline constexpr bool is_rational_v = std::is_same_v<T, Rational>;

// Exact scalar text form: integers in decimal, rationals as "p/q" (or "p" when
// the denominator is 1).
inline std::string to_string(const Integer& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  const Integer num = boost::multiprecision::numerator(v);
  const Integer den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

inline Integer parse_integer(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw std::invalid_argument("empty integer literal");
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') {
      throw std::invalid_argument("bad integer literal '" + std::string(text) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace detail

template <class T>
T parse_scalar(std::string_view text);

template <>
inline Integer parse_scalar<Integer>(std::string_view text) {
  return detail::parse_integer(text);
}

template <>
inline Rational parse_scalar<Rational>(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(text));
  const Integer num = detail::parse_integer(text.substr(0, slash));
  const Integer den = detail::parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

// Largest integer not exceeding v.
inline Integer floor_of(const Integer& v) { return v; }

inline Integer floor_of(const Rational& v) {
  const Integer num = boost::multiprecision::numerator(v);
  const Integer den = boost::multiprecision::denominator(v);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

inline std::size_t hash_scalar(const Integer& v) { return std::hash<Integer>{}(v); }

inline std::size_t hash_scalar(const Rational& v) {
  std::size_t h = std::hash<Integer>{}(boost::multiprecision::numerator(v));
  return h ^ (std::hash<Integer>{}(boost::multiprecision::denominator(v)) + 0x9e3779b97f4a7c15ULL +
              (h << 6) + (h >> 2));
}

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace hironaka
