#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "fibra/error.hpp"

namespace fibra {

/// Exact rational number. Every invariant and verdict margin is carried in this type.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(std::int64_t p, std::int64_t q = 1) {
  if (q == 0) throw InputError("zero denominator");
  return Rational(BigInt(p), BigInt(q));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r)) throw StructuralError("expected an integer, got " + r.str());
  return numerator(r).convert_to<std::int64_t>();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Canonical text form: "7", "-3/2".
inline std::string to_string(const Rational& r) { return r.str(); }

/// Decimal approximation with a fixed number of digits, for display next to the exact value.
inline std::string to_decimal(const Rational& r, int digits = 6) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << to_double(r);
  return os.str();
}

/// Parses "p", "-p", "p/q". Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) throw InputError("malformed rational '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InputError("malformed rational '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') throw InputError("malformed rational '" + std::string(text) + "'");
    }
    BigInt v(std::string(s.substr(i)));
    return s[0] == '-' ? BigInt(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt q = parse_int(text.substr(slash + 1));
  if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), q);
}

}  // namespace fibra
