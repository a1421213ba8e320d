#pragma once

#include <gmpxx.h>

#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dglinf {

using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition on an argument (wrong degree, malformed permutation, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// (-1)^e as an int.
constexpr int sign_pow(long long e) { return (e % 2 == 0) ? 1 : -1; }

/// Parses "p", "-p" or "p/q" into a canonical rational. Rejects q == 0 and
/// anything that is not a plain integer fraction.
inline Rational parse_rational(std::string_view text) {
  static const std::regex kPattern(R"(\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kPattern)) {
    throw ParseError("malformed rational \"" + s + "\"");
  }
  mpz_class num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
  mpz_class den(1);
  if (m[2].matched) {
    den = mpz_class(m[2].str());
    if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace dglinf
