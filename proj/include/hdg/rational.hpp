#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hdg/errors.hpp"

namespace hdg {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using RationalVector = std::vector<Rational>;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline Integer floor_of(const Rational& r) {
  Integer num = numerator_of(r);
  Integer den = denominator_of(r);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer f = floor_of(r);
  return is_integer(r) ? f : f + 1;
}

// Exact integer value; throws if r is not an integer or does not fit.
inline std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r)) throw InputError("expected an integer, got " + r.str());
  Integer v = numerator_of(r);
  if (v > Integer(INT64_MAX) || v < Integer(INT64_MIN))
    throw InputError("integer out of range: " + v.str());
  return v.convert_to<std::int64_t>();
}

inline std::string to_string(const Rational& r) { return r.str(); }

// Accepts "p/q", integers, and decimals with an optional exponent ("0.25",
// "-3", "1e-2"). Decimals are converted to exact decimal fractions.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* why) -> Rational {
    throw InputError("invalid rational '" + std::string(text) + "': " + why);
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.empty()) return fail("empty");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    auto digits = [](std::string_view d, bool allow_sign) {
      if (!d.empty() && allow_sign && (d.front() == '-' || d.front() == '+')) d.remove_prefix(1);
      if (d.empty()) return false;
      for (char c : d)
        if (c < '0' || c > '9') return false;
      return true;
    };
    if (!digits(num, true) || !digits(den, false)) return fail("malformed fraction");
    std::string num_s(num);
    if (num_s.front() == '+') num_s.erase(0, 1);
    Integer n(num_s), d{std::string(den)};
    if (d == 0) return fail("zero denominator");
    return Rational(n, d);
  }

  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '-' || s[i] == '+') {
    negative = s[i] == '-';
    ++i;
  }
  std::string mantissa;
  long exponent = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      mantissa += c;
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      return fail("unexpected character");
    }
  }
  if (!seen_digit) return fail("no digits");
  if (i < s.size()) {
    std::string_view exp = s.substr(i + 1);
    if (!exp.empty() && exp.front() == '+') exp.remove_prefix(1);
    long e = 0;
    auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), e);
    if (ec != std::errc() || ptr != exp.data() + exp.size()) return fail("bad exponent");
    exponent += e;
  }
  if (exponent > 4096 || exponent < -4096) return fail("exponent out of range");
  Integer m(mantissa);
  Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(m, scale) : Rational(m * scale);
  return negative ? Rational(-r) : r;
}

// Exact value of the shortest decimal that round-trips to `v`; 0.3 -> 3/10.
inline Rational rational_from_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw InputError("cannot represent floating-point value");
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntMatrix = Matrix<std::int64_t>;

inline RationalVector multiply(const RationalMatrix& m, const RationalVector& v) {
  if (m.cols() != v.size()) throw InputError("matrix-vector dimension mismatch");
  RationalVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0 && v[c] != 0) out[r] += m(r, c) * v[c];
  return out;
}

inline Rational sum(const RationalVector& v) {
  Rational s;
  for (const auto& e : v) s += e;
  return s;
}

}  // namespace hdg
