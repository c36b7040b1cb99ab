#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace gcover {

// Exact arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

Rational parse_rational(std::string_view text);  // "p/q" or integer
std::string to_string(const Rational& q);         // "p/q", integers bare
Rational make_rational(long num, long den = 1);

// Nonnegative-side extension of the rationals with a single +infinity.
// Weights, penalties and bounds that may be "must avoid" live here.
class ExtRat {
 public:
  ExtRat() = default;
  ExtRat(const Rational& q) : value_(q) { value_.canonicalize(); }  // NOLINT
  ExtRat(long v) : value_(v) {}                                     // NOLINT

  static ExtRat infinity() {
    ExtRat r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Throws InternalError on +infinity.
  const Rational& finite() const;

  ExtRat& operator+=(const ExtRat& other);
  friend ExtRat operator+(ExtRat a, const ExtRat& b) { return a += b; }
  // Subtracting a finite value; +inf - x = +inf. Subtracting +inf throws.
  friend ExtRat operator-(const ExtRat& a, const ExtRat& b);
  // +inf * 0 throws; +inf * c = +inf for c > 0; negative factors with
  // +inf throw (there is no -inf).
  friend ExtRat operator*(const ExtRat& a, const Rational& c);

  friend bool operator==(const ExtRat& a, const ExtRat& b);
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

ExtRat min(const ExtRat& a, const ExtRat& b);
// Accepts everything parse_rational does plus "inf".
ExtRat parse_ext_rational(std::string_view text);
std::string to_string(const ExtRat& v);  // "inf" for +infinity
std::ostream& operator<<(std::ostream& os, const ExtRat& v);

// max(0, q)
inline Rational positive_part(const Rational& q) {
  return sgn(q) > 0 ? q : Rational(0);
}

// 1 + 1/2 + ... + 1/n, exact.
Rational harmonic(int n);

}  // namespace gcover
