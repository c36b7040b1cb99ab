#include "gcover/rational.hpp"

#include <cctype>

#include "gcover/errors.hpp"

namespace gcover {

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-' ||
      den[0] == '+') {
    throw UsageError("not a rational number: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw UsageError("zero denominator: '" + std::string(text) + "'");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

const Rational& ExtRat::finite() const {
  if (infinite_) throw InternalError("finite value expected, got +inf");
  return value_;
}

ExtRat& ExtRat::operator+=(const ExtRat& other) {
  if (infinite_ || other.infinite_) {
    infinite_ = true;
    value_ = 0;
  } else {
    value_ += other.value_;
  }
  return *this;
}

ExtRat operator-(const ExtRat& a, const ExtRat& b) {
  if (b.infinite_) throw InternalError("cannot subtract +inf");
  if (a.infinite_) return a;
  return ExtRat(Rational(a.value_ - b.value_));
}

ExtRat operator*(const ExtRat& a, const Rational& c) {
  if (a.infinite_) {
    if (sgn(c) <= 0) throw InternalError("+inf times a non-positive factor");
    return a;
  }
  return ExtRat(Rational(a.value_ * c));
}

bool operator==(const ExtRat& a, const ExtRat& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
  if (a.infinite_) return std::strong_ordering::greater;
  if (b.infinite_) return std::strong_ordering::less;
  const int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRat min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }

ExtRat parse_ext_rational(std::string_view text) {
  if (text == "inf" || text == "+inf") return ExtRat::infinity();
  return ExtRat(parse_rational(text));
}

std::string to_string(const ExtRat& v) {
  return v.is_infinite() ? std::string("inf") : to_string(v.finite());
}

std::ostream& operator<<(std::ostream& os, const ExtRat& v) {
  return os << to_string(v);
}

Rational harmonic(int n) {
  Rational h = 0;
  for (int k = 1; k <= n; ++k) h += Rational(1, k);
  h.canonicalize();
  return h;
}

}  // namespace gcover
