#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncdr {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Arbitrary-precision rational.  GMP keeps every value canonical
/// (reduced, positive denominator) after each arithmetic operation.
using Rational = mpq_class;

/// Formats as "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Parses "p/q" or "p" (optional leading sign).  Throws std::invalid_argument
/// on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Builds num/den in canonical form.
Rational make_rational(long num, long den = 1);

Rational power(const Rational& base, unsigned exponent);
Integer factorial(unsigned n);

/// Double factorial of an odd integer n >= -1, with (-1)!! = 1.
Integer double_factorial(int n);

/// Generalized binomial coefficient top (top-1) ... (top-k+1) / k!.
Rational binomial(const Rational& top, unsigned k);

/// Element of Q(i).  Arithmetic is exact and componentwise canonical.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long re) : re_(re), im_(0) {}

  /// The imaginary unit.
  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// Complex conjugation, an involutive ring automorphism.
  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator*=(const Rational& s);

  /// Multiplicative inverse; throws std::domain_error for zero.
  GaussianRational inverse() const;

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator*(GaussianRational a, const Rational& s) { return a *= s; }
  friend GaussianRational operator*(const Rational& s, GaussianRational a) { return a *= s; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Formats as "p/q+p'/q'i" (the sign of the imaginary part is written
  /// in place of '+').
  std::string to_string() const;

  /// Inverse of to_string.  A bare rational is accepted as a real value.
  static GaussianRational parse(std::string_view text);

 private:
  Rational re_{0};
  Rational im_{0};
};

/// (i)^k for any integer k.
GaussianRational i_power(int k);

}  // namespace ncdr
