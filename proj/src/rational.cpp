#include "ncdr/rational.hpp"

#include <stdexcept>

namespace ncdr {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t pos = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_run = false;
  for (std::size_t k = pos; k < s.size(); ++k) {
    char c = s[k];
    if (c >= '0' && c <= '9') {
      digit_run = true;
    } else if (c == '/' && !seen_slash && digit_run) {
      seen_slash = true;
      digit_run = false;
    } else {
      throw std::invalid_argument("malformed rational literal: " + s);
    }
  }
  if (!digit_run) throw std::invalid_argument("malformed rational literal: " + s);
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational power(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer double_factorial(int n) {
  if (n < -1) throw std::domain_error("double factorial of n < -1");
  Integer out(1);
  for (int k = n; k > 1; k -= 2) out *= k;
  return out;
}

Rational binomial(const Rational& top, unsigned k) {
  Rational out(1);
  for (unsigned j = 0; j < k; ++j) {
    out *= (top - j);
    out /= (j + 1);
  }
  return out;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator*=(const Rational& s) {
  re_ *= s;
  im_ *= s;
  return *this;
}

GaussianRational GaussianRational::inverse() const {
  Rational norm = re_ * re_ + im_ * im_;
  if (sgn(norm) == 0) throw std::domain_error("inverse of zero Gaussian rational");
  return {re_ / norm, -im_ / norm};
}

std::string GaussianRational::to_string() const {
  std::string out = re_.get_str();
  if (sgn(im_) < 0) {
    out += "-";
    out += Rational(-im_).get_str();
  } else {
    out += "+";
    out += im_.get_str();
  }
  out += "i";
  return out;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  if (text.empty() || text.back() != 'i') return {parse_rational(text), Rational(0)};
  std::string_view body = text.substr(0, text.size() - 1);
  // The split point is the last sign that is not the leading character.
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      Rational re = parse_rational(body.substr(0, k));
      Rational im = parse_rational(body.substr(k + 1));
      if (body[k] == '-') im = -im;
      return {re, im};
    }
  }
  throw std::invalid_argument("malformed Gaussian rational: " + std::string(text));
}

GaussianRational i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

}  // namespace ncdr
