#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncdr/rational.hpp"
#include "ncdr/sparse_poly.hpp"

namespace ncdr {

/// Univariate power series known exactly up to and including z^cutoff.
/// Binary operations on series with different cutoffs use the smaller one.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int cutoff = 0, std::string variable = "z");
  TruncatedSeries(std::vector<Rational> coeffs, std::string variable = "z");

  static TruncatedSeries one(int cutoff, std::string variable = "z");

  /// c * z^k truncated at cutoff.
  static TruncatedSeries monomial(int cutoff, int k, const Rational& c, std::string variable = "z");

  int cutoff() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::string& variable() const { return var_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Coefficient of z^k; throws std::out_of_range beyond the cutoff.
  const Rational& operator[](int k) const;
  Rational& coeff(int k);

  /// Same series known to a lower order.
  TruncatedSeries truncated(int cutoff) const;

  /// True when every odd coefficient up to the cutoff vanishes.
  bool is_even() const;

  TruncatedSeries& operator*=(const Rational& s);
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

  nlohmann::json to_json() const;

 private:
  std::string var_;
  std::vector<Rational> coeffs_;
};

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Multiplicative inverse; throws std::domain_error for a zero constant term.
TruncatedSeries series_inv(const TruncatedSeries& f);

/// exp(f); throws std::domain_error unless the constant term is zero.
TruncatedSeries series_exp(const TruncatedSeries& f);

/// f(c z).
TruncatedSeries series_compose_linear(const TruncatedSeries& f, const Rational& c);

/// df/dz, known to one order less; throws std::domain_error at cutoff 0.
TruncatedSeries series_derive(const TruncatedSeries& f);

/// S(z) = (e^{z/2} - e^{-z/2}) / z.
TruncatedSeries series_S(int cutoff);

/// T_a(z) = S(z) / S(a z).
TruncatedSeries series_T(long a, int cutoff);

/// e^{z/2} + e^{-z/2}.
TruncatedSeries series_zetabar(int cutoff);

/// Unique polynomial in "r" of degree < #points through the samples.
/// Throws std::invalid_argument on repeated abscissae.
SparsePoly lagrange_interpolate(const std::vector<std::pair<long, Rational>>& points);

/// Bivariate helpers over the variables {z1, z2}, truncated at total degree.
namespace bivariate {

std::vector<std::string> variables();

/// f(c1 z1 + c2 z2) up to total degree `cutoff`.
SparsePoly compose_linear(const TruncatedSeries& f, const Rational& c1, const Rational& c2, int cutoff);

SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, int cutoff);

/// (1 + z1 d/dz1 + z2 d/dz2) p.
SparsePoly euler_shift(const SparsePoly& p);

/// Coefficient of z1^i z2^j.
Rational coefficient(const SparsePoly& p, int i, int j);

}  // namespace bivariate

}  // namespace ncdr
