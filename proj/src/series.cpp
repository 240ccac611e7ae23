#include "ncdr/series.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ncdr {

TruncatedSeries::TruncatedSeries(int cutoff, std::string variable) : var_(std::move(variable)) {
  if (cutoff < 0) throw std::domain_error("negative series cutoff");
  coeffs_.assign(static_cast<std::size_t>(cutoff) + 1, Rational(0));
}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs, std::string variable)
    : var_(std::move(variable)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::domain_error("series needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::one(int cutoff, std::string variable) {
  TruncatedSeries s(cutoff, std::move(variable));
  s.coeffs_[0] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(int cutoff, int k, const Rational& c, std::string variable) {
  TruncatedSeries s(cutoff, std::move(variable));
  if (k >= 0 && k <= cutoff) s.coeffs_[static_cast<std::size_t>(k)] = c;
  return s;
}

const Rational& TruncatedSeries::operator[](int k) const {
  if (k < 0 || k > cutoff()) throw std::out_of_range("series coefficient beyond cutoff");
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational& TruncatedSeries::coeff(int k) {
  if (k < 0 || k > cutoff()) throw std::out_of_range("series coefficient beyond cutoff");
  return coeffs_[static_cast<std::size_t>(k)];
}

TruncatedSeries TruncatedSeries::truncated(int c) const {
  if (c > cutoff()) throw std::domain_error("cannot extend a truncated series");
  return TruncatedSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + c + 1), var_);
}

bool TruncatedSeries::is_even() const {
  for (std::size_t k = 1; k < coeffs_.size(); k += 2) {
    if (sgn(coeffs_[k]) != 0) return false;
  }
  return true;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out(std::min(a.cutoff(), b.cutoff()), a.var_);
  for (int k = 0; k <= out.cutoff(); ++k) out.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out(std::min(a.cutoff(), b.cutoff()), a.var_);
  for (int k = 0; k <= out.cutoff(); ++k) out.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out(std::min(a.cutoff(), b.cutoff()), a.var_);
  for (int i = 0; i <= out.cutoff(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (int j = 0; i + j <= out.cutoff(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return out;
}

nlohmann::json TruncatedSeries::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (int k = 0; k <= cutoff(); ++k) {
    if (sgn(coeffs_[k]) != 0) out[std::to_string(k)] = ncdr::to_string(coeffs_[k]);
  }
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

TruncatedSeries series_inv(const TruncatedSeries& f) {
  if (sgn(f[0]) == 0) throw std::domain_error("series_inv: zero constant term");
  TruncatedSeries g(f.cutoff(), f.variable());
  Rational inv0 = 1 / f[0];
  g.coeff(0) = inv0;
  for (int n = 1; n <= f.cutoff(); ++n) {
    Rational acc(0);
    for (int k = 1; k <= n; ++k) acc += f[k] * g[n - k];
    g.coeff(n) = -acc * inv0;
  }
  return g;
}

TruncatedSeries series_exp(const TruncatedSeries& f) {
  if (sgn(f[0]) != 0) throw std::domain_error("series_exp: nonzero constant term");
  TruncatedSeries g(f.cutoff(), f.variable());
  g.coeff(0) = 1;
  // g' = f' g gives n g_n = sum_k k f_k g_{n-k}.
  for (int n = 1; n <= f.cutoff(); ++n) {
    Rational acc(0);
    for (int k = 1; k <= n; ++k) acc += k * f[k] * g[n - k];
    g.coeff(n) = acc / n;
  }
  return g;
}

TruncatedSeries series_compose_linear(const TruncatedSeries& f, const Rational& c) {
  TruncatedSeries out(f.cutoff(), f.variable());
  Rational cp(1);
  for (int k = 0; k <= f.cutoff(); ++k) {
    out.coeff(k) = f[k] * cp;
    cp *= c;
  }
  return out;
}

TruncatedSeries series_derive(const TruncatedSeries& f) {
  if (f.cutoff() < 1) throw std::domain_error("series_derive: nothing known beyond order 0");
  TruncatedSeries out(f.cutoff() - 1, f.variable());
  for (int k = 1; k <= f.cutoff(); ++k) out.coeff(k - 1) = k * f[k];
  return out;
}

TruncatedSeries series_S(int cutoff) {
  if (cutoff < 0) throw std::domain_error("negative series cutoff");
  auto half = TruncatedSeries::monomial(cutoff + 1, 1, make_rational(1, 2));
  auto minus_half = TruncatedSeries::monomial(cutoff + 1, 1, make_rational(-1, 2));
  TruncatedSeries diff = series_exp(half) - series_exp(minus_half);
  TruncatedSeries out(cutoff);
  for (int k = 0; k <= cutoff; ++k) out.coeff(k) = diff[k + 1];
  return out;
}

TruncatedSeries series_T(long a, int cutoff) {
  TruncatedSeries s = series_S(cutoff);
  return s * series_inv(series_compose_linear(s, Rational(a)));
}

TruncatedSeries series_zetabar(int cutoff) {
  auto half = TruncatedSeries::monomial(cutoff, 1, make_rational(1, 2));
  auto minus_half = TruncatedSeries::monomial(cutoff, 1, make_rational(-1, 2));
  return series_exp(half) + series_exp(minus_half);
}

SparsePoly lagrange_interpolate(const std::vector<std::pair<long, Rational>>& points) {
  std::set<long> seen;
  for (const auto& p : points) {
    if (!seen.insert(p.first).second) throw std::invalid_argument("lagrange_interpolate: repeated abscissa");
  }
  const std::size_t n = points.size();
  // Newton divided differences, then expansion into the monomial basis.
  std::vector<Rational> dd(n);
  for (std::size_t k = 0; k < n; ++k) dd[k] = points[k].second;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t k = n - 1; k >= level; --k) {
      dd[k] = (dd[k] - dd[k - 1]) / Rational(points[k].first - points[k - level].first);
      if (k == level) break;
    }
  }
  std::vector<Rational> coeffs(std::max<std::size_t>(n, 1), Rational(0));
  // Horner on the Newton form: p = dd0 + (r-x0)(dd1 + (r-x1)(dd2 + ...)).
  std::vector<Rational> acc{n ? dd[n - 1] : Rational(0)};
  for (std::size_t k = n - 1; k-- > 0;) {
    std::vector<Rational> next(acc.size() + 1, Rational(0));
    Rational x(points[k].first);
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j + 1] += acc[j];
      next[j] -= x * acc[j];
    }
    next[0] += dd[k];
    acc = std::move(next);
  }
  SparsePoly out({"r"});
  for (std::size_t j = 0; j < acc.size(); ++j) out.add_term({static_cast<int>(j)}, acc[j]);
  return out;
}

namespace bivariate {

std::vector<std::string> variables() { return {"z1", "z2"}; }

SparsePoly compose_linear(const TruncatedSeries& f, const Rational& c1, const Rational& c2, int cutoff) {
  if (f.cutoff() < cutoff) throw std::domain_error("bivariate::compose_linear: series cutoff too small");
  SparsePoly out(variables());
  for (int k = 0; k <= cutoff; ++k) {
    if (sgn(f[k]) == 0) continue;
    for (int i = 0; i <= k; ++i) {
      Rational c = f[k] * binomial(Rational(k), static_cast<unsigned>(i)) * power(c1, i) * power(c2, k - i);
      out.add_term({i, k - i}, c);
    }
  }
  return out;
}

SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, int cutoff) { return multiply_truncated(a, b, cutoff); }

SparsePoly euler_shift(const SparsePoly& p) {
  SparsePoly out(p.variables());
  for (const auto& [e, c] : p.terms()) out.add_term(e, c * (1 + e[0] + e[1]));
  return out;
}

Rational coefficient(const SparsePoly& p, int i, int j) { return p.coefficient({i, j}); }

}  // namespace bivariate

}  // namespace ncdr
