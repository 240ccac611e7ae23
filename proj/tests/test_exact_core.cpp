#include <doctest.h>

#include <random>

#include "ncdr/rational.hpp"
#include "ncdr/series.hpp"
#include "ncdr/sparse_poly.hpp"
#include "oracles.hpp"

using namespace ncdr;

namespace {

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 17);
  return make_rational(num(rng), den(rng));
}

GaussianRational random_gaussian(std::mt19937& rng) { return {random_rational(rng), random_rational(rng)}; }

SparsePoly random_poly(std::mt19937& rng) {
  SparsePoly p({"x", "y", "z"});
  std::uniform_int_distribution<int> ex(0, 3), terms(0, 4);
  int t = terms(rng);
  for (int k = 0; k < t; ++k) p.add_term({ex(rng), ex(rng), ex(rng)}, random_rational(rng));
  return p;
}

}  // namespace

TEST_SUITE("exact_core") {
  TEST_CASE("rationals are canonical and serialize as p/q") {
    Rational q = make_rational(6, -8);
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 4);
    CHECK(to_string(q) == "-3/4");
    CHECK(to_string(make_rational(10, 5)) == "2");
    CHECK(parse_rational("-3/4") == q);
    CHECK(parse_rational("12/8") == make_rational(3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  }

  TEST_CASE("Gaussian rationals: i^2 = -1, conjugation, text form") {
    auto i = GaussianRational::i();
    CHECK(i * i == GaussianRational(-1));
    GaussianRational z(make_rational(1, 2), make_rational(-3, 4));
    CHECK(z.to_string() == "1/2-3/4i");
    CHECK(GaussianRational::parse("1/2-3/4i") == z);
    CHECK(GaussianRational::parse("-1/2+3i") == GaussianRational(make_rational(-1, 2), Rational(3)));
    CHECK(GaussianRational::parse("5") == GaussianRational(5));
    CHECK(z.conj().conj() == z);
    CHECK(z * z.inverse() == GaussianRational(1));
    CHECK(i_power(3) == -i);
    CHECK(i_power(-1) == -i);
  }

  TEST_CASE("ring axioms on randomized inputs") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
      auto a = random_gaussian(rng), b = random_gaussian(rng), c = random_gaussian(rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a * b).conj() == a.conj() * b.conj());
      auto p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
      CHECK((p * q) * r == p * (q * r));
      CHECK(p * (q + r) == p * q + p * r);
      CHECK(p * q == q * p);
      CHECK((p - p).is_zero());
    }
  }

  TEST_CASE("sparse polynomial stores no zeros and evaluates") {
    SparsePoly p({"a"});
    p.add_term({2}, make_rational(1, 12));
    p.add_term({0}, make_rational(-1, 12));
    CHECK(p.to_string() == "1/12*a^2 - 1/12");
    CHECK(p.evaluate({Rational(3)}) == make_rational(2, 3));
    p.add_term({2}, make_rational(-1, 12));
    CHECK(p.terms().size() == 1);
    CHECK(p.to_json().dump() == R"({"0":"-1/12"})");
    CHECK_THROWS(p.add_term({1, 1}, Rational(1)));
  }

  TEST_CASE("series S, T and zetabar") {
    auto S = series_S(4);
    CHECK(S == TruncatedSeries({Rational(1), Rational(0), make_rational(1, 24), Rational(0), make_rational(1, 1920)}));
    CHECK(series_S(0) == TruncatedSeries::one(0));
    CHECK(series_S(6)[6] == make_rational(1, 322560));
    auto S12 = series_S(12);
    for (unsigned k = 0; 2 * k <= 12; ++k) CHECK(S12[2 * k] == oracle::S_coefficient(k));
    CHECK(series_T(0, 8) == series_S(8));
    CHECK(series_T(1, 8) == TruncatedSeries::one(8));
    CHECK(series_T(0, 4)[2] == make_rational(1, 24));
    CHECK(series_zetabar(2) == TruncatedSeries({Rational(2), Rational(0), make_rational(1, 4)}));
    for (long a = -3; a <= 3; ++a) CHECK(series_T(a, 10).is_even());
    CHECK(S12.is_even());
  }

  TEST_CASE("truncated arithmetic") {
    CHECK(series_inv(TruncatedSeries::one(5)) == TruncatedSeries::one(5));
    auto S = series_S(10);
    CHECK(series_mul(S, series_inv(S)) == TruncatedSeries::one(10));
    CHECK_THROWS_AS(series_inv(TruncatedSeries::monomial(3, 1, Rational(1))), std::domain_error);
    CHECK_THROWS_AS(series_exp(TruncatedSeries::one(3)), std::domain_error);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Rational> c(7);
      for (auto& x : c) x = random_rational(rng);
      if (sgn(c[0]) == 0) c[0] = 1;
      TruncatedSeries f(c);
      CHECK(series_mul(f, series_inv(f)) == TruncatedSeries::one(6));
    }
    // Mixing cutoffs keeps the smaller one.
    CHECK((series_S(4) * series_S(8)).cutoff() == 4);
    // exp(z)' = exp(z).
    auto e = series_exp(TruncatedSeries::monomial(6, 1, Rational(1)));
    CHECK(series_derive(e) == e.truncated(5));
    CHECK(series_compose_linear(e, Rational(2))[3] == make_rational(8, 6));
  }

  TEST_CASE("lagrange interpolation") {
    auto r = SparsePoly::variable({"r"}, 0);
    CHECK(lagrange_interpolate({{1, Rational(1)}, {2, Rational(4)}, {3, Rational(9)}}) == r * r);
    CHECK(lagrange_interpolate({{5, make_rational(7, 3)}, {6, make_rational(7, 3)}}) ==
          SparsePoly::constant({"r"}, make_rational(7, 3)));
    CHECK(lagrange_interpolate({{1, Rational(2)}, {2, Rational(3)}, {3, Rational(4)}}) ==
          r + SparsePoly::constant({"r"}, Rational(1)));
    CHECK_THROWS_AS(lagrange_interpolate({{1, Rational(1)}, {1, Rational(2)}}), std::invalid_argument);
    std::mt19937 rng(99);
    std::vector<std::pair<long, Rational>> pts;
    for (long x = -3; x <= 4; ++x) pts.emplace_back(x, random_rational(rng));
    auto p = lagrange_interpolate(pts);
    for (auto& [x, y] : pts) CHECK(p.evaluate({Rational(x)}) == y);
  }

  TEST_CASE("bivariate helpers") {
    auto f = series_exp(TruncatedSeries::monomial(4, 1, Rational(1)));
    auto p = bivariate::compose_linear(f, Rational(1), Rational(-1), 4);
    CHECK(bivariate::coefficient(p, 1, 1) == Rational(-1));
    CHECK(bivariate::coefficient(p, 2, 0) == make_rational(1, 2));
    auto q = bivariate::euler_shift(p);
    CHECK(bivariate::coefficient(q, 1, 1) == Rational(-3));
  }
}
