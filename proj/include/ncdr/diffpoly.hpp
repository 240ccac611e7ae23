#pragma once

#include <climits>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdr/rational.hpp"

namespace ncdr {

// Jet u_{kx,ky} = d_x^kx d_y^ky u, packed into 16 bits.
struct Jet {
  std::uint8_t x = 0;
  std::uint8_t y = 0;
  friend auto operator<=>(const Jet&, const Jet&) = default;
};

// eps^eps mu^mu prod jets (jets kept sorted).
struct DMonomial {
  int eps = 0;
  int mu = 0;
  std::vector<Jet> jets;

  int diff_degree() const;
  int y_degree() const;
  friend auto operator<=>(const DMonomial&, const DMonomial&) = default;
};

// Terms with total differential degree above max_diff_degree or with mu
// power above max_mu are discarded.  Both quantities never decrease under
// products, Moyal products or total derivatives, so every retained
// coefficient is exact.
struct Truncation {
  int max_diff_degree = INT_MAX / 4;
  int max_mu = INT_MAX / 4;

  bool admits(const DMonomial& m) const { return m.diff_degree() <= max_diff_degree && m.mu <= max_mu; }
  static Truncation meet(const Truncation& a, const Truncation& b);
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

// Commutative differential polynomial in the jets u_{kx,ky} with
// Q(i)-coefficients times eps^a mu^b.  Negative eps powers are allowed so
// that pseudo-differential coefficients can use this type.
class DiffPoly2 {
 public:
  using TermMap = std::map<DMonomial, GaussianRational>;

  explicit DiffPoly2(Truncation t = {}) : trunc_(t) {}

  static DiffPoly2 constant(const GaussianRational& c, Truncation t = {});
  static DiffPoly2 jet(int kx, int ky, Truncation t = {});

  const TermMap& terms() const { return terms_; }
  const Truncation& truncation() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const DMonomial& m, const GaussianRational& c);
  GaussianRational coefficient(const DMonomial& m) const;

  // Re-truncates to the meet of the current and the given window.
  DiffPoly2 with_truncation(const Truncation& t) const;

  DiffPoly2& operator+=(const DiffPoly2& o);
  DiffPoly2& operator-=(const DiffPoly2& o);
  DiffPoly2& operator*=(const GaussianRational& c);
  friend DiffPoly2 operator+(DiffPoly2 a, const DiffPoly2& b) { return a += b; }
  friend DiffPoly2 operator-(DiffPoly2 a, const DiffPoly2& b) { return a -= b; }
  friend DiffPoly2 operator*(DiffPoly2 a, const GaussianRational& c) { return a *= c; }
  friend DiffPoly2 operator*(const DiffPoly2& a, const DiffPoly2& b);
  DiffPoly2 operator-() const;
  friend bool operator==(const DiffPoly2& a, const DiffPoly2& b) { return a.terms_ == b.terms_; }

  // Multiplies by eps^a mu^b.
  DiffPoly2 shifted(int eps, int mu) const;

  DiffPoly2 dx() const;
  DiffPoly2 dy() const;
  DiffPoly2 derivative(int kx, int ky) const;

  // Partial derivative with respect to the jet variable u_{kx,ky}.
  DiffPoly2 partial(Jet j) const;

  DiffPoly2 mu_zero() const;
  // Keeps terms with eps power <= max_eps.
  DiffPoly2 eps_at_most(int max_eps) const;

  int min_eps() const;
  int min_mu() const;
  int min_diff_degree() const;
  bool is_real() const;
  bool is_eps_regular() const { return is_zero() || min_eps() >= 0; }

  nlohmann::json to_json() const;
  std::string to_string() const;

 private:
  Truncation trunc_;
  TermMap terms_;
};

// Moyal product: sum over k1, k2 of (-1)^k2 (i eps mu)^(k1+k2) /
// (2^(k1+k2) k1! k2!) (d_x^k1 d_y^k2 f)(d_x^k2 d_y^k1 g).
DiffPoly2 moyal(const DiffPoly2& f, const DiffPoly2& g);

// Left-nested star product f_1 * f_2 * ... * f_k.
DiffPoly2 moyal_chain(const std::vector<DiffPoly2>& factors);

// Evolutionary derivative D_P(Q) = sum_J dQ/du_J * d^J P.
DiffPoly2 evolutionary_derivative(const DiffPoly2& P, const DiffPoly2& Q);

}  // namespace ncdr
