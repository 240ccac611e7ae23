#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ncdr/fourier.hpp"
#include "ncdr/report.hpp"
#include "ncdr/tmonomial.hpp"

namespace ncdr {

// Raised when the special flow violates a hypothesis of the
// reconstruction, or the recursion would read a non-smaller entry.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ReconstructionBounds {
  int eps_order = 2;
  int n_max = 2;
  int d_max = 6;
  int Amax = 1;
  nlohmann::json to_json() const;
};

// Key of the coefficient of eps^k mu^mu t^M in w^{sp;alpha}|_{x=0}.
struct CKey {
  int alpha = 0;
  TMonomial mono;
  int k = 0;
  int mu = 0;
  friend auto operator<=>(const CKey&, const CKey&) = default;
};

struct RecursionStats {
  std::size_t entries = 0;
  std::size_t lookups = 0;
  std::size_t self_lookups = 0;
  std::size_t seed_checks = 0;
};

class CCoefficientTable {
 public:
  // Derivative normalization: prod_v m_v! times the monomial coefficient.
  const std::map<CKey, Rational>& derivatives() const { return values_; }
  // Keys with the wrong mode sum or mu > k are structurally zero; other
  // keys outside the bounds throw std::out_of_range.
  Rational derivative(const CKey& key) const;
  Rational coefficient(const CKey& key) const;
  const ReconstructionBounds& bounds() const { return bounds_; }
  const RecursionStats& stats() const { return stats_; }

  nlohmann::json to_json() const;
  // One line per entry: "alpha;k;mu;a1:d1,...,an:dn;p/q" (monomial coefficient).
  std::string to_cache_text() const;
  static CKey parse_cache_key(const std::string& line, Rational* value = nullptr);

 private:
  friend CCoefficientTable reconstruct_from_special_flow(const FourierFlow&, const ReconstructionBounds&);
  ReconstructionBounds bounds_;
  std::map<CKey, Rational> values_;  // entries inside the bounds
  RecursionStats stats_;
};

// Solves (eps d/deps + sum t d/dt) w|_{x=0} = (d_x P)|_{w = w^sp}|_{x=0}
// for the c-coefficients, entry by entry in (order, length, weight) order,
// with unit vector A = delta^{alpha,0}.  `special_flow` is d_x P in Fourier
// form; its mode bound must cover n_max * Amax.
CCoefficientTable reconstruct_from_special_flow(const FourierFlow& special_flow, const ReconstructionBounds& bounds);

// The three bivariate / univariate series identities behind the
// A-coefficient formula, for |alpha_i| <= alpha_max, exact to total
// degree `cutoff`.
CheckReport verify_series_identities(int cutoff = 8, int alpha_max = 3);

}  // namespace ncdr
