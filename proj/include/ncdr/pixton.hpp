#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdr/rational.hpp"
#include "ncdr/sparse_poly.hpp"
#include "ncdr/stable_graph.hpp"

namespace ncdr {

// Psi-exponents on legs coming from exp(a_i^2 psi) (leg_orders) and
// expansion orders m_e of the edge factors, in StableGraph::edges() order.
struct DegreeSplit {
  std::vector<int> leg_orders;
  std::vector<int> edge_orders;
};

// Raised when the extra r-sample disagrees with the interpolant.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, long r_lo, long r_hi)
      : std::runtime_error(what), r_lo_(r_lo), r_hi_(r_hi) {}
  long r_lo() const { return r_lo_; }
  long r_hi() const { return r_hi_; }

 private:
  long r_lo_, r_hi_;
};

// r^{-h1} times the sum over mod-r weightings of
// prod_i a_i^{2 k_i} * prod_e (w(h) w(h'))^{m_e + 1}.
Rational weighting_sum_at_r(const StableGraph& graph, const DegreeSplit& split, std::span<const int> A, long r);

// Constant coefficient of the polynomial through the first
// degree_bound+1 samples; the remaining samples must lie on it.
Rational r_constant_term(const std::map<long, Rational>& samples, int degree_bound);

struct PixtonOptions {
  int window_shift = 0;  // added to the first sampled r
};

struct PixtonResult {
  Rational value;
  long r_lo = 0;
  long r_hi = 0;
  std::size_t graph_count = 0;
};

// Integral over M_{g,n}-bar of P_g^d(A) times prod psi_i^{psiExp_i}.
// Throws std::domain_error if sum A != 0 or the arguments are malformed,
// PrecisionError if the r-window is below the polynomiality threshold.
PixtonResult pixton_pairing_detailed(int g, int d, std::span<const int> A, std::span<const int> psi,
                                     const PixtonOptions& options = {});
Rational pixton_pairing(int g, int d, std::span<const int> A, std::span<const int> psi,
                        const PixtonOptions& options = {});

// 2^{-g} times the degree-g pairing.
Rational dr_pairing(int g, std::span<const int> A, std::span<const int> psi);

// Pairing for A = (a, -a) as an even polynomial in "a", obtained by
// interpolating at a = 0, 1, ... with one stability sample.
SparsePoly pixton_pairing_in_a(int g, int d, std::span<const int> psi, int max_degree);

nlohmann::json pixton_result_json(int g, int d, std::span<const int> A, std::span<const int> psi,
                                  const PixtonResult& result);

void clear_pixton_caches();

}  // namespace ncdr
