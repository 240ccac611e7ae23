#pragma once

#include <map>
#include <vector>

#include <json.hpp>

#include "ncdr/diffpoly.hpp"

namespace ncdr {

// sum_{i <= top} a_i * d_x^i with orders below -neg_tail discarded.
class PseudoDiffOp {
 public:
  PseudoDiffOp(int neg_tail, Truncation t) : neg_tail_(neg_tail), trunc_(t) {}

  static PseudoDiffOp dx_power(int k, int neg_tail, Truncation t);
  static PseudoDiffOp multiplication(const DiffPoly2& a, int neg_tail);

  int neg_tail() const { return neg_tail_; }
  const Truncation& truncation() const { return trunc_; }
  const std::map<int, DiffPoly2>& coeffs() const { return coeffs_; }
  DiffPoly2 coeff(int order) const;
  void add(int order, const DiffPoly2& a);
  int top_order() const;

  PseudoDiffOp plus_part() const;
  DiffPoly2 residue() const { return coeff(-1); }

  PseudoDiffOp& operator+=(const PseudoDiffOp& o);
  PseudoDiffOp& operator-=(const PseudoDiffOp& o);
  friend PseudoDiffOp operator+(PseudoDiffOp a, const PseudoDiffOp& b) { return a += b; }
  friend PseudoDiffOp operator-(PseudoDiffOp a, const PseudoDiffOp& b) { return a -= b; }
  friend bool operator==(const PseudoDiffOp& a, const PseudoDiffOp& b) { return a.coeffs_ == b.coeffs_; }

 private:
  int neg_tail_;
  Truncation trunc_;
  std::map<int, DiffPoly2> coeffs_;
};

// (a d^i) o (b d^j) = sum_k binom(i,k) (a * d_x^k b) d^(i+j-k), with the
// generalized binomial for negative i and the k-sum cut at -neg_tail.
PseudoDiffOp pdo_compose(const PseudoDiffOp& A, const PseudoDiffOp& B);

// Only the coefficient of d^order in A o B.
DiffPoly2 pdo_compose_coefficient(const PseudoDiffOp& A, const PseudoDiffOp& B, int order);

// Square root d + sum_{i <= 0} b_i d^i of a monic second-order operator.
// The square of the result reproduces L at every order > -neg_tail.
// Throws std::domain_error if L is not d^2 + lower.
PseudoDiffOp pdo_sqrt(const PseudoDiffOp& L);

// d^2 + 2 eps^{-2} u.
PseudoDiffOp lax_operator(int neg_tail, Truncation t);

struct FlowWindow {
  int max_diff_degree = 8;
  int neg_tail = -1;  // -1 selects 2n+3
};

// du/dt_n = (eps^2/2) eps^{2n}/(2n+1)!! [(L^{n+1/2})_+, L]_0.  Throws
// std::invalid_argument (window error) if neg_tail < 2n+1.
DiffPoly2 lax_flow_rhs(int n, const FlowWindow& window = {});

// eps^{2n+2}/(2n+1)!! res L^{n+1/2}; its x-derivative is lax_flow_rhs(n).
DiffPoly2 flow_density(int n, const FlowWindow& window = {});

// One term c eps^eps u_{x^d_1} * ... * u_{x^d_k} of a star-ordered density.
struct StarTerm {
  Rational coeff;
  int eps = 0;
  std::vector<int> factors;  // x-derivative order of each factor, in star order
};

// Writes a flow density as a combination of left-nested star products of
// x-jets eps^{2g} u_{d_1} * ... * u_{d_k}, k = n+1-g, sum d = 2g.  Throws
// std::runtime_error if no exact combination exists in the window.
std::vector<StarTerm> star_factorize(const DiffPoly2& density, int n);

DiffPoly2 star_expand(const std::vector<StarTerm>& terms, Truncation t);

nlohmann::json star_terms_json(const std::vector<StarTerm>& terms);

struct CommuteWindow {
  int max_eps = 6;
  int max_diff_degree = 8;
};

// D_P(Q) - D_Q(P) restricted to eps <= max_eps and the differential window.
// P and Q must be flows whose terms all have differential degree >= 1.
DiffPoly2 flow_bracket(const DiffPoly2& P, const DiffPoly2& Q, const CommuteWindow& window);

bool flows_commute(int m, int n, const CommuteWindow& window = {});

}  // namespace ncdr
