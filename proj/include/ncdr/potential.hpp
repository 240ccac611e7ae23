#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "ncdr/diffpoly.hpp"
#include "ncdr/fourier.hpp"
#include "ncdr/rational.hpp"
#include "ncdr/report.hpp"
#include "ncdr/tmonomial.hpp"

namespace ncdr {

// Derivative coefficients of the potential: the value at t = 0 of
// d^N F, taken at eps^{2g} mu^{2j}.  Structural zeros (unstable (g, n),
// nonzero mode sum, dimension mismatch, j outside [0, g]) are answered
// without consulting the backend; everything else is memoized.
class CoefficientSource {
 public:
  virtual ~CoefficientSource() = default;
  Rational correlator(int g, int j, const TMonomial& N);
  virtual std::string name() const = 0;
  std::size_t evaluations() const;

 protected:
  virtual Rational compute(int g, int j, const std::vector<int>& A, const std::vector<int>& d) = 0;

 private:
  mutable std::mutex mu_;
  std::map<std::tuple<int, int, TMonomial>, Rational> memo_;
};

// 2^{-j} times the pairing of the degree-2j Pixton class with psi classes.
class PixtonSource : public CoefficientSource {
 public:
  std::string name() const override { return "pixton"; }

 protected:
  Rational compute(int g, int j, const std::vector<int>& A, const std::vector<int>& d) override;
};

// Pure psi correlators at j = 0 and zero otherwise: the potential of the
// mu = 0 slice.
class PsiSource : public CoefficientSource {
 public:
  std::string name() const override { return "psi"; }

 protected:
  Rational compute(int g, int j, const std::vector<int>& A, const std::vector<int>& d) override;
};

struct PotentialCutoffs {
  int G = 2;     // max genus
  int Amax = 2;  // max |a_i|
  int Nmax = 4;  // max number of t-variables
  int Dmax = 7;  // max sum of d_i
  nlohmann::json to_json() const;
};

struct PotentialKey {
  int g = 0;
  int j = 0;
  TMonomial mono;
  friend auto operator<=>(const PotentialKey&, const PotentialKey&) = default;
};

class TruncatedPotential {
 public:
  TruncatedPotential(PotentialCutoffs cutoffs, std::shared_ptr<CoefficientSource> source);

  const PotentialCutoffs& cutoffs() const { return cutoffs_; }
  CoefficientSource& source() const { return *source_; }

  bool within(int g, int j, const TMonomial& N) const;
  // Exact values for any (g, j, N); the cutoffs only bound which entries
  // are listed by materialize().
  Rational derivative(int g, int j, const TMonomial& N) const { return source_->correlator(g, j, N); }
  Rational coefficient(int g, int j, const TMonomial& N) const;

  // Computes every nonzero dimension-compatible coefficient in the cutoffs.
  void materialize(unsigned jobs = 0);
  const std::map<PotentialKey, Rational>& entries() const { return entries_; }
  nlohmann::json to_json() const;

 private:
  PotentialCutoffs cutoffs_;
  std::shared_ptr<CoefficientSource> source_;
  std::map<PotentialKey, Rational> entries_;
};

TruncatedPotential build_potential(const PotentialCutoffs& cutoffs,
                                   std::shared_ptr<CoefficientSource> source = std::make_shared<PixtonSource>(),
                                   unsigned jobs = 0);

// w^{P;a} = d^2 F / dt^0_0 dt^{-a}_0 and u^{P;a} = T_a(eps mu d_x) w^{P;a},
// read off lazily from the potential.  Powers are full exponents of eps
// and mu.
class DressedSeries {
 public:
  explicit DressedSeries(const TruncatedPotential& potential) : potential_(&potential) {}

  // Value at t = 0 of d^M d_x^p w^{P;a}, coefficient of eps^e mu^m.
  Rational w(int a, int p, const TMonomial& M, int e, int m) const;
  Rational u(int a, int p, const TMonomial& M, int e, int m) const;

  const TruncatedPotential& potential() const { return *potential_; }

 private:
  const TruncatedPotential* potential_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, TMonomial, int, int>, Rational> u_memo_;
};

struct MainTheoremWindow {
  int G = 2;
  int Amax = 2;
  int Nmax = 4;
  int Dmax = 7;
  int flow = 1;
  bool mu_zero = false;  // only targets at mu^0
  nlohmann::json to_json() const;
};

struct ResidualEntry {
  int a = 0;
  TMonomial target;
  int eps = 0;
  int mu = 0;
  Rational lhs;
  Rational rhs;
};

struct MainTheoremReport {
  MainTheoremWindow window;
  std::size_t checked = 0;
  std::vector<ResidualEntry> mismatches;
  std::vector<ResidualEntry> excluded;  // lhs/rhs left at zero
  std::vector<ResidualEntry> values;    // every checked coefficient, when requested
  bool ok() const { return mismatches.empty(); }
  nlohmann::json to_json() const;
};

// Fourier form of flow n with mode bound Amax and a differential window
// that keeps every term with eps power <= 2G.
FourierFlow main_theorem_flow(int n, const MainTheoremWindow& window);
// Fourier form of the same flow at mu = 0 restricted to the single mode 0.
FourierFlow wk_flow(int n, const MainTheoremWindow& window);
FourierFlow fourier_flow_of(const DiffPoly2& rhs, const MainTheoremWindow& window);

// Compares d u^{P;a}/dt^0_n with the flow's right-hand side for every
// target d^M, eps^{2g} mu^{2j} whose leading left-hand coefficient
// d^{M + t^0_n + t^0_0 + t^{-a}_0} F lies within the window.  Targets that
// need flow terms beyond the flow's mode bound are listed as excluded.
MainTheoremReport check_main_theorem(const FourierFlow& flow, const DressedSeries& dressed,
                                     const MainTheoremWindow& window, bool keep_values = false,
                                     unsigned jobs = 0);

// Coefficient of mu^{2j} z^{3g-1-j} on both sides of the two-point
// generating function for j = 0..g.
CheckReport check_corollary(int g, int a, int cutoff = -1);

// String, dilaton and mode-conservation identities on every entry of the
// potential whose left-hand side lies within the cutoffs.
CheckReport check_string_dilaton_potential(const TruncatedPotential& potential);

struct CDCutoffs {
  int G = 2;
  int alpha_max = 3;
  int n_max = 2;
  int total_degree = 6;
};

// C_{alpha,g} and D^n_{alpha1,d1;alpha2,d2} from DR pairings against
// the coefficients of 1/T_alpha(z) and (z1+z2)^n S(a1 z2 - a2 z1)/T_a(z1+z2).
CheckReport check_CD_functions(const CDCutoffs& cutoffs = {}, unsigned jobs = 0);

}  // namespace ncdr
