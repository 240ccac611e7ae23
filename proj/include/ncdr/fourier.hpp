#pragma once

#include <compare>
#include <map>
#include <vector>

#include <json.hpp>

#include "ncdr/diffpoly.hpp"

namespace ncdr {

// d_x^dx u^mode.
struct ModeJet {
  int mode = 0;
  int dx = 0;
  friend auto operator<=>(const ModeJet&, const ModeJet&) = default;
};

struct ModeMonomial {
  int eps = 0;
  int mu = 0;
  std::vector<ModeJet> jets;  // sorted
  int mode_weight() const;
  int x_degree() const;
  friend auto operator<=>(const ModeMonomial&, const ModeMonomial&) = default;
};

using ModePoly = std::map<ModeMonomial, Rational>;

void add_mode_term(ModePoly& p, ModeMonomial m, const Rational& c);

// Right-hand sides of du^a/dt for a in [-mode_bound, mode_bound].
struct FourierFlow {
  int mode_bound = 0;
  std::map<int, ModePoly> equations;

  bool is_homogeneous() const;
  nlohmann::json to_json() const;
};

// Substitutes u = sum_{|b| <= amax} u^b e^{iby}.  Products landing outside
// the mode window are dropped.  Throws std::logic_error if an equation keeps
// a nonzero imaginary part.
FourierFlow to_fourier(const DiffPoly2& rhs, int amax);

nlohmann::json mode_poly_json(const ModePoly& p);

}  // namespace ncdr
