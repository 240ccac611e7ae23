#pragma once

#include <compare>
#include <functional>
#include <vector>

#include <json.hpp>

#include "ncdr/rational.hpp"

namespace ncdr {

// The variable t^a_d.
struct TVar {
  int a = 0;
  int d = 0;
  friend auto operator<=>(const TVar&, const TVar&) = default;
};

// A monomial in the t-variables, kept as a sorted multiset.  It also names
// the mixed partial derivative d^M = prod_v (d/dt_v)^{m_v}.
using TMonomial = std::vector<TVar>;

TMonomial tmono(std::initializer_list<TVar> vars);
TMonomial tmono_add(TMonomial m, TVar v, int times = 1);
// Removes one copy of v; v must occur in m.
TMonomial tmono_remove(TMonomial m, TVar v);

int mode_sum(const TMonomial& m);
int psi_weight(const TMonomial& m);
// prod_v m_v!, the ratio between derivative and monomial coefficients.
Integer multiplicity_factorial(const TMonomial& m);
// Distinct variables with their multiplicities.
std::vector<std::pair<TVar, int>> multiplicities(const TMonomial& m);

nlohmann::json tmono_json(const TMonomial& m);

// Visits every ordered k-tuple (M_1, ..., M_k) with M_1 + ... + M_k = m,
// together with the Leibniz weight prod_v m_v! / prod_{v,i} m_{v,i}!.
void for_each_split(const TMonomial& m, int k,
                    const std::function<void(const std::vector<TMonomial>&, const Integer&)>& visit);

// Visits every multiset of `count` variables with |a| <= amax and total
// psi weight `weight`.
void for_each_tmonomial(int count, int weight, int amax, const std::function<void(const TMonomial&)>& visit);

}  // namespace ncdr
