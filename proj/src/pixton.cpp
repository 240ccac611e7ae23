#include "ncdr/pixton.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <tuple>

#include "ncdr/psi.hpp"
#include "ncdr/series.hpp"

namespace ncdr {

namespace {

using i128 = __int128;

Rational from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer z = (hi << 64) + lo;
  if (neg) z = -z;
  return Rational(z);
}

// Spanning-tree solver for the mod-r flow conditions.  Cycle edges take
// free weights; tree edges are then forced leaf-to-root.
class WeightingPlan {
 public:
  WeightingPlan(const StableGraph& G, std::span<const int> A) : edges_(G.edges()) {
    const int V = G.vertex_count();
    const int E = static_cast<int>(edges_.size());
    leg_sum_.assign(V, 0);
    for (int i = 0; i < G.leg_count(); ++i) leg_sum_[G.leg_vertex(i)] += A[i];
    std::vector<std::vector<std::pair<int, int>>> adj(V);  // (edge, other vertex)
    for (int e = 0; e < E; ++e) {
      int u = G.vertex_of[edges_[e].first], v = G.vertex_of[edges_[e].second];
      first_vertex_.push_back(u);
      second_vertex_.push_back(v);
      adj[u].emplace_back(e, v);
      if (u != v) adj[v].emplace_back(e, u);
    }
    std::vector<int> seen(V, 0);
    std::vector<int> tree_edge(E, 0);
    parent_edge_.assign(V, -1);
    parent_.assign(V, -1);
    order_.push_back(0);
    seen[0] = 1;
    for (std::size_t q = 0; q < order_.size(); ++q) {
      int v = order_[q];
      for (auto [e, w] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        tree_edge[e] = 1;
        parent_edge_[w] = e;
        parent_[w] = v;
        order_.push_back(w);
      }
    }
    for (int e = 0; e < E; ++e) {
      if (!tree_edge[e]) cycle_edges_.push_back(e);
    }
  }

  int h1() const { return static_cast<int>(cycle_edges_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // Calls fn(p) for every admissible weighting, p[e] = w(h) w(h').
  template <class Fn>
  void for_each(long r, Fn&& fn) const {
    const int V = static_cast<int>(leg_sum_.size());
    const int E = edge_count();
    const int C = h1();
    std::vector<long> x(C, 0);
    std::vector<long> s(V);
    std::vector<std::int64_t> p(E);
    auto mod = [r](long v) { return ((v % r) + r) % r; };
    for (;;) {
      for (int v = 0; v < V; ++v) s[v] = mod(leg_sum_[v]);
      for (int c = 0; c < C; ++c) {
        int e = cycle_edges_[c];
        long w1 = x[c], w2 = mod(-x[c]);
        s[first_vertex_[e]] += w1;
        s[second_vertex_[e]] += w2;
        p[e] = static_cast<std::int64_t>(w1) * w2;
      }
      for (std::size_t k = order_.size(); k-- > 1;) {
        int v = order_[k];
        int e = parent_edge_[v];
        long w_child = mod(-s[v]);
        long w_parent = mod(-w_child);
        s[parent_[v]] += w_parent;
        p[e] = static_cast<std::int64_t>(w_child) * w_parent;
      }
      fn(p);
      int c = 0;
      while (c < C && ++x[c] == r) x[c++] = 0;
      if (c == C) break;
    }
  }

 private:
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> first_vertex_, second_vertex_;
  std::vector<long> leg_sum_;
  std::vector<int> order_, parent_edge_, parent_, cycle_edges_;
};

i128 checked_mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("weighting sum overflow");
  return out;
}

i128 checked_add(i128 a, i128 b) {
  i128 out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("weighting sum overflow");
  return out;
}

// W_m(r) for every m in `mlist`, each as a vector over the r-list.
std::vector<std::vector<Rational>> weight_table(const StableGraph& G, std::span<const int> A,
                                                const std::vector<std::vector<int>>& mlist,
                                                const std::vector<long>& rs, int max_power) {
  WeightingPlan plan(G, A);
  const int E = plan.edge_count();
  std::vector<std::vector<Rational>> out(mlist.size(), std::vector<Rational>(rs.size()));
  std::vector<i128> acc(mlist.size());
  std::vector<std::vector<i128>> pw(E, std::vector<i128>(max_power + 1));
  for (std::size_t ri = 0; ri < rs.size(); ++ri) {
    std::fill(acc.begin(), acc.end(), 0);
    plan.for_each(rs[ri], [&](const std::vector<std::int64_t>& p) {
      for (int e = 0; e < E; ++e) {
        pw[e][0] = 1;
        for (int j = 1; j <= max_power; ++j) pw[e][j] = checked_mul(pw[e][j - 1], p[e]);
      }
      for (std::size_t mi = 0; mi < mlist.size(); ++mi) {
        i128 term = 1;
        for (int e = 0; e < E; ++e) term = checked_mul(term, pw[e][mlist[mi][e] + 1]);
        acc[mi] = checked_add(acc[mi], term);
      }
    });
    Rational denom = power(Rational(rs[ri]), static_cast<unsigned>(plan.h1()));
    for (std::size_t mi = 0; mi < mlist.size(); ++mi) out[mi][ri] = from_i128(acc[mi]) / denom;
  }
  return out;
}

// All m in N^E with sum (m_e + 1) <= d.
std::vector<std::vector<int>> edge_order_vectors(int E, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> m(E, 0);
  std::function<void(int, int)> rec = [&](int e, int budget) {
    if (e == E) {
      out.push_back(m);
      return;
    }
    for (int v = 0; v + 1 <= budget; ++v) {
      m[e] = v;
      rec(e + 1, budget - v - 1);
    }
  };
  rec(0, d);
  return out;
}

// r-independent part of a graph's contribution for a fixed edge-order
// vector: sum over leg orders and psi distributions along edges of
// prod a_i^{2k}/k! * prod (-1)^m/(m+1)! binom(m,p) * prod vertex correlators.
Rational psi_factor(const StableGraph& G, std::span<const int> A, std::span<const int> psi,
                    const std::vector<int>& m, int leg_budget) {
  const auto edges = G.edges();
  const int E = static_cast<int>(edges.size());
  const int n = G.leg_count();
  const int V = G.vertex_count();
  std::vector<std::vector<int>> at(V);
  for (int h = 0; h < G.half_edge_count(); ++h) at[G.vertex_of[h]].push_back(h);
  std::vector<int> need(V);
  for (int v = 0; v < V; ++v) need[v] = 3 * G.genus[v] - 3 + static_cast<int>(at[v].size());

  Rational edge_coeff(1);
  for (int e = 0; e < E; ++e) {
    Rational c = Rational(1) / Rational(factorial(static_cast<unsigned>(m[e] + 1)));
    edge_coeff *= (m[e] % 2 ? -c : c);
  }

  PsiTable& table = default_psi_table();
  std::vector<int> ex(G.half_edge_count(), 0);
  Rational total(0);
  std::vector<int> k(n, 0);

  auto vertex_product = [&]() {
    Rational prod(1);
    std::vector<int> d;
    for (int v = 0; v < V; ++v) {
      d.clear();
      int sum = 0;
      for (int h : at[v]) {
        d.push_back(ex[h]);
        sum += ex[h];
      }
      if (sum != need[v]) return Rational(0);
      Rational c = table.correlator(G.genus[v], d);
      if (sgn(c) == 0) return Rational(0);
      prod *= c;
    }
    return prod;
  };

  std::function<void(int, const Rational&)> edges_rec = [&](int e, const Rational& coeff) {
    if (e == E) {
      Rational vp = vertex_product();
      if (sgn(vp) != 0) total += coeff * vp;
      return;
    }
    auto [h, hp] = edges[e];
    for (int p = 0; p <= m[e]; ++p) {
      ex[h] = p;
      ex[hp] = m[e] - p;
      edges_rec(e + 1, coeff * binomial(Rational(m[e]), static_cast<unsigned>(p)));
    }
    ex[h] = ex[hp] = 0;
  };

  std::function<void(int, int, const Rational&)> legs_rec = [&](int i, int budget, const Rational& coeff) {
    if (i == n) {
      if (budget == 0) edges_rec(0, coeff);
      return;
    }
    for (int kk = 0; kk <= budget; ++kk) {
      if (kk > 0 && A[i] == 0) break;
      ex[G.legs[i]] = psi[i] + kk;
      Rational c = coeff * power(Rational(A[i]) * A[i], static_cast<unsigned>(kk)) /
                   Rational(factorial(static_cast<unsigned>(kk)));
      legs_rec(i + 1, budget - kk, c);
    }
    ex[G.legs[i]] = psi[i];
  };
  legs_rec(0, leg_budget, edge_coeff);
  return total;
}

using PairingKey = std::tuple<int, int, std::vector<std::pair<int, int>>, int>;
using WeightKey = std::tuple<int, int, int, std::vector<int>, long, std::size_t>;

struct Caches {
  std::shared_mutex mu;
  std::map<PairingKey, PixtonResult> pairings;
  std::map<WeightKey, std::shared_ptr<const std::vector<std::vector<Rational>>>> weights;
};

Caches& caches() {
  static Caches c;
  return c;
}

}  // namespace

Rational weighting_sum_at_r(const StableGraph& graph, const DegreeSplit& split, std::span<const int> A, long r) {
  if (r < 1) throw std::domain_error("weighting_sum_at_r: r must be positive");
  if (static_cast<int>(A.size()) != graph.leg_count() ||
      static_cast<int>(split.leg_orders.size()) != graph.leg_count() ||
      static_cast<int>(split.edge_orders.size()) != graph.edge_count()) {
    throw std::invalid_argument("weighting_sum_at_r: size mismatch");
  }
  int max_power = 0;
  for (int m : split.edge_orders) max_power = std::max(max_power, m + 1);
  auto table = weight_table(graph, A, {split.edge_orders}, {r}, max_power);
  Rational legs(1);
  for (std::size_t i = 0; i < A.size(); ++i) {
    legs *= power(Rational(A[i]) * A[i], static_cast<unsigned>(split.leg_orders[i]));
  }
  return legs * table[0][0];
}

Rational r_constant_term(const std::map<long, Rational>& samples, int degree_bound) {
  if (degree_bound < 0) throw std::domain_error("r_constant_term: negative degree bound");
  if (static_cast<int>(samples.size()) < degree_bound + 2) {
    throw std::invalid_argument("r_constant_term: need degree_bound + 2 samples");
  }
  std::vector<std::pair<long, Rational>> fit;
  for (const auto& [r, v] : samples) {
    if (static_cast<int>(fit.size()) == degree_bound + 1) break;
    fit.emplace_back(r, v);
  }
  SparsePoly p = lagrange_interpolate(fit);
  for (const auto& [r, v] : samples) {
    if (p.evaluate({Rational(r)}) != v) {
      throw PrecisionError("r-samples are not polynomial of the expected degree on this window",
                           samples.begin()->first, samples.rbegin()->first);
    }
  }
  return p.coefficient({0});
}

PixtonResult pixton_pairing_detailed(int g, int d, std::span<const int> A_in, std::span<const int> psi_in,
                                     const PixtonOptions& options) {
  const int n = static_cast<int>(A_in.size());
  if (static_cast<int>(psi_in.size()) != n) throw std::domain_error("pixton_pairing: |A| != |psiExp|");
  if (g < 0 || d < 0) throw std::domain_error("pixton_pairing: negative genus or degree");
  if (2 * g - 2 + n <= 0) throw std::domain_error("pixton_pairing: unstable (g, n)");
  long asum = 0, aabs = 0;
  int psum = 0;
  for (int i = 0; i < n; ++i) {
    asum += A_in[i];
    aabs += std::abs(A_in[i]);
    if (psi_in[i] < 0) throw std::domain_error("pixton_pairing: negative psi exponent");
    psum += psi_in[i];
  }
  if (asum != 0) throw std::domain_error("pixton_pairing: double ramification data must sum to zero");
  if (d + psum != 3 * g - 3 + n) return PixtonResult{Rational(0), 0, 0, 0};

  // The class is symmetric under simultaneous permutation of (a_i, d_i).
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(A_in[i], psi_in[i]);
  std::sort(pairs.begin(), pairs.end());
  PairingKey key{g, d, pairs, options.window_shift};
  auto& C = caches();
  {
    std::shared_lock lock(C.mu);
    if (auto it = C.pairings.find(key); it != C.pairings.end()) return it->second;
  }
  std::vector<int> A, psi;
  for (auto [a, p] : pairs) {
    A.push_back(a);
    psi.push_back(p);
  }

  const int degree_bound = 2 * d;
  const long r0 = std::max<long>(aabs, 2 * d) + 2 + options.window_shift;
  std::vector<long> rs;
  for (long r = r0; r <= r0 + degree_bound + 1; ++r) rs.push_back(r);
  std::vector<Rational> totals(rs.size(), Rational(0));

  const auto& graphs = enumerate_stable_graphs(g, n, d);
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& rec = graphs[gi];
    const int E = rec.graph.edge_count();
    auto mlist = edge_order_vectors(E, d);
    std::vector<Rational> q(mlist.size());
    bool any = false;
    for (std::size_t mi = 0; mi < mlist.size(); ++mi) {
      int used = 0;
      for (int m : mlist[mi]) used += m + 1;
      q[mi] = psi_factor(rec.graph, A, psi, mlist[mi], d - used);
      any = any || sgn(q[mi]) != 0;
    }
    if (!any) continue;
    WeightKey wk{g, n, d, A, r0, gi};
    std::shared_ptr<const std::vector<std::vector<Rational>>> table;
    {
      std::shared_lock lock(C.mu);
      if (auto it = C.weights.find(wk); it != C.weights.end()) table = it->second;
    }
    if (!table) {
      table = std::make_shared<const std::vector<std::vector<Rational>>>(weight_table(rec.graph, A, mlist, rs, d));
      std::unique_lock lock(C.mu);
      C.weights.emplace(wk, table);
    }
    Rational inv_aut = Rational(1) / Rational(static_cast<unsigned long>(rec.aut_count));
    for (std::size_t mi = 0; mi < mlist.size(); ++mi) {
      if (sgn(q[mi]) == 0) continue;
      Rational c = q[mi] * inv_aut;
      for (std::size_t ri = 0; ri < rs.size(); ++ri) totals[ri] += c * (*table)[mi][ri];
    }
  }

  std::map<long, Rational> samples;
  for (std::size_t ri = 0; ri < rs.size(); ++ri) samples.emplace(rs[ri], totals[ri]);
  PixtonResult result{r_constant_term(samples, degree_bound), rs.front(), rs.back(), graphs.size()};
  std::unique_lock lock(C.mu);
  C.pairings.emplace(key, result);
  return result;
}

Rational pixton_pairing(int g, int d, std::span<const int> A, std::span<const int> psi, const PixtonOptions& options) {
  return pixton_pairing_detailed(g, d, A, psi, options).value;
}

Rational dr_pairing(int g, std::span<const int> A, std::span<const int> psi) {
  return pixton_pairing(g, g, A, psi) / power(Rational(2), static_cast<unsigned>(g));
}

SparsePoly pixton_pairing_in_a(int g, int d, std::span<const int> psi, int max_degree) {
  if (psi.size() != 2) throw std::invalid_argument("pixton_pairing_in_a: expects two psi exponents");
  const int half = max_degree / 2;
  std::vector<std::pair<long, Rational>> fit;
  Rational check_value;
  long check_at = half + 1;
  for (long a = 0; a <= check_at; ++a) {
    std::vector<int> A{static_cast<int>(a), static_cast<int>(-a)};
    Rational v = pixton_pairing(g, d, A, psi);
    if (a < check_at) fit.emplace_back(a * a, v);
    else check_value = v;
  }
  SparsePoly in_s = lagrange_interpolate(fit);
  if (in_s.evaluate({Rational(check_at * check_at)}) != check_value) {
    throw PrecisionError("pairing is not an even polynomial of the stated degree in a", 0, check_at);
  }
  SparsePoly out({"a"});
  for (const auto& [e, c] : in_s.terms()) out.add_term({2 * e[0]}, c);
  return out;
}

nlohmann::json pixton_result_json(int g, int d, std::span<const int> A, std::span<const int> psi,
                                  const PixtonResult& result) {
  return {{"g", g},
          {"d", d},
          {"A", std::vector<int>(A.begin(), A.end())},
          {"psiExp", std::vector<int>(psi.begin(), psi.end())},
          {"value", to_string(result.value)},
          {"rWindow", {result.r_lo, result.r_hi}},
          {"graphCount", result.graph_count}};
}

void clear_pixton_caches() {
  auto& C = caches();
  std::unique_lock lock(C.mu);
  C.pairings.clear();
  C.weights.clear();
}

}  // namespace ncdr
