#include "ncdr/stable_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace ncdr {

std::vector<std::pair<int, int>> StableGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int h = 0; h < half_edge_count(); ++h) {
    if (involution[h] > h) out.emplace_back(h, involution[h]);
  }
  return out;
}

int StableGraph::edge_count() const {
  int c = 0;
  for (int h = 0; h < half_edge_count(); ++h) c += involution[h] > h;
  return c;
}

int StableGraph::total_genus() const { return std::accumulate(genus.begin(), genus.end(), 0) + h1(); }

int StableGraph::valence(int v) const {
  return static_cast<int>(std::count(vertex_of.begin(), vertex_of.end(), v));
}

void StableGraph::validate() const {
  const int H = half_edge_count();
  const int V = vertex_count();
  if (static_cast<int>(involution.size()) != H) throw std::invalid_argument("involution size mismatch");
  for (int h = 0; h < H; ++h) {
    if (vertex_of[h] < 0 || vertex_of[h] >= V) throw std::invalid_argument("half-edge on missing vertex");
    int k = involution[h];
    if (k < 0 || k >= H || involution[k] != h) throw std::invalid_argument("involution is not self-inverse");
  }
  std::vector<int> fixed;
  for (int h = 0; h < H; ++h) {
    if (involution[h] == h) fixed.push_back(h);
  }
  std::vector<int> sorted_legs = legs;
  std::sort(sorted_legs.begin(), sorted_legs.end());
  if (sorted_legs != fixed) throw std::invalid_argument("legs must be exactly the fixed points");
  for (int v = 0; v < V; ++v) {
    if (genus[v] < 0) throw std::invalid_argument("negative vertex genus");
    if (2 * genus[v] - 2 + valence(v) <= 0) throw std::invalid_argument("unstable vertex");
  }
  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges()) parent[find(vertex_of[a])] = find(vertex_of[b]);
  for (int v = 1; v < V; ++v) {
    if (find(v) != find(0)) throw std::invalid_argument("graph is disconnected");
  }
}

StableGraph StableGraph::trivial(int g, int n) {
  StableGraph G;
  G.genus = {g};
  G.vertex_of.assign(n, 0);
  G.involution.resize(n);
  std::iota(G.involution.begin(), G.involution.end(), 0);
  G.legs = G.involution;
  return G;
}

nlohmann::json StableGraph::to_json() const {
  nlohmann::json e = nlohmann::json::array();
  for (auto [a, b] : edges()) e.push_back({a, b});
  nlohmann::json legv = nlohmann::json::array();
  for (int i = 0; i < leg_count(); ++i) legv.push_back(leg_vertex(i));
  return {{"genus", genus}, {"halfEdgeVertex", vertex_of}, {"edges", e}, {"legVertex", legv}};
}

namespace {

// Vertex-level description: edges as vertex pairs, legs as vertices.
struct Skeleton {
  std::vector<int> genus;
  std::vector<int> leg_vertex;
  std::vector<std::pair<int, int>> vedges;  // (min, max) vertex pairs
};

Skeleton skeleton(const StableGraph& G) {
  Skeleton s;
  s.genus = G.genus;
  for (int i = 0; i < G.leg_count(); ++i) s.leg_vertex.push_back(G.leg_vertex(i));
  for (auto [a, b] : G.edges()) {
    int u = G.vertex_of[a], v = G.vertex_of[b];
    s.vedges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return s;
}

// Serialization of the skeleton after renaming vertex v to perm[v].
CanonicalKey serialize(const Skeleton& s, const std::vector<int>& perm) {
  const int V = static_cast<int>(s.genus.size());
  CanonicalKey key;
  key.reserve(1 + 2 * V + s.leg_vertex.size() + 2 * s.vedges.size());
  key.push_back(V);
  std::vector<int> g(V);
  for (int v = 0; v < V; ++v) g[perm[v]] = s.genus[v];
  key.insert(key.end(), g.begin(), g.end());
  for (int lv : s.leg_vertex) key.push_back(perm[lv]);
  std::vector<std::pair<int, int>> e;
  e.reserve(s.vedges.size());
  for (auto [a, b] : s.vedges) {
    int u = perm[a], v = perm[b];
    e.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(e.begin(), e.end());
  key.push_back(static_cast<int>(e.size()));
  for (auto [a, b] : e) {
    key.push_back(a);
    key.push_back(b);
  }
  return key;
}

// Invariant used to restrict candidate relabelings: vertices may only be
// exchanged with vertices of equal invariant.
std::vector<int> vertex_invariant(const Skeleton& s, int v) {
  int loops = 0, degree = 0;
  for (auto [a, b] : s.vedges) {
    if (a == v && b == v) ++loops;
    else if (a == v || b == v) ++degree;
  }
  std::vector<int> inv{s.genus[v], loops, degree};
  for (std::size_t i = 0; i < s.leg_vertex.size(); ++i) {
    if (s.leg_vertex[i] == v) inv.push_back(static_cast<int>(i));
  }
  inv.insert(inv.begin() + 3, static_cast<int>(inv.size()) - 3);
  return inv;
}

// Calls visit(perm) for every vertex permutation that maps each invariant
// class onto a fixed target set.  With `in_place`, a class maps onto its
// own members (candidate automorphisms); otherwise classes occupy
// consecutive slots in invariant order (so the minimum serialization over
// visited perms is canonical).
template <class Visit>
void for_each_class_permutation(const Skeleton& s, bool in_place, Visit&& visit) {
  const int V = static_cast<int>(s.genus.size());
  std::vector<std::pair<std::vector<int>, int>> inv(V);
  for (int v = 0; v < V; ++v) inv[v] = {vertex_invariant(s, v), v};
  std::sort(inv.begin(), inv.end());
  std::vector<std::vector<int>> classes;
  for (int k = 0; k < V; ++k) {
    if (k == 0 || inv[k].first != inv[k - 1].first) classes.emplace_back();
    classes.back().push_back(inv[k].second);
  }
  std::vector<std::vector<int>> targets(classes.size());
  int slot = 0;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    std::sort(classes[ci].begin(), classes[ci].end());
    for (std::size_t k = 0; k < classes[ci].size(); ++k) {
      targets[ci].push_back(in_place ? classes[ci][k] : slot++);
    }
  }
  std::vector<int> perm(V);
  std::function<void(std::size_t)> rec = [&](std::size_t ci) {
    if (ci == classes.size()) {
      visit(perm);
      return;
    }
    auto& c = classes[ci];
    do {
      for (std::size_t k = 0; k < c.size(); ++k) perm[c[k]] = targets[ci][k];
      rec(ci + 1);
    } while (std::next_permutation(c.begin(), c.end()));
  };
  rec(0);
}

}  // namespace

CanonicalKey canonical_form(const StableGraph& graph) {
  Skeleton s = skeleton(graph);
  CanonicalKey best;
  bool have = false;
  for_each_class_permutation(s, false, [&](const std::vector<int>& perm) {
    CanonicalKey k = serialize(s, perm);
    if (!have || k < best) {
      best = std::move(k);
      have = true;
    }
  });
  return best;
}

std::uint64_t automorphism_count(const StableGraph& graph) {
  Skeleton s = skeleton(graph);
  std::vector<int> identity(graph.vertex_count());
  std::iota(identity.begin(), identity.end(), 0);
  const CanonicalKey base = serialize(s, identity);
  std::uint64_t vertex_auts = 0;
  for_each_class_permutation(s, true, [&](const std::vector<int>& perm) {
    if (serialize(s, perm) == base) ++vertex_auts;
  });
  // Each vertex automorphism lifts to half-edges in prod k! (parallel
  // edges permuted) times 2^loops (loop ends swapped) ways.
  std::map<std::pair<int, int>, int> mult;
  for (auto e : s.vedges) ++mult[e];
  std::uint64_t lift = 1;
  for (auto [e, k] : mult) {
    for (int j = 2; j <= k; ++j) lift *= static_cast<std::uint64_t>(j);
    if (e.first == e.second) lift <<= k;
  }
  return vertex_auts * lift;
}

StableGraph relabel_legs(const StableGraph& graph, const std::vector<int>& perm) {
  StableGraph out = graph;
  for (std::size_t i = 0; i < perm.size(); ++i) out.legs[i] = graph.legs[perm[i]];
  return out;
}

namespace {

// Adds a self-loop at v, lowering its genus.
StableGraph add_loop(const StableGraph& G, int v) {
  StableGraph out = G;
  out.genus[v] -= 1;
  int h = out.half_edge_count();
  out.vertex_of.push_back(v);
  out.vertex_of.push_back(v);
  out.involution.push_back(h + 1);
  out.involution.push_back(h);
  return out;
}

// Splits v into (v, new vertex) joined by a new edge; half-edges of v in
// `moved` go to the new vertex, which receives genus g2.
StableGraph split_vertex(const StableGraph& G, int v, const std::vector<int>& moved, int g2) {
  StableGraph out = G;
  int w = out.vertex_count();
  out.genus[v] -= g2;
  out.genus.push_back(g2);
  for (int h : moved) out.vertex_of[h] = w;
  int h = out.half_edge_count();
  out.vertex_of.push_back(v);
  out.vertex_of.push_back(w);
  out.involution.push_back(h + 1);
  out.involution.push_back(h);
  return out;
}

std::vector<StableGraph> degenerations(const StableGraph& G) {
  std::vector<StableGraph> out;
  for (int v = 0; v < G.vertex_count(); ++v) {
    if (G.genus[v] >= 1) out.push_back(add_loop(G, v));
    std::vector<int> hs;
    for (int h = 0; h < G.half_edge_count(); ++h) {
      if (G.vertex_of[h] == v) hs.push_back(h);
    }
    const int m = static_cast<int>(hs.size());
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> moved;
      for (int k = 0; k < m; ++k) {
        if ((mask >> k) & 1u) moved.push_back(hs[k]);
      }
      int n2 = static_cast<int>(moved.size()) + 1;
      int n1 = m - static_cast<int>(moved.size()) + 1;
      for (int g2 = 0; g2 <= G.genus[v]; ++g2) {
        int g1 = G.genus[v] - g2;
        if (2 * g1 - 2 + n1 > 0 && 2 * g2 - 2 + n2 > 0) out.push_back(split_vertex(G, v, moved, g2));
      }
    }
  }
  return out;
}

struct EnumerationCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int>, std::vector<GraphRecord>> cells;
};

EnumerationCache& enumeration_cache() {
  static EnumerationCache cache;
  return cache;
}

}  // namespace

const std::vector<GraphRecord>& enumerate_stable_graphs(int g, int n, int max_edges) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw std::domain_error("enumerate_stable_graphs: unstable (g, n)");
  // Any stable graph has at most 3g-3+n edges.
  const int cap = 3 * g - 3 + n;
  if (max_edges < 0 || max_edges > cap) max_edges = cap;
  auto& cache = enumeration_cache();
  std::lock_guard lock(cache.mu);
  auto key = std::make_tuple(g, n, max_edges);
  if (auto it = cache.cells.find(key); it != cache.cells.end()) return it->second;

  std::vector<GraphRecord> result;
  std::map<CanonicalKey, StableGraph> level;
  StableGraph start = StableGraph::trivial(g, n);
  level.emplace(canonical_form(start), start);
  for (int e = 0; e <= max_edges && !level.empty(); ++e) {
    std::map<CanonicalKey, StableGraph> next;
    for (const auto& [k, G] : level) {
      result.push_back({G, automorphism_count(G), G.h1()});
      if (e == max_edges) continue;
      for (auto& D : degenerations(G)) {
        CanonicalKey dk = canonical_form(D);
        next.try_emplace(std::move(dk), std::move(D));
      }
    }
    level = std::move(next);
  }
  return cache.cells.emplace(key, std::move(result)).first->second;
}

}  // namespace ncdr
