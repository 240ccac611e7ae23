#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ncdr {

// Dual graph of a boundary stratum of M_{g,n}-bar.  Half-edges are indexed
// 0..H-1; legs[i] is the half-edge carrying marking i+1 (a fixed point of
// the involution).
struct StableGraph {
  std::vector<int> genus;       // per vertex
  std::vector<int> vertex_of;   // per half-edge
  std::vector<int> involution;  // per half-edge
  std::vector<int> legs;        // marking -> half-edge

  int vertex_count() const { return static_cast<int>(genus.size()); }
  int half_edge_count() const { return static_cast<int>(vertex_of.size()); }
  int leg_count() const { return static_cast<int>(legs.size()); }

  // Edges as (h, involution[h]) with h < involution[h].
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;
  int h1() const { return edge_count() - vertex_count() + 1; }
  int total_genus() const;
  int valence(int v) const;  // n(v): number of half-edges at v
  int leg_vertex(int marking) const { return vertex_of[legs[marking]]; }

  // Checks the defining conditions (involution, legs, connectivity,
  // stability); throws std::invalid_argument describing the first failure.
  void validate() const;

  // Trivial graph: one vertex of genus g carrying legs 1..n.
  static StableGraph trivial(int g, int n);

  nlohmann::json to_json() const;
};

using CanonicalKey = std::vector<int>;

// Equal keys iff the graphs are isomorphic fixing every leg.
CanonicalKey canonical_form(const StableGraph& graph);

// Number of half-edge relabelings preserving all structure and fixing legs.
std::uint64_t automorphism_count(const StableGraph& graph);

struct GraphRecord {
  StableGraph graph;
  std::uint64_t aut_count = 1;
  int h1 = 0;
};

// All isomorphism classes in G_{g,n}.  When max_edges >= 0, only graphs
// with at most that many edges are produced.  Throws std::domain_error for
// unstable (g, n).  Results are cached per (g, n, max_edges) and returned
// in deterministic order (by edge count, then canonical key).
const std::vector<GraphRecord>& enumerate_stable_graphs(int g, int n, int max_edges = -1);

// Graph with the markings relabeled: marking i of the result is marking
// perm[i] of the input.
StableGraph relabel_legs(const StableGraph& graph, const std::vector<int>& perm);

}  // namespace ncdr
