#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extform/polyhedron.hpp"

namespace extform {

/// Comparator sequence on `wires` wires (0-based). Comparator (i, j), i < j,
/// leaves the smaller value on wire i.
struct SortingNetwork {
  std::size_t wires = 0;
  std::vector<std::pair<std::size_t, std::size_t>> comparators;

  /// 0-1 principle: the network sorts everything iff it sorts all 2^wires
  /// binary inputs. Refuses more than 24 wires.
  bool sorts_all_binary_inputs() const;
};

SortingNetwork bubble_network(std::size_t n);
/// Batcher's odd-even mergesort, O(n log^2 n) comparators, any n >= 1.
SortingNetwork batcher_network(std::size_t n);

/// Acyclic knapsack DP network restricted to nodes reachable from s.
struct DPNetwork {
  struct Node {
    std::size_t item;  // 0 for s, 1..n for (i, omega)
    long weight;
    bool is_sink;
  };
  struct Arc {
    std::size_t tail;
    std::size_t head;
  };

  std::vector<long> weights;
  long capacity = 0;
  std::vector<Node> nodes;  // s first, (i, omega) sorted, t last
  std::vector<Arc> arcs;    // item arcs by (tail, head), then arcs into t

  std::size_t source() const { return 0; }
  std::size_t sink() const { return nodes.size() - 1; }
  std::string node_label(std::size_t v) const;
  std::string arc_label(std::size_t a) const;
};

DPNetwork knapsack_network(const std::vector<long>& weights, long capacity);

/// Assignment of the n nodes of K_n to colors 1..2k.
struct Coloring {
  std::size_t k = 0;
  std::vector<std::size_t> color;

  bool rainbow(const std::vector<std::size_t>& nodes) const;
};

/// A family of 2k-colorings such that every 2k-subset of nodes is rainbow in
/// at least one member; `witness[s]` names that member for the s-th subset in
/// zoo::subsets_by_size order.
struct ColoringFamily {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Coloring> colorings;
  std::vector<std::size_t> witness;
  std::uint32_t seed = 0;
};

/// Exhaustive check of the covering property over all C(n, 2k) subsets.
bool certify_coloring_family(const ColoringFamily& family);

/// The trivial extension of conv(X): the standard simplex in R^|X| mapped by
/// lambda -> sum lambda_x x. Its size is |X|.
Extension simplex_extension(const VPoly& points);
Extension birkhoff_extension(std::size_t n);
Extension martin_spanning_tree_extension(std::size_t n);
/// Disjunctive programming for conv(P_1 ∪ ... ∪ P_q) of bounded nonempty parts.
Extension balas_union(const std::vector<HPoly>& parts);
Extension knapsack_flow_extension(const std::vector<long>& weights, long capacity);
Extension sorting_network_extension(std::size_t n, const SortingNetwork& net);

/// Characteristic vectors of the k-matchings of K_n touching every color
/// class exactly once. The coloring must use exactly 2k colors.
VPoly colorful_matchings(std::size_t n, std::size_t k, const Coloring& coloring);
ColoringFamily covering_coloring_family(std::size_t n, std::size_t k);
Extension colorful_matching_extension(std::size_t n, std::size_t k);

/// Exact check of P = p(Q): every vertex of P has a preimage in Q, and every
/// row of P's description holds on p(Q).
struct VerifyReport {
  bool passed = false;
  bool target_in_image = false;
  bool image_in_target = false;
  std::size_t vertices_checked = 0;
  std::size_t rows_checked = 0;
  std::optional<RatVector> missing_vertex;
  std::optional<std::size_t> violated_row;  // index into inequalities, then equations
  std::optional<RatVector> escape_point;    // a point of p(Q) outside P
  std::optional<RatVector> ray;             // direction of Q along which a row of P is unbounded
  std::string detail;
};

VerifyReport verify_extension(const HPoly& target, const VPoly& target_vertices, const Extension& ext);
VerifyReport verify_extension(const HPoly& target, const Extension& ext);
VerifyReport verify_extension(const VPoly& target, const Extension& ext);

}  // namespace extform
