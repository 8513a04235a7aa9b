#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extform/polyhedron.hpp"

namespace extform::zoo {

/// Coordinates of R^{E_n}: the unordered pairs {v, w}, v < w, of K_n in
/// lexicographic order. Nodes are 0-based here and 1-based in labels.
class GraphEdgeIndex {
 public:
  explicit GraphEdgeIndex(std::size_t n);

  std::size_t nodes() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  std::pair<std::size_t, std::size_t> edge(std::size_t index) const { return edges_.at(index); }
  std::size_t index(std::size_t v, std::size_t w) const;

  std::string edge_label(std::size_t index) const;
  /// Characteristic vector of an edge set.
  RatVector indicator(const std::vector<std::size_t>& edge_indices) const;

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// Subsets of {0..n-1}, by size and lexicographically within a size.
std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t n, std::size_t min_size, std::size_t max_size);

std::string set_label(const std::vector<std::size_t>& nodes);

/// Characteristic vectors of all matchings of K_n, or only those of
/// cardinality `ell` when given.
VPoly matching_vrep(std::size_t n, std::optional<std::size_t> ell = std::nullopt);
/// Edmonds: x >= 0, x(delta(v)) <= 1, x(E(S)) <= floor(|S|/2) for odd |S| >= 3.
HPoly matching_hrep(std::size_t n);

/// Permutations of (1..n) in lexicographic order; refuses n > 8.
VPoly permutahedron_vrep(std::size_t n);
/// Rado: x([n]) = n(n+1)/2 and x(S) >= |S|(|S|+1)/2 for proper nonempty S.
HPoly permutahedron_hrep(std::size_t n);

/// Doubly stochastic matrices over R^{n x n}, coordinate i*n + j.
HPoly birkhoff_hrep(std::size_t n);
/// The n! permutation matrices (y_ij = 1 iff sigma(i) = j); refuses n > 8.
VPoly birkhoff_vrep(std::size_t n);

/// Characteristic vectors of the n^(n-2) spanning trees; refuses n > 7.
VPoly spanning_tree_vrep(std::size_t n);
/// Edmonds: x >= 0, x(E) = n - 1, x(E(S)) <= |S| - 1 for 2 <= |S| < n.
HPoly spanning_tree_hrep(std::size_t n);

/// F(w, W) = {x in {0,1}^n : w·x <= W}; refuses n > 20.
VPoly knapsack_vrep(const std::vector<long>& weights, long capacity);

HPoly cube_hrep(std::size_t n);
/// {e_1, -e_1, e_2, -e_2, ...}.
VPoly cross_polytope_vrep(std::size_t n);
/// Standard simplex {y >= 0, sum y = 1} in R^n.
HPoly simplex_hrep(std::size_t n);

}  // namespace extform::zoo
