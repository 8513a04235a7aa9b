#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "extform/lp.hpp"
#include "extform/polyhedron.hpp"
#include "extform/rational.hpp"

namespace extform {

/// Irredundant equation system whose solution set is aff(poly), in reduced
/// row echelon form. dim aff(poly) = poly.dim() - result.size().
/// Throws InfeasibleError when poly is empty.
std::vector<Constraint> affine_hull(const HPoly& poly);

/// Affine parametrization x = origin + sum_k u_k basis[k] of the solution set
/// of an equation system in rref. The parameters u are the free coordinates
/// of x, so the parametrization is a coordinate projection in reverse.
struct AffineChart {
  RatVector origin;
  RatMatrix basis;
  std::vector<std::size_t> free_coords;

  std::size_t dim() const { return free_coords.size(); }
  RatVector lift(const RatVector& u) const;
  RatVector chart(const RatVector& x) const;
};
AffineChart affine_chart(const std::vector<Constraint>& rref_equations, std::size_t dim);

/// Indices of the inequalities that hold with equality on all of poly.
std::vector<std::size_t> implicit_equalities(const HPoly& poly);

/// Drops inequalities one at a time (lowest index first) whenever the rest
/// already imply them, each step certified by an LP. Equations are kept.
/// Throws InfeasibleError when poly is empty.
HPoly remove_redundancy(const HPoly& poly);

/// Coordinate projection onto `keep` by Fourier-Motzkin elimination, with
/// LP-based pruning after every eliminated variable.
HPoly fm_project(const HPoly& poly, const std::vector<std::size_t>& keep);

/// H-description of map(poly), by lifting the map into equations and
/// eliminating the source coordinates.
HPoly image(const HPoly& poly, const AffineMap& map);

/// Exact vertex list of a nonempty polytope by double description, sorted
/// lexicographically. Throws InfeasibleError or UnboundedError.
VPoly vertices(const HPoly& poly);

/// Irredundant H-description of conv(points): rref equations for the affine
/// hull plus one primitive integer inequality per facet, sorted.
HPoly hull(const VPoly& points);

/// Outcome of a point-set comparison. When the sets differ, `witness` lies in
/// exactly one of them.
struct EqualityCheck {
  bool equal = false;
  std::optional<RatVector> witness;
  explicit operator bool() const { return equal; }
};

EqualityCheck poly_equal(const HPoly& a, const HPoly& b);
EqualityCheck poly_equal(const HPoly& a, const VPoly& b);
EqualityCheck poly_equal(const VPoly& a, const HPoly& b);
EqualityCheck poly_equal(const VPoly& a, const VPoly& b);

/// Returns a point of `inner` outside `outer`, or nullopt when inner ⊆ outer.
std::optional<RatVector> find_escape(const HPoly& inner, const HPoly& outer);
std::optional<RatVector> find_escape(const VPoly& inner, const HPoly& outer);

/// True iff `point` is a vertex of conv(others ∪ {point}) i.e. not a convex
/// combination of the remaining points.
bool is_vertex(const VPoly& points, std::size_t index);

}  // namespace extform
