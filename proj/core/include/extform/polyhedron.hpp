#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "extform/rational.hpp"

namespace extform {

/// One row `coeffs · x (<=|=) rhs`. The relation is implied by which list of
/// an HPoly the row lives in.
struct Constraint {
  RatVector coeffs;
  Rational rhs;
  std::string label;

  bool operator==(const Constraint&) const = default;
};

/// Polyhedron {x : A x <= b, C x = d}. size() counts inequalities only;
/// equations are free.
class HPoly {
 public:
  explicit HPoly(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ineqs_.size(); }

  const std::vector<Constraint>& inequalities() const { return ineqs_; }
  const std::vector<Constraint>& equations() const { return eqs_; }

  void add_inequality(RatVector coeffs, Rational rhs, std::string label = {});
  void add_equation(RatVector coeffs, Rational rhs, std::string label = {});
  void add_inequality(Constraint row);
  void add_equation(Constraint row);

  /// True iff `x` satisfies every row.
  bool contains(const RatVector& x) const;

  bool operator==(const HPoly&) const = default;

 private:
  void check_row(const RatVector& coeffs) const;

  std::size_t dim_;
  std::vector<Constraint> ineqs_;
  std::vector<Constraint> eqs_;
};

/// Finite point set standing for its convex hull. Duplicate points are rejected.
class VPoly {
 public:
  explicit VPoly(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t count() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const std::vector<RatVector>& points() const { return points_; }
  const std::vector<std::string>& labels() const { return labels_; }

  void add_point(RatVector point, std::string label = {});
  bool has_point(const RatVector& point) const;

  bool operator==(const VPoly&) const = default;

 private:
  std::size_t dim_;
  std::vector<RatVector> points_;
  std::vector<std::string> labels_;
};

/// x -> matrix · x + offset, from R^in_dim to R^out_dim.
class AffineMap {
 public:
  AffineMap(RatMatrix matrix, RatVector offset, std::size_t in_dim);

  static AffineMap identity(std::size_t n);
  /// Orthogonal projection onto the listed coordinates.
  static AffineMap coordinate_projection(std::size_t in_dim, const std::vector<std::size_t>& keep);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return offset_.size(); }
  const RatMatrix& matrix() const { return matrix_; }
  const RatVector& offset() const { return offset_; }

  RatVector apply(const RatVector& x) const;
  /// Pulls the linear functional `a` on the output back to the input:
  /// a · apply(x) = pullback(a) · x + a · offset.
  RatVector pullback(const RatVector& a) const;

  bool operator==(const AffineMap&) const = default;

 private:
  RatMatrix matrix_;
  RatVector offset_;
  std::size_t in_dim_;
};

/// outer(inner(x)).
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

/// An extension (Q, p) with p(Q) meant to equal a target polytope.
struct Extension {
  HPoly q;
  AffineMap proj;
  std::string name;

  std::size_t size() const { return q.size(); }
  std::size_t target_dim() const { return proj.out_dim(); }

  bool operator==(const Extension&) const = default;
};

/// Throws InputError unless ext.proj reads q.dim() coordinates.
void check_extension(const Extension& ext);

}  // namespace extform
