#include "extform/polyhedron.hpp"

#include <algorithm>
#include <utility>

#include "extform/errors.hpp"

namespace extform {

HPoly::HPoly(std::size_t dim) : dim_(dim) {}

void HPoly::check_row(const RatVector& coeffs) const {
  if (coeffs.size() != dim_) {
    throw InputError("row of length " + std::to_string(coeffs.size()) + " in HPoly of dim " + std::to_string(dim_));
  }
}

void HPoly::add_inequality(RatVector coeffs, Rational rhs, std::string label) {
  check_row(coeffs);
  ineqs_.push_back({std::move(coeffs), std::move(rhs), std::move(label)});
}

void HPoly::add_equation(RatVector coeffs, Rational rhs, std::string label) {
  check_row(coeffs);
  eqs_.push_back({std::move(coeffs), std::move(rhs), std::move(label)});
}

void HPoly::add_inequality(Constraint row) {
  check_row(row.coeffs);
  ineqs_.push_back(std::move(row));
}

void HPoly::add_equation(Constraint row) {
  check_row(row.coeffs);
  eqs_.push_back(std::move(row));
}

bool HPoly::contains(const RatVector& x) const {
  if (x.size() != dim_) throw InputError("HPoly::contains: dimension mismatch");
  for (const auto& r : ineqs_) {
    if (dot(r.coeffs, x) > r.rhs) return false;
  }
  for (const auto& r : eqs_) {
    if (dot(r.coeffs, x) != r.rhs) return false;
  }
  return true;
}

VPoly::VPoly(std::size_t dim) : dim_(dim) {}

void VPoly::add_point(RatVector point, std::string label) {
  if (point.size() != dim_) {
    throw InputError("point of length " + std::to_string(point.size()) + " in VPoly of dim " + std::to_string(dim_));
  }
  if (has_point(point)) throw InputError("duplicate point " + to_string(point));
  points_.push_back(std::move(point));
  labels_.push_back(std::move(label));
}

bool VPoly::has_point(const RatVector& point) const {
  return std::find(points_.begin(), points_.end(), point) != points_.end();
}

AffineMap::AffineMap(RatMatrix matrix, RatVector offset, std::size_t in_dim)
    : matrix_(std::move(matrix)), offset_(std::move(offset)), in_dim_(in_dim) {
  if (matrix_.size() != offset_.size()) throw InputError("AffineMap: matrix rows != offset length");
  for (const auto& row : matrix_) {
    if (row.size() != in_dim_) throw InputError("AffineMap: matrix row length != input dimension");
  }
}

AffineMap AffineMap::identity(std::size_t n) { return AffineMap(identity_matrix(n), zero_vector(n), n); }

AffineMap AffineMap::coordinate_projection(std::size_t in_dim, const std::vector<std::size_t>& keep) {
  RatMatrix m;
  for (auto k : keep) {
    if (k >= in_dim) throw InputError("coordinate_projection: index out of range");
    m.push_back(unit_vector(in_dim, k));
  }
  return AffineMap(std::move(m), zero_vector(keep.size()), in_dim);
}

RatVector AffineMap::apply(const RatVector& x) const {
  if (x.size() != in_dim_) throw InputError("AffineMap::apply: dimension mismatch");
  return add(mat_vec(matrix_, x), offset_);
}

RatVector AffineMap::pullback(const RatVector& a) const {
  if (a.size() != out_dim()) throw InputError("AffineMap::pullback: dimension mismatch");
  RatVector r = zero_vector(in_dim_);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < in_dim_; ++j) {
      if (sgn(matrix_[i][j]) != 0) r[j] += a[i] * matrix_[i][j];
    }
  }
  return r;
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  if (outer.in_dim() != inner.out_dim()) throw InputError("compose: dimension mismatch");
  RatMatrix m = outer.out_dim() == 0 ? RatMatrix{} : mat_mul(outer.matrix(), inner.matrix());
  if (inner.out_dim() == 0) m = zero_matrix(outer.out_dim(), inner.in_dim());
  return AffineMap(std::move(m), outer.apply(inner.offset()), inner.in_dim());
}

void check_extension(const Extension& ext) {
  if (ext.proj.in_dim() != ext.q.dim()) {
    throw InputError("extension '" + ext.name + "': projection reads " + std::to_string(ext.proj.in_dim()) +
                     " coordinates but Q has dim " + std::to_string(ext.q.dim()));
  }
}

}  // namespace extform
