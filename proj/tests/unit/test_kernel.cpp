#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "extform/constructions.hpp"
#include "extform/errors.hpp"
#include "extform/kernel.hpp"
#include "extform/zoo.hpp"
#include "support/oracles.hpp"

using namespace extform;

namespace {

std::set<RatVector> point_set(const VPoly& v) { return {v.points().begin(), v.points().end()}; }

VPoly vpoly_of(std::size_t dim, const std::vector<RatVector>& pts) {
  VPoly v(dim);
  for (const auto& p : pts) v.add_point(p);
  return v;
}

HPoly box(std::size_t n, long lo, long hi) {
  HPoly p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_inequality(scaled(unit_vector(n, i), -1), -lo);
    p.add_inequality(unit_vector(n, i), hi);
  }
  return p;
}

// Affine dimension of a point list.
std::size_t affine_dim(const std::vector<RatVector>& pts) {
  if (pts.empty()) return 0;
  RatMatrix diffs;
  for (const auto& p : pts) diffs.push_back(sub(p, pts.front()));
  return rank(diffs);
}

// Every row is valid on all points and its tight points span a facet.
void expect_facet_description(const HPoly& h, const VPoly& v) {
  const std::size_t d = affine_dim(v.points());
  for (const auto& r : h.inequalities()) {
    std::vector<RatVector> tight;
    for (const auto& x : v.points()) {
      ASSERT_LE(dot(r.coeffs, x), r.rhs);
      if (dot(r.coeffs, x) == r.rhs) tight.push_back(x);
    }
    ASSERT_FALSE(tight.empty());
    EXPECT_EQ(affine_dim(tight) + 1, d) << to_string(r.coeffs);
  }
  for (const auto& e : h.equations()) {
    for (const auto& x : v.points()) EXPECT_EQ(dot(e.coeffs, x), e.rhs);
  }
}

}  // namespace

TEST(AffineHull, Permutahedron) {
  const auto eqs = affine_hull(zoo::permutahedron_hrep(3));
  ASSERT_EQ(eqs.size(), 1U);
  EXPECT_EQ(eqs[0].coeffs, (RatVector{1, 1, 1}));
  EXPECT_EQ(eqs[0].rhs, 6);
}

TEST(AffineHull, CubeIsFullDimensional) { EXPECT_TRUE(affine_hull(zoo::cube_hrep(3)).empty()); }

TEST(AffineHull, Birkhoff) {
  const auto eqs = affine_hull(zoo::birkhoff_hrep(3));
  EXPECT_EQ(eqs.size(), 5U);
  RatMatrix rows;
  for (const auto& e : eqs) rows.push_back(e.coeffs);
  EXPECT_EQ(rank(rows), 5U);
}

TEST(AffineHull, ImplicitEqualityFromInequalities) {
  HPoly p(2);
  p.add_inequality({1, 1}, 1);
  p.add_inequality({-1, -1}, -1);
  p.add_inequality({-1, 0}, 0);
  p.add_inequality({0, -1}, 0);
  const auto eqs = affine_hull(p);
  ASSERT_EQ(eqs.size(), 1U);
  EXPECT_EQ(eqs[0].coeffs, (RatVector{1, 1}));
  EXPECT_EQ(eqs[0].rhs, 1);
  EXPECT_EQ(implicit_equalities(p), (std::vector<std::size_t>{0, 1}));
}

TEST(AffineHull, EmptyThrows) {
  HPoly p(1);
  p.add_inequality({1}, 0);
  p.add_inequality({-1}, -1);
  EXPECT_THROW(affine_hull(p), InfeasibleError);
}

TEST(AffineChart, LiftAndChartInvert) {
  const auto eqs = affine_hull(zoo::birkhoff_hrep(3));
  const AffineChart chart = affine_chart(eqs, 9);
  EXPECT_EQ(chart.dim(), 4U);
  const VPoly perms = zoo::birkhoff_vrep(3);
  for (const auto& x : perms.points()) {
    EXPECT_EQ(chart.lift(chart.chart(x)), x);
    for (const auto& e : eqs) EXPECT_EQ(dot(e.coeffs, chart.lift({1, 2, 3, 4})), e.rhs);
  }
}

TEST(FmProject, IdentityCoupling) {
  HPoly p(2);
  p.add_inequality({0, -1}, 0);
  p.add_inequality({0, 1}, 1);
  p.add_equation({1, -1}, 0);
  const HPoly x = fm_project(p, {0});
  EXPECT_EQ(x.dim(), 1U);
  EXPECT_TRUE(poly_equal(x, box(1, 0, 1)));
  EXPECT_EQ(remove_redundancy(x).size(), 2U);
}

TEST(FmProject, BirkhoffTwoToSegment) {
  // Coordinates y11 y12 y21 y22 x1 x2 with x_i = sum_j j y_ij.
  HPoly p(6);
  const HPoly b = zoo::birkhoff_hrep(2);
  for (const auto& r : b.inequalities()) {
    RatVector a = r.coeffs;
    a.resize(6);
    p.add_inequality(a, r.rhs);
  }
  for (const auto& r : b.equations()) {
    RatVector a = r.coeffs;
    a.resize(6);
    p.add_equation(a, r.rhs);
  }
  p.add_equation({1, 2, 0, 0, -1, 0}, 0);
  p.add_equation({0, 0, 1, 2, 0, -1}, 0);
  const HPoly x = fm_project(p, {4, 5});
  HPoly expected(2);
  expected.add_equation({1, 1}, 3);
  expected.add_inequality({-1, 0}, -1);
  expected.add_inequality({1, 0}, 2);
  EXPECT_TRUE(poly_equal(x, expected));
  EXPECT_TRUE(poly_equal(x, vpoly_of(2, {{1, 2}, {2, 1}})));
}

TEST(FmProject, KnapsackFlow) {
  const std::vector<long> w = {2, 3, 4};
  const Extension ext = knapsack_flow_extension(w, 6);
  const HPoly x = image(ext.q, ext.proj);
  const auto pts = oracle::knapsack_points(w, 6);
  ASSERT_EQ(pts.size(), 6U);
  EXPECT_TRUE(poly_equal(x, vpoly_of(3, pts)));
}

TEST(FmProject, RejectsBadIndices) {
  EXPECT_THROW(fm_project(box(2, 0, 1), {2}), InputError);
  EXPECT_THROW(fm_project(box(2, 0, 1), {0, 0}), InputError);
}

TEST(Vertices, Square) {
  const VPoly v = vertices(box(2, 0, 1));
  EXPECT_EQ(point_set(v), (std::set<RatVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(Vertices, MatchingThree) {
  const VPoly v = vertices(zoo::matching_hrep(3));
  EXPECT_EQ(point_set(v), (std::set<RatVector>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(Vertices, SpanningTreeThree) {
  const VPoly v = vertices(zoo::spanning_tree_hrep(3));
  EXPECT_EQ(point_set(v), (std::set<RatVector>{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
}

TEST(Vertices, SinglePointAndErrors) {
  HPoly pt(2);
  pt.add_equation({1, 0}, 3);
  pt.add_equation({0, 1}, Rational(1, 2));
  EXPECT_EQ(point_set(vertices(pt)), (std::set<RatVector>{{3, Rational(1, 2)}}));

  HPoly ray(1);
  ray.add_inequality({-1}, 0);
  EXPECT_THROW(vertices(ray), UnboundedError);

  HPoly empty(1);
  empty.add_inequality({1}, -1);
  empty.add_inequality({-1}, 0);
  EXPECT_THROW(vertices(empty), InfeasibleError);
}

TEST(Vertices, BirkhoffThreeArePermutationMatrices) {
  EXPECT_EQ(point_set(vertices(zoo::birkhoff_hrep(3))), point_set(zoo::birkhoff_vrep(3)));
}

TEST(Hull, Segment) {
  const HPoly h = hull(vpoly_of(1, {{0}, {1}}));
  EXPECT_EQ(h.size(), 2U);
  EXPECT_TRUE(h.equations().empty());
  EXPECT_TRUE(poly_equal(h, box(1, 0, 1)));
}

TEST(Hull, PermutationsGiveRado) {
  const VPoly v = zoo::permutahedron_vrep(3);
  const HPoly h = hull(v);
  EXPECT_EQ(h.equations().size(), 1U);
  EXPECT_EQ(h.size(), 6U);
  expect_facet_description(h, v);
  EXPECT_TRUE(poly_equal(h, zoo::permutahedron_hrep(3)));
}

TEST(Hull, MatchingsOfK4GiveEdmonds) {
  const VPoly v = zoo::matching_vrep(4);
  const HPoly h = hull(v);
  const HPoly edmonds = remove_redundancy(zoo::matching_hrep(4));
  EXPECT_EQ(h.size(), edmonds.size());
  EXPECT_EQ(h.size(), 14U);
  expect_facet_description(h, v);
  EXPECT_TRUE(poly_equal(h, edmonds));
}

TEST(Hull, CrossPolytopeFacets) {
  const VPoly v = zoo::cross_polytope_vrep(4);
  const HPoly h = hull(v);
  EXPECT_EQ(h.size(), 16U);
  expect_facet_description(h, v);
  for (const auto& r : h.inequalities()) {
    EXPECT_EQ(r.rhs, 1);
    for (const auto& a : r.coeffs) EXPECT_EQ(abs(a), 1);
  }
}

TEST(Hull, RejectsEmpty) { EXPECT_THROW(hull(VPoly(2)), InputError); }

TEST(RemoveRedundancy, DropsLooserBound) {
  HPoly p(1);
  p.add_inequality({1}, 1);
  p.add_inequality({1}, 2);
  const HPoly r = remove_redundancy(p);
  ASSERT_EQ(r.size(), 1U);
  EXPECT_EQ(r.inequalities()[0].rhs, 1);
}

TEST(RemoveRedundancy, RadoIsIrredundant) {
  const HPoly p = zoo::permutahedron_hrep(3);
  EXPECT_EQ(remove_redundancy(p), p);
}

TEST(RemoveRedundancy, KeepsOneOfDuplicateRows) {
  HPoly p(1);
  p.add_inequality({1}, 1, "a");
  p.add_inequality({2}, 2, "b");
  p.add_inequality({-1}, 0, "c");
  const HPoly r = remove_redundancy(p);
  EXPECT_EQ(r.size(), 2U);
  EXPECT_TRUE(poly_equal(r, p));
}

TEST(RemoveRedundancy, MatchingThreeDegreeRowsAreImplied) {
  // x >= 0 together with x(E) <= 1 already forces every degree row.
  const HPoly p = zoo::matching_hrep(3);
  const HPoly r = remove_redundancy(p);
  EXPECT_EQ(r.size(), 4U);
  EXPECT_TRUE(poly_equal(r, p));
  EXPECT_FALSE(p.contains({Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
}

TEST(PolyEqual, RadoAgainstPermutations) {
  EXPECT_TRUE(poly_equal(zoo::permutahedron_hrep(3), zoo::permutahedron_vrep(3)));
}

TEST(PolyEqual, CubeVersusCross) {
  const HPoly cube = box(2, -1, 1);
  const VPoly cross = zoo::cross_polytope_vrep(2);
  const EqualityCheck c = poly_equal(cube, cross);
  EXPECT_FALSE(c);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_TRUE(cube.contains(*c.witness));
  EXPECT_FALSE(hull(cross).contains(*c.witness));
  EXPECT_EQ(abs((*c.witness)[0]) + abs((*c.witness)[1]), 2);
}

TEST(PolyEqual, MatchingFour) {
  EXPECT_TRUE(poly_equal(zoo::matching_hrep(4), zoo::matching_vrep(4)));
  EXPECT_EQ(zoo::matching_vrep(4).count(), oracle::matching_count(4));
}

TEST(PolyEqual, AllOverloads) {
  const VPoly v = vpoly_of(2, {{0, 0}, {1, 0}, {0, 1}});
  const HPoly h = hull(v);
  EXPECT_TRUE(poly_equal(h, h));
  EXPECT_TRUE(poly_equal(v, h));
  EXPECT_TRUE(poly_equal(v, vpoly_of(2, {{0, 1}, {0, 0}, {1, 0}, {Rational(1, 3), Rational(1, 3)}})));
  EXPECT_FALSE(poly_equal(v, vpoly_of(2, {{0, 0}, {1, 0}})));
  EXPECT_THROW(poly_equal(h, box(3, 0, 1)), InputError);
}

TEST(FindEscape, ReportsPointOutside) {
  const auto x = find_escape(box(2, 0, 2), box(2, 0, 1));
  ASSERT_TRUE(x.has_value());
  EXPECT_TRUE(box(2, 0, 2).contains(*x));
  EXPECT_FALSE(box(2, 0, 1).contains(*x));
  EXPECT_FALSE(find_escape(box(2, 0, 1), box(2, 0, 2)).has_value());
}

TEST(IsVertex, DetectsInteriorPoint) {
  const VPoly v = vpoly_of(2, {{0, 0}, {2, 0}, {0, 2}, {1, 0}, {Rational(1, 2), Rational(1, 2)}});
  EXPECT_TRUE(is_vertex(v, 0));
  EXPECT_TRUE(is_vertex(v, 1));
  EXPECT_TRUE(is_vertex(v, 2));
  EXPECT_FALSE(is_vertex(v, 3));
  EXPECT_FALSE(is_vertex(v, 4));
  EXPECT_THROW(is_vertex(v, 5), InputError);
}

TEST(Image, AffineMapOfSquare) {
  // (x, y) -> (x + y, x - y + 1) maps the unit square to a diamond.
  const AffineMap f({{1, 1}, {1, -1}}, {0, 1}, 2);
  const HPoly img = image(box(2, 0, 1), f);
  EXPECT_TRUE(poly_equal(img, vpoly_of(2, {{0, 1}, {1, 2}, {1, 0}, {2, 1}})));
}

TEST(Image, ProjectionCollapsesDimension) {
  const AffineMap f({{1, 1, 1}}, {0}, 3);
  const HPoly img = image(box(3, 0, 1), f);
  EXPECT_TRUE(poly_equal(img, box(1, 0, 3)));
}
