#include <gtest/gtest.h>

#include <set>

#include "extform/constructions.hpp"
#include "extform/errors.hpp"
#include "extform/kernel.hpp"
#include "extform/zoo.hpp"
#include "support/oracles.hpp"

using namespace extform;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

std::set<RatVector> point_set(const VPoly& v) { return {v.points().begin(), v.points().end()}; }

VPoly vpoly_of(std::size_t dim, const std::vector<RatVector>& pts) {
  VPoly v(dim);
  for (const auto& p : pts) v.add_point(p);
  return v;
}

HPoly interval(long lo, long hi) {
  HPoly p(1);
  p.add_inequality({-1}, -lo);
  p.add_inequality({1}, hi);
  return p;
}

// Runs the comparators on every permutation of 1..n.
bool sorts_all_permutations(const SortingNetwork& net) {
  for (auto p : oracle::permutations(net.wires)) {
    for (const auto& [i, j] : net.comparators) {
      if (p[i] > p[j]) std::swap(p[i], p[j]);
    }
    if (!std::is_sorted(p.begin(), p.end())) return false;
  }
  return true;
}

}  // namespace

TEST(SortingNetworks, Bubble) {
  const SortingNetwork b3 = bubble_network(3);
  EXPECT_EQ(b3.comparators, (Pairs{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_TRUE(b3.sorts_all_binary_inputs());
  EXPECT_TRUE(bubble_network(1).comparators.empty());
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_EQ(bubble_network(n).comparators.size(), n * (n - 1) / 2);
    EXPECT_TRUE(sorts_all_permutations(bubble_network(n)));
  }
}

TEST(SortingNetworks, Batcher) {
  EXPECT_EQ(batcher_network(4).comparators.size(), 5U);
  EXPECT_EQ(batcher_network(8).comparators.size(), 19U);
  EXPECT_TRUE(batcher_network(1).comparators.empty());
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_TRUE(sorts_all_permutations(batcher_network(n))) << n;
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_TRUE(batcher_network(n).sorts_all_binary_inputs()) << n;
}

TEST(SortingNetworks, BrokenNetworkDetected) {
  SortingNetwork net{3, {{0, 1}, {1, 2}}};
  EXPECT_FALSE(net.sorts_all_binary_inputs());
  EXPECT_FALSE(sorts_all_permutations(net));
  EXPECT_THROW(sorting_network_extension(3, net), InputError);
}

TEST(KnapsackNetwork, ArcStructure) {
  const DPNetwork net = knapsack_network({2, 3, 4}, 6);
  std::vector<std::string> item_arcs;
  std::size_t to_sink = 0;
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    if (net.arcs[a].head == net.sink()) {
      ++to_sink;
    } else {
      item_arcs.push_back(net.arc_label(a));
    }
  }
  EXPECT_EQ(item_arcs, (std::vector<std::string>{"s->(1,2)", "s->(2,3)", "s->(3,4)", "(1,2)->(2,5)", "(1,2)->(3,6)"}));
  EXPECT_EQ(to_sink, net.nodes.size() - 1);
  EXPECT_EQ(net.arcs.size(), 11U);
  for (const auto& arc : net.arcs) {
    if (arc.head == net.sink()) continue;
    const auto& a = net.nodes[arc.tail];
    const auto& b = net.nodes[arc.head];
    EXPECT_LT(a.item, b.item);
    EXPECT_EQ(b.weight, a.weight + net.weights[b.item - 1]);
    EXPECT_LE(b.weight, net.capacity);
  }
}

TEST(KnapsackNetwork, EmptyCapacity) {
  const DPNetwork net = knapsack_network({1}, 0);
  ASSERT_EQ(net.arcs.size(), 1U);
  EXPECT_EQ(net.arc_label(0), "s->t");
  const Extension ext = knapsack_flow_extension({1}, 0);
  EXPECT_TRUE(verify_extension(vpoly_of(1, {{0}}), ext).passed);
}

TEST(Birkhoff, ProjectsOntoPermutahedron) {
  const Extension ext = birkhoff_extension(3);
  EXPECT_EQ(ext.size(), 9U);
  const VerifyReport r = verify_extension(zoo::permutahedron_hrep(3), ext);
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_TRUE(r.target_in_image);
  EXPECT_TRUE(r.image_in_target);
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(birkhoff_extension(n).size(), n * n);
    EXPECT_TRUE(verify_extension(zoo::permutahedron_vrep(n), birkhoff_extension(n)).passed) << n;
  }
}

TEST(Martin, SpanningTrees) {
  EXPECT_TRUE(verify_extension(zoo::spanning_tree_hrep(3), martin_spanning_tree_extension(3)).passed);
  const Extension m4 = martin_spanning_tree_extension(4);
  EXPECT_EQ(m4.size(), 30U);
  EXPECT_TRUE(verify_extension(zoo::spanning_tree_hrep(4), m4).passed);
  for (std::size_t n = 3; n <= 5; ++n) {
    EXPECT_EQ(martin_spanning_tree_extension(n).size(), n * (n - 1) / 2 + n * (n - 1) * (n - 2));
  }
  EXPECT_THROW(martin_spanning_tree_extension(2), InputError);
}

TEST(Balas, TwoIntervals) {
  const Extension ext = balas_union({interval(0, 1), interval(2, 3)});
  EXPECT_EQ(ext.size(), 6U);
  EXPECT_TRUE(poly_equal(image(ext.q, ext.proj), interval(0, 3)));
  EXPECT_TRUE(verify_extension(interval(0, 3), ext).passed);
}

TEST(Balas, SinglePart) {
  const HPoly tri = hull(vpoly_of(2, {{0, 0}, {2, 0}, {0, 1}}));
  const Extension ext = balas_union({tri});
  EXPECT_EQ(ext.size(), tri.size() + 1);
  EXPECT_TRUE(poly_equal(image(ext.q, ext.proj), tri));
}

TEST(Balas, SegmentAndPoint) {
  HPoly seg(2);
  seg.add_inequality({-1, 0}, 0);
  seg.add_inequality({1, 0}, 1);
  seg.add_equation({0, 1}, 0);
  HPoly pt(2);
  pt.add_equation({1, 0}, 0);
  pt.add_equation({0, 1}, 1);
  const Extension ext = balas_union({seg, pt});
  EXPECT_EQ(ext.size(), 2U + 0U + 2U);
  EXPECT_TRUE(poly_equal(image(ext.q, ext.proj), vpoly_of(2, {{0, 0}, {1, 0}, {0, 1}})));
}

TEST(Balas, Errors) {
  EXPECT_THROW(balas_union({}), InputError);
  EXPECT_THROW(balas_union({interval(0, 1), zoo::cube_hrep(2)}), InputError);
  EXPECT_THROW(balas_union({interval(1, 0)}), InputError);
  HPoly ray(1);
  ray.add_inequality({-1}, 0);
  EXPECT_THROW(balas_union({ray}), InputError);
}

TEST(Knapsack, FlowExtension) {
  const Extension ext = knapsack_flow_extension({2, 3, 4}, 6);
  EXPECT_EQ(ext.size(), 11U);
  const auto pts = oracle::knapsack_points({2, 3, 4}, 6);
  const VerifyReport r = verify_extension(vpoly_of(3, pts), ext);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(SortingNetworkExtension, TwoWires) {
  const Extension ext = sorting_network_extension(2, bubble_network(2));
  EXPECT_EQ(ext.size(), 2U);
  HPoly seg(2);
  seg.add_equation({1, 1}, 3);
  seg.add_inequality({-1, 0}, -1);
  seg.add_inequality({0, -1}, -1);
  EXPECT_TRUE(poly_equal(image(ext.q, ext.proj), seg));
  EXPECT_TRUE(poly_equal(image(ext.q, ext.proj), vpoly_of(2, {{1, 2}, {2, 1}})));
}

TEST(SortingNetworkExtension, Bubble3AndBatcher) {
  const Extension b3 = sorting_network_extension(3, bubble_network(3));
  EXPECT_EQ(b3.size(), 6U);
  EXPECT_TRUE(verify_extension(zoo::permutahedron_hrep(3), b3).passed);
  const Extension bat4 = sorting_network_extension(4, batcher_network(4));
  EXPECT_EQ(bat4.size(), 10U);
  EXPECT_TRUE(verify_extension(zoo::permutahedron_hrep(4), bat4).passed);
}

TEST(SortingNetworkExtension, OneWire) {
  const Extension ext = sorting_network_extension(1, bubble_network(1));
  EXPECT_EQ(ext.size(), 0U);
  EXPECT_EQ(ext.q.dim(), 1U);
  ASSERT_EQ(ext.q.equations().size(), 1U);
  EXPECT_EQ(ext.q.equations()[0].rhs, 1);
  EXPECT_TRUE(verify_extension(zoo::permutahedron_vrep(1), ext).passed);
  EXPECT_THROW(sorting_network_extension(2, bubble_network(3)), InputError);
}

TEST(Colorful, DistinctColors) {
  const Coloring c{2, {1, 2, 3, 4}};
  EXPECT_EQ(point_set(colorful_matchings(4, 2, c)), point_set(zoo::matching_vrep(4, 2)));
}

TEST(Colorful, TooFewColorsRejected) {
  EXPECT_THROW(colorful_matchings(4, 2, Coloring{2, {1, 1, 2, 2}}), InputError);
  EXPECT_THROW(colorful_matchings(4, 2, Coloring{2, {1, 2, 3, 5}}), InputError);
  EXPECT_THROW(colorful_matchings(4, 2, Coloring{2, {1, 2, 3}}), InputError);
}

TEST(Colorful, FiveNodesFilter) {
  const Coloring c{2, {1, 2, 3, 4, 4}};
  const zoo::GraphEdgeIndex g(5);
  std::set<RatVector> expected;
  for (std::size_t e = 0; e < g.size(); ++e) {
    for (std::size_t f = e + 1; f < g.size(); ++f) {
      const auto [a, b] = g.edge(e);
      const auto [x, y] = g.edge(f);
      std::set<std::size_t> nodes = {a, b, x, y};
      if (nodes.size() != 4) continue;
      std::set<std::size_t> colors;
      for (auto v : nodes) colors.insert(c.color[v]);
      if (colors.size() == 4) expected.insert(g.indicator({e, f}));
    }
  }
  EXPECT_EQ(point_set(colorful_matchings(5, 2, c)), expected);
  EXPECT_EQ(expected.size(), 6U);
}

TEST(ColoringFamily, Identity) {
  const ColoringFamily f = covering_coloring_family(4, 2);
  ASSERT_EQ(f.colorings.size(), 1U);
  EXPECT_EQ(f.colorings[0].color, (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_TRUE(certify_coloring_family(f));
}

TEST(ColoringFamily, Certified) {
  for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{5, 2}, {6, 2}, {7, 2}, {8, 3}, {6, 1}}) {
    const ColoringFamily f = covering_coloring_family(n, k);
    EXPECT_TRUE(certify_coloring_family(f)) << n << "," << k;
    std::size_t subsets = 0;
    for (const auto& s : zoo::subsets_by_size(n, 2 * k, 2 * k)) {
      ++subsets;
      bool hit = false;
      for (const auto& c : f.colorings) hit = hit || c.rainbow(s);
      EXPECT_TRUE(hit);
    }
    EXPECT_EQ(f.witness.size(), subsets);
  }
}

TEST(ColoringFamily, CertificateCatchesGap) {
  ColoringFamily f = covering_coloring_family(5, 2);
  f.colorings.resize(1);
  EXPECT_FALSE(certify_coloring_family(f));
}

TEST(ColoringFamily, Deterministic) {
  const ColoringFamily a = covering_coloring_family(7, 2);
  const ColoringFamily b = covering_coloring_family(7, 2);
  ASSERT_EQ(a.colorings.size(), b.colorings.size());
  for (std::size_t i = 0; i < a.colorings.size(); ++i) EXPECT_EQ(a.colorings[i].color, b.colorings[i].color);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(ColoringFamily, Errors) {
  EXPECT_THROW(covering_coloring_family(3, 2), InputError);
  EXPECT_THROW(covering_coloring_family(13, 2), SizeError);
  EXPECT_THROW(covering_coloring_family(10, 4), SizeError);
}

TEST(ColorfulExtension, FourNodes) {
  const Extension ext = colorful_matching_extension(4, 2);
  EXPECT_TRUE(poly_equal(image(ext.q, ext.proj), zoo::matching_vrep(4, 2)));
  // One coloring means one part.
  EXPECT_EQ(ext.q.dim(), ext.target_dim() + 1);
}

TEST(ColorfulExtension, FiveNodes) {
  const Extension ext = colorful_matching_extension(5, 2);
  const VerifyReport r = verify_extension(hull(zoo::matching_vrep(5, 2)), ext);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Verify, PointAgainstSegment) {
  Extension ext{HPoly(1), AffineMap::identity(1), "point"};
  ext.q.add_equation({1}, 0);
  const VerifyReport r = verify_extension(interval(0, 1), ext);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.target_in_image);
  ASSERT_TRUE(r.missing_vertex.has_value());
  EXPECT_EQ(*r.missing_vertex, (RatVector{1}));
}

TEST(Verify, ImageTooLarge) {
  const Extension ext{interval(0, 2), AffineMap::identity(1), "wide"};
  const VerifyReport r = verify_extension(interval(0, 1), ext);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.target_in_image);
  EXPECT_FALSE(r.image_in_target);
  ASSERT_TRUE(r.violated_row.has_value());
  EXPECT_EQ(*r.violated_row, 1U);
  ASSERT_TRUE(r.escape_point.has_value());
  EXPECT_FALSE(interval(0, 1).contains(*r.escape_point));
}

TEST(Verify, UnboundedImageGivesRay) {
  HPoly half(1);
  half.add_inequality({-1}, 0);
  const Extension ext{half, AffineMap::identity(1), "ray"};
  const VerifyReport r = verify_extension(interval(0, 1), ext);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.ray.has_value());
  EXPECT_GT((*r.ray)[0], 0);
}

TEST(Verify, DroppedRowFails) {
  Extension ext = birkhoff_extension(3);
  HPoly cut(ext.q.dim());
  for (std::size_t i = 1; i < ext.q.size(); ++i) cut.add_inequality(ext.q.inequalities()[i]);
  for (const auto& e : ext.q.equations()) cut.add_equation(e);
  ext.q = cut;
  const VerifyReport r = verify_extension(zoo::permutahedron_hrep(3), ext);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.violated_row.has_value());
  EXPECT_TRUE(r.escape_point.has_value() || r.ray.has_value());
}

TEST(Verify, MartinFour) {
  EXPECT_TRUE(verify_extension(zoo::spanning_tree_vrep(4), martin_spanning_tree_extension(4)).passed);
}

TEST(Verify, DimensionMismatch) {
  EXPECT_THROW(verify_extension(zoo::permutahedron_hrep(4), birkhoff_extension(3)), InputError);
}

TEST(SimplexExtension, CrossPolytope) {
  const VPoly cross = zoo::cross_polytope_vrep(3);
  const Extension ext = simplex_extension(cross);
  EXPECT_EQ(ext.size(), 6U);
  EXPECT_TRUE(verify_extension(cross, ext).passed);
  EXPECT_THROW(simplex_extension(VPoly(2)), InputError);
}
