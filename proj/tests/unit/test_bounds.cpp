#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "extform/bounds.hpp"
#include "extform/constructions.hpp"
#include "extform/errors.hpp"
#include "extform/kernel.hpp"
#include "extform/slack.hpp"
#include "extform/zoo.hpp"

using namespace extform;

namespace {

using Entries = std::vector<std::pair<std::size_t, std::size_t>>;

VPoly vpoly_of(std::size_t dim, const std::vector<RatVector>& pts) {
  VPoly v(dim);
  for (const auto& p : pts) v.add_point(p);
  return v;
}

HPoly triangle() {
  HPoly p(2);
  p.add_inequality({-1, 0}, 0);
  p.add_inequality({0, -1}, 0);
  p.add_inequality({1, 1}, 1);
  return p;
}

VPoly triangle_vertices() { return vpoly_of(2, {{1, 0}, {0, 1}, {0, 0}}); }
VPoly square_vertices() { return vpoly_of(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

RatMatrix slack_of(const HPoly& h, const VPoly& v) { return slack_matrix(h, v).entries; }

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Minimum rectangle cover by trying every family of row-set-maximal
// rectangles, smallest first. Only for tiny matrices.
std::size_t brute_cover(const RatMatrix& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<std::pair<unsigned, unsigned>> rects;  // row mask, col mask
  for (unsigned r = 1; r < (1U << rows); ++r) {
    unsigned c = (1U << cols) - 1;
    for (std::size_t i = 0; i < rows; ++i) {
      if (((r >> i) & 1U) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (m[i][j] == 0) c &= ~(1U << j);
      }
    }
    if (c != 0) rects.emplace_back(r, c);
  }
  std::vector<std::pair<std::size_t, std::size_t>> support;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (m[i][j] != 0) support.emplace_back(i, j);
    }
  }
  if (support.empty()) return 0;
  for (std::size_t k = 1; k <= support.size(); ++k) {
    std::vector<std::size_t> pick(k, 0);
    std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t depth, std::size_t start) {
      if (depth == k) {
        for (const auto& [i, j] : support) {
          bool hit = false;
          for (auto p : pick) hit = hit || (((rects[p].first >> i) & 1U) && ((rects[p].second >> j) & 1U));
          if (!hit) return false;
        }
        return true;
      }
      for (std::size_t p = start; p < rects.size(); ++p) {
        pick[depth] = p;
        if (go(depth + 1, p + 1)) return true;
      }
      return false;
    };
    if (go(0, 0)) return k;
  }
  return support.size();
}

// Largest fooling set over all subsets of the support.
std::size_t brute_fooling(const RatMatrix& m) {
  Entries support;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (m[i][j] != 0) support.emplace_back(i, j);
    }
  }
  std::size_t best = 0;
  for (unsigned mask = 0; mask < (1U << support.size()); ++mask) {
    const std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t a = 0; a < support.size() && ok; ++a) {
      if (((mask >> a) & 1U) == 0) continue;
      for (std::size_t b = a + 1; b < support.size() && ok; ++b) {
        if (((mask >> b) & 1U) == 0) continue;
        const auto [i, j] = support[a];
        const auto [k, l] = support[b];
        ok = m[i][l] == 0 || m[k][j] == 0;
      }
    }
    if (ok) best = size;
  }
  return best;
}

}  // namespace

TEST(FaceLattice, Square) {
  const FaceLattice l = face_lattice(zoo::cube_hrep(2), square_vertices());
  EXPECT_EQ(l.size(), 10U);
  EXPECT_EQ(l.counts_by_dim(), (std::map<int, std::size_t>{{-1, 1}, {0, 4}, {1, 4}, {2, 1}}));
  EXPECT_TRUE(l.faces.front().empty());
  EXPECT_EQ(l.faces.back().size(), 4U);
  EXPECT_EQ(log_face_bound(l), 4U);
}

TEST(FaceLattice, TetrahedronIsBoolean) {
  const HPoly s = zoo::simplex_hrep(4);
  const FaceLattice l = face_lattice(s, vertices(s));
  EXPECT_EQ(l.size(), 16U);
  EXPECT_EQ(log_face_bound(l), 4U);
  EXPECT_EQ(l.counts_by_dim(), (std::map<int, std::size_t>{{-1, 1}, {0, 4}, {1, 6}, {2, 4}, {3, 1}}));
}

TEST(FaceLattice, CrossPolytopes) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const VPoly v = zoo::cross_polytope_vrep(n);
    const FaceLattice l = face_lattice(hull(v), v);
    EXPECT_EQ(l.size(), ipow(3, n) + 1) << n;
  }
  const VPoly v4 = zoo::cross_polytope_vrep(4);
  const FaceLattice l4 = face_lattice(hull(v4), v4);
  EXPECT_EQ(l4.size(), 82U);
  EXPECT_EQ(log_face_bound(l4), 7U);
}

TEST(FaceLattice, CubesMatchClosedForm) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const HPoly c = zoo::cube_hrep(n);
    EXPECT_EQ(face_lattice(c, vertices(c)).size(), ipow(3, n) + 1) << n;
  }
}

TEST(FaceLattice, OrderAndLookup) {
  const FaceLattice l = face_lattice(zoo::cube_hrep(2), square_vertices());
  const auto edge = l.find({0, 1});
  const auto vertex = l.find({0});
  ASSERT_TRUE(edge && vertex);
  EXPECT_TRUE(l.contains(*edge, *vertex));
  EXPECT_FALSE(l.contains(*vertex, *edge));
  EXPECT_FALSE(l.find({0, 3}).has_value());
}

TEST(FaceLattice, SizeLimits) {
  const HPoly c = zoo::cube_hrep(6);
  EXPECT_THROW(face_lattice(c, vertices(c)), SizeError);
}

TEST(RectangleCover, Examples) {
  const RatMatrix tri = slack_of(triangle(), triangle_vertices());
  const RectangleCover t = rectangle_cover_min(tri);
  EXPECT_TRUE(t.exact);
  EXPECT_EQ(t.size(), 3U);
  EXPECT_TRUE(is_rectangle_cover(tri, t.rectangles));

  const RatMatrix sq = slack_of(zoo::cube_hrep(2), square_vertices());
  const RectangleCover s = rectangle_cover_min(sq);
  EXPECT_TRUE(s.exact);
  EXPECT_EQ(s.size(), 4U);
  EXPECT_EQ(s.size(), brute_cover(sq));

  const RatMatrix pos = {{1, 2, 3}, {4, 5, 6}};
  const RectangleCover p = rectangle_cover_min(pos);
  EXPECT_EQ(p.size(), 1U);
  EXPECT_TRUE(p.exact);
  EXPECT_EQ(rectangle_cover_min(zero_matrix(2, 2)).size(), 0U);
}

TEST(RectangleCover, BadCoverRejected) {
  const RatMatrix sq = slack_of(zoo::cube_hrep(2), square_vertices());
  RectangleCover s = rectangle_cover_min(sq);
  s.rectangles.pop_back();
  EXPECT_FALSE(is_rectangle_cover(sq, s.rectangles));
  EXPECT_FALSE(is_rectangle_cover(sq, {Rectangle{{0, 1}, {0, 1, 2, 3}}}));
}

TEST(RectangleCover, BudgetFlagged) {
  const HPoly c = zoo::cube_hrep(4);
  const RectangleCover r = rectangle_cover_min(slack_of(c, vertices(c)), 1);
  EXPECT_FALSE(r.exact);
  EXPECT_TRUE(is_rectangle_cover(slack_of(c, vertices(c)), r.rectangles));
  EXPECT_LE(r.lower_bound, r.size());
}

TEST(RectangleCover, RandomMatchesBruteForce) {
  std::mt19937 rng(17);
  std::bernoulli_distribution on(0.6);
  for (int t = 0; t < 60; ++t) {
    const std::size_t rows = 2 + t % 4;
    const std::size_t cols = 2 + (t / 4) % 4;
    RatMatrix m(rows, RatVector(cols));
    for (auto& row : m) {
      for (auto& x : row) x = on(rng) ? 1 : 0;
    }
    const RectangleCover c = rectangle_cover_min(m);
    ASSERT_TRUE(c.exact);
    EXPECT_TRUE(is_rectangle_cover(m, c.rectangles));
    EXPECT_EQ(c.size(), brute_cover(m));
    const FoolingSet f = fooling_set_max(m);
    ASSERT_TRUE(f.exact);
    EXPECT_TRUE(is_fooling_set(m, f.entries));
    if (rows * cols <= 16) EXPECT_EQ(f.size(), brute_fooling(m));
    EXPECT_LE(f.size(), c.size());
    EXPECT_LE(rank_bound(m), rows);
  }
}

TEST(FoolingSet, Cubes) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const HPoly c = zoo::cube_hrep(n);
    const RatMatrix s = slack_of(c, vertices(c));
    const FoolingSet f = fooling_set_max(s);
    EXPECT_TRUE(f.exact);
    EXPECT_EQ(f.size(), 2 * n);
    EXPECT_TRUE(is_fooling_set(s, f.entries));
  }
}

TEST(FoolingSet, AllPositiveAndChecks) {
  const RatMatrix pos = {{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(fooling_set_max(pos).size(), 1U);
  EXPECT_FALSE(is_fooling_set(pos, {{0, 0}, {1, 1}}));
  const RatMatrix sq = slack_of(zoo::cube_hrep(2), square_vertices());
  EXPECT_FALSE(is_fooling_set(sq, {{0, 0}}));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank_bound(zero_matrix(3, 4)), 0U);
  EXPECT_EQ(rank_bound(slack_of(triangle(), triangle_vertices())), 3U);
  EXPECT_EQ(rank_bound(slack_of(zoo::cube_hrep(2), square_vertices())), 3U);
  const RatMatrix m = {{Rational(1, 2), 1, 2}, {1, 2, 4}, {0, 1, Rational(1, 3)}};
  EXPECT_EQ(rank_bound(m), rank(m));
}

TEST(Rank, AgreesWithEliminationOnRandomMatrices) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int t = 0; t < 100; ++t) {
    RatMatrix m(1 + t % 5, RatVector(1 + (t / 5) % 5));
    for (auto& row : m) {
      for (auto& x : row) x = make_rational(coef(rng), 1 + t % 3);
    }
    EXPECT_EQ(rank_bound(m), rank(m));
  }
}

TEST(Bounds, SquarePinned) {
  const BoundReport r = xc_bounds(zoo::cube_hrep(2), square_vertices(), {});
  EXPECT_EQ(r.lower, 4U);
  EXPECT_EQ(r.upper, 4U);
  EXPECT_EQ(r.rank, 3U);
  EXPECT_EQ(r.cover.size(), 4U);
  ASSERT_TRUE(r.log_face.has_value());
  EXPECT_EQ(*r.log_face, 4U);
  EXPECT_EQ(r.face_count, 10U);
}

TEST(Bounds, PermutahedronWithBirkhoff) {
  const BoundReport r = xc_bounds(zoo::permutahedron_hrep(3), zoo::permutahedron_vrep(3), {birkhoff_extension(3)});
  ASSERT_EQ(r.extensions.size(), 1U);
  EXPECT_EQ(r.extensions[0].size, 9U);
  EXPECT_TRUE(r.extensions[0].verified);
  // Six facets and six vertices beat the size-nine extension.
  EXPECT_EQ(r.upper, 6U);
  EXPECT_EQ(r.lower, std::max({r.rank, r.cover.size(), r.fooling.size(), r.log_face.value_or(0)}));
  EXPECT_TRUE(r.cover.exact);
  EXPECT_EQ(r.cover.size(), brute_cover(slack_of(zoo::permutahedron_hrep(3), zoo::permutahedron_vrep(3))));
  EXPECT_LE(r.lower, r.upper);
}

TEST(Bounds, Simplices) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const HPoly s = zoo::simplex_hrep(n);
    const BoundReport r = xc_bounds(s, vertices(s), {});
    EXPECT_EQ(r.lower, n) << n;
    EXPECT_EQ(r.upper, n) << n;
  }
}

TEST(Bounds, UnverifiedExtensionIgnored) {
  Extension tiny{HPoly(2), AffineMap::identity(2), "bogus"};
  tiny.q.add_equation({1, 0}, 0);
  tiny.q.add_equation({0, 1}, 0);
  const BoundReport r = xc_bounds(zoo::cube_hrep(2), square_vertices(), {tiny});
  ASSERT_EQ(r.extensions.size(), 1U);
  EXPECT_FALSE(r.extensions[0].verified);
  EXPECT_EQ(r.upper, 4U);
}

TEST(Embedding, CrossIntoSimplex) {
  const VPoly cross = zoo::cross_polytope_vrep(3);
  const EmbeddingReport r = embedding_check(hull(cross), cross, simplex_extension(cross));
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.target_faces, 28U);
  EXPECT_EQ(r.extension_faces, 64U);
}

TEST(Embedding, Identity) {
  const HPoly sq = zoo::cube_hrep(2);
  const EmbeddingReport r = embedding_check(sq, square_vertices(), {sq, AffineMap::identity(2), "identity"});
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.target_faces, r.extension_faces);
}

TEST(Embedding, BirkhoffThree) {
  const EmbeddingReport r =
      embedding_check(zoo::permutahedron_hrep(3), zoo::permutahedron_vrep(3), birkhoff_extension(3));
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.target_faces, 14U);
}
