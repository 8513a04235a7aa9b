#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extform/polyhedron.hpp"
#include "extform/slack.hpp"

namespace extform {

/// All faces of a polytope as sorted vertex index lists, ordered by size and
/// then lexicographically. faces.front() is the empty face, faces.back() is P.
struct FaceLattice {
  std::size_t vertex_count = 0;
  std::vector<std::vector<std::size_t>> faces;
  std::vector<int> dims;  // -1 for the empty face

  std::size_t size() const { return faces.size(); }
  /// Number of faces of each dimension.
  std::map<int, std::size_t> counts_by_dim() const;
  /// True iff face a is contained in face b.
  bool contains(std::size_t b, std::size_t a) const;
  std::optional<std::size_t> find(const std::vector<std::size_t>& vertex_set) const;
};

/// Closed sets of the vertex-facet incidences. Works within 10 inequalities
/// or 12 vertices; throws SizeError beyond that.
FaceLattice face_lattice(const HPoly& hrep, const VPoly& vrep);

/// ceil(log2 of the number of faces).
std::size_t log_face_bound(const FaceLattice& lattice);

constexpr std::size_t kDefaultSearchBudget = 2'000'000;

struct Rectangle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  bool operator==(const Rectangle&) const = default;
};

/// exact: the cover is a proven minimum. Otherwise the search ran out of
/// budget and `rectangles` is only the best cover found, so its size is an
/// upper bound on the rectangle covering number and `lower_bound` a lower one.
struct RectangleCover {
  std::vector<Rectangle> rectangles;
  bool exact = false;
  std::size_t lower_bound = 0;
  std::size_t nodes = 0;

  std::size_t size() const { return rectangles.size(); }
};

RectangleCover rectangle_cover_min(const RatMatrix& matrix, std::size_t budget = kDefaultSearchBudget);
RectangleCover rectangle_cover_min(const SlackMatrix& slack, std::size_t budget = kDefaultSearchBudget);

/// Support positions (row, col), no two inside one rectangle. exact: proven
/// maximum; otherwise the largest set found before the budget ran out (still
/// a valid fooling set).
struct FoolingSet {
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  bool exact = false;
  std::size_t nodes = 0;

  std::size_t size() const { return entries.size(); }
};

FoolingSet fooling_set_max(const RatMatrix& matrix, std::size_t budget = kDefaultSearchBudget);
FoolingSet fooling_set_max(const SlackMatrix& slack, std::size_t budget = kDefaultSearchBudget);
bool is_fooling_set(const RatMatrix& matrix, const std::vector<std::pair<std::size_t, std::size_t>>& entries);
bool is_rectangle_cover(const RatMatrix& matrix, const std::vector<Rectangle>& rectangles);

/// Exact rank by fraction-free elimination.
std::size_t rank_bound(const RatMatrix& matrix);
std::size_t rank_bound(const SlackMatrix& slack);

struct KnownExtension {
  std::string name;
  std::size_t size = 0;
  bool verified = false;
};

struct BoundReport {
  std::size_t rank = 0;
  RectangleCover cover;
  FoolingSet fooling;
  std::optional<std::size_t> log_face;  // absent beyond the face lattice size limits
  std::size_t face_count = 0;
  std::size_t lower = 0;
  std::string lower_source;
  std::size_t upper = 0;
  std::string upper_source;
  std::vector<KnownExtension> extensions;
};

/// Sandwich lower <= extension complexity <= upper. Only verified extensions
/// count towards the upper bound. Throws InvariantError if lower > upper.
BoundReport xc_bounds(const HPoly& hrep, const VPoly& vrep, const std::vector<Extension>& known,
                      std::size_t budget = kDefaultSearchBudget);

struct EmbeddingReport {
  bool ok = false;
  std::size_t target_faces = 0;
  std::size_t extension_faces = 0;
  std::string detail;
};

/// Maps every face of P to the vertex set of its preimage in Q and checks that
/// the map is injective and that F <= G iff image(F) <= image(G).
EmbeddingReport embedding_check(const HPoly& hrep, const VPoly& vrep, const Extension& ext);

}  // namespace extform
