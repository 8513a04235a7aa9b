#include "extform/bounds.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <set>

#include "extform/constructions.hpp"
#include "extform/errors.hpp"
#include "extform/kernel.hpp"

namespace extform {

namespace {

using Bits = boost::dynamic_bitset<>;

constexpr std::size_t kMaxLatticeFacets = 10;
constexpr std::size_t kMaxLatticeVertices = 12;
constexpr std::size_t kMaxRectangles = 200'000;

std::vector<std::size_t> members(const Bits& b) {
  std::vector<std::size_t> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(i);
  return out;
}

bool size_lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

int affine_dim(const std::vector<RatVector>& pts) {
  if (pts.empty()) return -1;
  RatMatrix diffs;
  for (const auto& p : pts) diffs.push_back(sub(p, pts.front()));
  return static_cast<int>(rank(diffs));
}

// Positions of the nonzero entries, row-major.
struct Support {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  std::vector<Bits> row_cols;  // nonzero columns per row

  explicit Support(const RatMatrix& m) : rows(m.size()), cols(m.empty() ? 0 : m.front().size()) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (m[i].size() != cols) throw InputError("support: ragged matrix");
      row_cols.emplace_back(cols);
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(m[i][j]) != 0) {
          cells.emplace_back(i, j);
          row_cols[i].set(j);
        }
      }
    }
  }

  bool nonzero(std::size_t i, std::size_t j) const { return row_cols[i].test(j); }

  // Two support cells fit in a common rectangle iff both crossing cells are nonzero.
  bool fool(std::size_t a, std::size_t b) const {
    const auto [i, j] = cells[a];
    const auto [k, l] = cells[b];
    return !nonzero(i, l) || !nonzero(k, j);
  }
};

}  // namespace

std::map<int, std::size_t> FaceLattice::counts_by_dim() const {
  std::map<int, std::size_t> out;
  for (int d : dims) ++out[d];
  return out;
}

bool FaceLattice::contains(std::size_t b, std::size_t a) const {
  return std::includes(faces.at(b).begin(), faces.at(b).end(), faces.at(a).begin(), faces.at(a).end());
}

std::optional<std::size_t> FaceLattice::find(const std::vector<std::size_t>& vertex_set) const {
  auto it = std::lower_bound(faces.begin(), faces.end(), vertex_set, size_lex_less);
  if (it == faces.end() || *it != vertex_set) return std::nullopt;
  return static_cast<std::size_t>(it - faces.begin());
}

FaceLattice face_lattice(const HPoly& hrep, const VPoly& vrep) {
  if (hrep.dim() != vrep.dim()) throw InputError("face_lattice: dimension mismatch");
  const std::size_t nv = vrep.count();
  if (hrep.size() > kMaxLatticeFacets && nv > kMaxLatticeVertices) {
    throw SizeError("face_lattice: " + std::to_string(hrep.size()) + " inequalities and " + std::to_string(nv) +
                    " vertices exceed the limits (10 inequalities or 12 vertices)");
  }
  std::vector<Bits> tight;
  for (const auto& row : hrep.inequalities()) {
    Bits b(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      const Rational lhs = dot(row.coeffs, vrep.points()[v]);
      if (lhs > row.rhs) throw InputError("face_lattice: point " + to_string(vrep.points()[v]) + " violates a row");
      if (lhs == row.rhs) b.set(v);
    }
    tight.push_back(std::move(b));
  }
  std::set<Bits> closed;
  Bits all(nv);
  all.set();
  closed.insert(all);
  closed.insert(Bits(nv));
  for (const auto& f : tight) {
    const std::vector<Bits> snapshot(closed.begin(), closed.end());
    for (const auto& g : snapshot) closed.insert(g & f);
  }
  FaceLattice out;
  out.vertex_count = nv;
  for (const auto& b : closed) out.faces.push_back(members(b));
  std::sort(out.faces.begin(), out.faces.end(), size_lex_less);
  for (const auto& face : out.faces) {
    std::vector<RatVector> pts;
    for (auto v : face) pts.push_back(vrep.points()[v]);
    out.dims.push_back(affine_dim(pts));
  }
  return out;
}

std::size_t log_face_bound(const FaceLattice& lattice) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < lattice.size()) ++bits;
  return bits;
}

RectangleCover rectangle_cover_min(const RatMatrix& matrix, std::size_t budget) {
  const Support sup(matrix);
  const std::size_t nc = sup.cells.size();
  RectangleCover out;
  if (nc == 0) {
    out.exact = true;
    return out;
  }
  // Inclusion-maximal rectangles: column sets closed under the row supports.
  std::set<Bits> col_sets;
  for (const auto& r : sup.row_cols) {
    if (r.none()) continue;
    const std::vector<Bits> snapshot(col_sets.begin(), col_sets.end());
    col_sets.insert(r);
    for (const auto& c : snapshot) {
      Bits meet = c & r;
      if (meet.any()) col_sets.insert(std::move(meet));
    }
    if (col_sets.size() > kMaxRectangles) throw SizeError("rectangle_cover_min: too many maximal rectangles");
  }
  std::vector<Rectangle> rects;
  std::vector<Bits> rect_cells;
  std::vector<std::vector<std::size_t>> covering(nc);
  for (const auto& c : col_sets) {
    Rectangle r;
    r.cols = members(c);
    for (std::size_t i = 0; i < sup.rows; ++i) {
      if (c.is_subset_of(sup.row_cols[i])) r.rows.push_back(i);
    }
    Bits cells(nc);
    for (std::size_t x = 0; x < nc; ++x) {
      if (std::binary_search(r.rows.begin(), r.rows.end(), sup.cells[x].first) && c.test(sup.cells[x].second)) {
        cells.set(x);
        covering[x].push_back(rects.size());
      }
    }
    rects.push_back(std::move(r));
    rect_cells.push_back(std::move(cells));
  }

  auto greedy_fooling = [&](const Bits& uncovered) {
    std::vector<std::size_t> picked;
    for (auto x = uncovered.find_first(); x != Bits::npos; x = uncovered.find_next(x)) {
      if (std::all_of(picked.begin(), picked.end(), [&](std::size_t y) { return sup.fool(x, y); })) picked.push_back(x);
    }
    return picked.size();
  };

  std::vector<std::size_t> best;
  {
    Bits covered(nc);
    while (!covered.all()) {
      std::size_t pick = 0;
      std::size_t gain = 0;
      for (std::size_t r = 0; r < rects.size(); ++r) {
        const std::size_t g = (rect_cells[r] - covered).count();
        if (g > gain) {
          gain = g;
          pick = r;
        }
      }
      best.push_back(pick);
      covered |= rect_cells[pick];
    }
  }

  std::vector<std::size_t> chosen;
  bool exhausted = false;
  std::size_t nodes = 0;
  auto dfs = [&](auto&& self, const Bits& covered) -> void {
    if (exhausted) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    if (covered.all()) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    const Bits uncovered = ~covered;
    if (chosen.size() + greedy_fooling(uncovered) >= best.size()) return;
    std::size_t cell = Bits::npos;
    std::size_t fewest = rects.size() + 1;
    for (auto x = uncovered.find_first(); x != Bits::npos; x = uncovered.find_next(x)) {
      if (covering[x].size() < fewest) {
        fewest = covering[x].size();
        cell = x;
      }
    }
    for (auto r : covering[cell]) {
      chosen.push_back(r);
      self(self, covered | rect_cells[r]);
      chosen.pop_back();
      if (exhausted) return;
    }
  };
  dfs(dfs, Bits(nc));

  for (auto r : best) out.rectangles.push_back(rects[r]);
  out.exact = !exhausted;
  out.nodes = nodes;
  Bits none(nc);
  out.lower_bound = out.exact ? best.size() : greedy_fooling(~none);
  return out;
}

RectangleCover rectangle_cover_min(const SlackMatrix& slack, std::size_t budget) {
  return rectangle_cover_min(slack.entries, budget);
}

FoolingSet fooling_set_max(const RatMatrix& matrix, std::size_t budget) {
  const Support sup(matrix);
  const std::size_t nc = sup.cells.size();
  std::vector<Bits> adj(nc, Bits(nc));
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = a + 1; b < nc; ++b) {
      if (sup.fool(a, b)) {
        adj[a].set(b);
        adj[b].set(a);
      }
    }
  }
  // Maximum clique with greedy-coloring bounds.
  std::vector<std::size_t> best;
  std::vector<std::size_t> clique;
  bool exhausted = false;
  std::size_t nodes = 0;
  auto expand = [&](auto&& self, Bits cand) -> void {
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> color;
    {
      Bits uncolored = cand;
      std::size_t c = 0;
      while (uncolored.any()) {
        ++c;
        Bits q = uncolored;
        while (q.any()) {
          const std::size_t v = q.find_first();
          q.reset(v);
          q -= adj[v];
          uncolored.reset(v);
          order.push_back(v);
          color.push_back(c);
        }
      }
    }
    for (std::size_t k = order.size(); k-- > 0;) {
      if (clique.size() + color[k] <= best.size()) return;
      const std::size_t v = order[k];
      clique.push_back(v);
      const Bits next = cand & adj[v];
      if (next.none()) {
        if (clique.size() > best.size()) best = clique;
      } else {
        self(self, next);
      }
      clique.pop_back();
      if (exhausted) return;
      cand.reset(v);
    }
  };
  Bits all(nc);
  all.set();
  if (nc > 0) expand(expand, all);

  FoolingSet out;
  std::sort(best.begin(), best.end());
  for (auto x : best) out.entries.push_back(sup.cells[x]);
  out.exact = !exhausted;
  out.nodes = nodes;
  return out;
}

FoolingSet fooling_set_max(const SlackMatrix& slack, std::size_t budget) { return fooling_set_max(slack.entries, budget); }

bool is_fooling_set(const RatMatrix& matrix, const std::vector<std::pair<std::size_t, std::size_t>>& entries) {
  auto nz = [&](std::size_t i, std::size_t j) { return sgn(matrix.at(i).at(j)) != 0; };
  for (std::size_t a = 0; a < entries.size(); ++a) {
    const auto [i, j] = entries[a];
    if (!nz(i, j)) return false;
    for (std::size_t b = a + 1; b < entries.size(); ++b) {
      const auto [k, l] = entries[b];
      if (nz(i, l) && nz(k, j)) return false;
    }
  }
  return true;
}

bool is_rectangle_cover(const RatMatrix& matrix, const std::vector<Rectangle>& rectangles) {
  std::vector<std::vector<bool>> hit(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) hit[i].assign(matrix[i].size(), false);
  for (const auto& r : rectangles) {
    for (auto i : r.rows) {
      for (auto j : r.cols) {
        if (sgn(matrix.at(i).at(j)) == 0) return false;
        hit[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix[i].size(); ++j) {
      if (sgn(matrix[i][j]) != 0 && !hit[i][j]) return false;
    }
  }
  return true;
}

std::size_t rank_bound(const RatMatrix& matrix) {
  // Clear denominators row by row, then Bareiss elimination over the integers.
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : matrix) {
    mpz_class l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> r;
    for (const auto& x : row) r.push_back(mpz_class(x.get_num() * (l / x.get_den())));
    a.push_back(std::move(r));
  }
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a.front().size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t rank_bound(const SlackMatrix& slack) { return rank_bound(slack.entries); }

BoundReport xc_bounds(const HPoly& hrep, const VPoly& vrep, const std::vector<Extension>& known, std::size_t budget) {
  const SlackMatrix slack = slack_matrix(hrep, vrep);
  BoundReport rep;
  rep.rank = rank_bound(slack);
  rep.cover = rectangle_cover_min(slack, budget);
  rep.fooling = fooling_set_max(slack, budget);
  try {
    const FaceLattice lattice = face_lattice(hrep, vrep);
    rep.face_count = lattice.size();
    rep.log_face = log_face_bound(lattice);
  } catch (const SizeError&) {
    rep.log_face.reset();
  }

  auto raise_lower = [&](std::size_t value, const char* source) {
    if (rep.lower_source.empty() || value > rep.lower) {
      rep.lower = value;
      rep.lower_source = source;
    }
  };
  if (rep.cover.exact) raise_lower(rep.cover.size(), "rectangle-cover");
  raise_lower(rep.fooling.size(), "fooling-set");
  raise_lower(rep.rank, "rank");
  if (rep.log_face) raise_lower(*rep.log_face, "log-faces");

  rep.upper = hrep.size();
  rep.upper_source = "inequalities";
  if (vrep.count() < rep.upper) {
    rep.upper = vrep.count();
    rep.upper_source = "vertices";
  }
  for (const auto& ext : known) {
    KnownExtension k{ext.name, ext.size(), verify_extension(hrep, vrep, ext).passed};
    if (k.verified && k.size < rep.upper) {
      rep.upper = k.size;
      rep.upper_source = k.name.empty() ? "extension" : k.name;
    }
    rep.extensions.push_back(std::move(k));
  }
  if (rep.lower > rep.upper) {
    throw InvariantError("xc_bounds: lower bound " + std::to_string(rep.lower) + " (" + rep.lower_source +
                         ") exceeds upper bound " + std::to_string(rep.upper) + " (" + rep.upper_source + ")");
  }
  return rep;
}

EmbeddingReport embedding_check(const HPoly& hrep, const VPoly& vrep, const Extension& ext) {
  EmbeddingReport rep;
  const VerifyReport verified = verify_extension(hrep, vrep, ext);
  if (!verified.passed) {
    rep.detail = "extension not verified: " + verified.detail;
    return rep;
  }
  const FaceLattice lp = face_lattice(hrep, vrep);
  const VPoly qv = vertices(ext.q);
  const FaceLattice lq = face_lattice(ext.q, qv);
  rep.target_faces = lp.size();
  rep.extension_faces = lq.size();

  std::vector<RatVector> images;
  for (const auto& y : qv.points()) images.push_back(ext.proj.apply(y));
  std::vector<std::size_t> map(lp.size());
  for (std::size_t f = 0; f < lp.size(); ++f) {
    const auto& face = lp.faces[f];
    std::vector<std::size_t> pre;
    if (!face.empty()) {
      std::vector<const Constraint*> rows;
      for (const auto& row : hrep.inequalities()) {
        const bool on = std::all_of(face.begin(), face.end(),
                                    [&](std::size_t v) { return dot(row.coeffs, vrep.points()[v]) == row.rhs; });
        if (on) rows.push_back(&row);
      }
      for (std::size_t y = 0; y < images.size(); ++y) {
        const bool in = std::all_of(rows.begin(), rows.end(),
                                    [&](const Constraint* r) { return dot(r->coeffs, images[y]) == r->rhs; });
        if (in) pre.push_back(y);
      }
    }
    const auto idx = lq.find(pre);
    if (!idx) {
      rep.detail = "preimage of face " + std::to_string(f) + " is not a face of Q";
      return rep;
    }
    map[f] = *idx;
  }
  for (std::size_t a = 0; a < lp.size(); ++a) {
    for (std::size_t b = 0; b < lp.size(); ++b) {
      if (a != b && map[a] == map[b]) {
        rep.detail = "faces " + std::to_string(a) + " and " + std::to_string(b) + " share a preimage";
        return rep;
      }
      if (lp.contains(b, a) != lq.contains(map[b], map[a])) {
        rep.detail = "order between faces " + std::to_string(a) + " and " + std::to_string(b) + " is not preserved";
        return rep;
      }
    }
  }
  rep.ok = true;
  rep.detail = std::to_string(lp.size()) + " faces embed into a lattice of " + std::to_string(lq.size());
  return rep;
}

}  // namespace extform
