#include "extform/kernel.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <utility>

#include "extform/errors.hpp"

namespace extform {

namespace {

using Bits = boost::dynamic_bitset<>;

Constraint normalized(Constraint row) {
  RatVector joint = row.coeffs;
  joint.push_back(row.rhs);
  joint = primitive(joint);
  row.rhs = joint.back();
  joint.pop_back();
  row.coeffs = std::move(joint);
  return row;
}

bool row_less(const Constraint& a, const Constraint& b) {
  if (a.coeffs != b.coeffs) return lex_less(a.coeffs, b.coeffs);
  return a.rhs < b.rhs;
}

HPoly with_rows(std::size_t dim, const std::vector<Constraint>& ineqs, const std::vector<Constraint>& eqs) {
  HPoly p(dim);
  for (const auto& r : ineqs) p.add_inequality(r);
  for (const auto& r : eqs) p.add_equation(r);
  return p;
}

// A point of `inner` beyond a·x <= beta, read off an LP that maximized a.
std::optional<RatVector> escape_from(const LPResult& r, const RatVector& a, const Rational& beta) {
  if (r.status == LPStatus::Optimal) {
    if (r.optimum > beta) return r.primal_point;
    return std::nullopt;
  }
  if (r.status == LPStatus::Unbounded) {
    const Rational gain = dot(a, r.ray);
    const Rational need = (beta - dot(a, r.primal_point)) / gain;
    Rational t = 1;
    if (need >= 0) {
      mpz_class up;
      mpz_cdiv_q(up.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
      t = Rational(up) + 1;
    }
    return add(r.primal_point, scaled(r.ray, t));
  }
  return std::nullopt;
}

}  // namespace

RatVector AffineChart::lift(const RatVector& u) const {
  if (u.size() != basis.size()) throw InputError("AffineChart::lift: dimension mismatch");
  RatVector x = origin;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (sgn(u[k]) == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (sgn(basis[k][j]) != 0) x[j] += u[k] * basis[k][j];
    }
  }
  return x;
}

RatVector AffineChart::chart(const RatVector& x) const {
  RatVector u;
  u.reserve(free_coords.size());
  for (auto f : free_coords) u.push_back(x.at(f));
  return u;
}

AffineChart affine_chart(const std::vector<Constraint>& rref_equations, std::size_t dim) {
  AffineChart chart;
  chart.origin = zero_vector(dim);
  std::vector<std::size_t> pivots;
  std::vector<bool> is_pivot(dim, false);
  for (const auto& e : rref_equations) {
    std::size_t p = 0;
    while (p < dim && sgn(e.coeffs[p]) == 0) ++p;
    if (p == dim || e.coeffs[p] != 1) throw InvariantError("affine_chart: equations not in rref");
    pivots.push_back(p);
    is_pivot[p] = true;
    chart.origin[p] = e.rhs;
  }
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    RatVector v = unit_vector(dim, f);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rref_equations[r].coeffs[f];
    chart.basis.push_back(std::move(v));
    chart.free_coords.push_back(f);
  }
  return chart;
}

std::vector<std::size_t> implicit_equalities(const HPoly& poly) {
  const auto& ineqs = poly.inequalities();
  if (ineqs.empty()) {
    if (!feasible_point(poly)) throw InfeasibleError("implicit_equalities: empty polyhedron");
    return {};
  }
  const std::size_t n = poly.dim();

  // One LP settles the common case: max t with every inequality slackened by
  // t. A positive optimum means no inequality is implicitly an equation.
  HPoly padded(n + 1);
  for (const auto& r : ineqs) {
    RatVector a = r.coeffs;
    a.push_back(1);
    padded.add_inequality(std::move(a), r.rhs);
  }
  padded.add_inequality(unit_vector(n + 1, n), 1);
  for (const auto& r : poly.equations()) {
    RatVector c = r.coeffs;
    c.push_back(0);
    padded.add_equation(std::move(c), r.rhs);
  }
  const LPResult slackest = lp_solve(unit_vector(n + 1, n), Sense::Maximize, padded);
  if (slackest.status == LPStatus::Infeasible) throw InfeasibleError("implicit_equalities: empty polyhedron");
  if (sgn(slackest.optimum) > 0) return {};

  LinearProgram lp(poly);
  if (!lp.feasible()) throw InfeasibleError("implicit_equalities: empty polyhedron");
  std::vector<bool> loose(ineqs.size(), false);
  auto mark = [&](const RatVector& x) {
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      if (!loose[i] && dot(ineqs[i].coeffs, x) < ineqs[i].rhs) loose[i] = true;
    }
  };
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (loose[i]) continue;
    const LPResult r = lp.solve(ineqs[i].coeffs, Sense::Minimize);
    if (r.status == LPStatus::Optimal && r.optimum == ineqs[i].rhs) {
      out.push_back(i);
      continue;
    }
    loose[i] = true;
    mark(r.primal_point);
  }
  return out;
}

std::vector<Constraint> affine_hull(const HPoly& poly) {
  const std::vector<std::size_t> implicit = implicit_equalities(poly);
  const std::size_t n = poly.dim();
  RatMatrix aug;
  for (const auto& e : poly.equations()) {
    RatVector row = e.coeffs;
    row.push_back(e.rhs);
    aug.push_back(std::move(row));
  }
  for (auto i : implicit) {
    RatVector row = poly.inequalities()[i].coeffs;
    row.push_back(poly.inequalities()[i].rhs);
    aug.push_back(std::move(row));
  }
  const RowEchelon e = rref(std::move(aug), n);
  std::vector<Constraint> out;
  for (const auto& row : e.rows) {
    Constraint c;
    c.coeffs.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    c.rhs = row[n];
    out.push_back(std::move(c));
  }
  return out;
}

HPoly remove_redundancy(const HPoly& poly) {
  if (!feasible_point(poly)) throw InfeasibleError("remove_redundancy: empty polyhedron");
  const auto& ineqs = poly.inequalities();
  std::vector<bool> kept(ineqs.size(), true);
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    HPoly rest(poly.dim());
    for (std::size_t j = 0; j < ineqs.size(); ++j) {
      if (j != i && kept[j]) rest.add_inequality(ineqs[j]);
    }
    for (const auto& e : poly.equations()) rest.add_equation(e);
    const LPResult r = lp_solve(ineqs[i].coeffs, Sense::Maximize, rest);
    if (r.status == LPStatus::Optimal && r.optimum <= ineqs[i].rhs) kept[i] = false;
  }
  HPoly out(poly.dim());
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (kept[i]) out.add_inequality(ineqs[i]);
  }
  for (const auto& e : poly.equations()) out.add_equation(e);
  return out;
}

HPoly fm_project(const HPoly& poly, const std::vector<std::size_t>& keep) {
  const std::size_t n = poly.dim();
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) throw InputError("fm_project: coordinate " + std::to_string(k) + " out of range");
    if (kept[k]) throw InputError("fm_project: coordinate " + std::to_string(k) + " listed twice");
    kept[k] = true;
  }
  HPoly out(keep.size());
  if (!feasible_point(poly)) {
    out.add_inequality(zero_vector(keep.size()), Rational(-1), "empty");
    return out;
  }

  std::vector<Constraint> ineqs = poly.inequalities();
  std::vector<Constraint> eqs = poly.equations();
  for (auto& r : ineqs) r.label.clear();
  for (auto& r : eqs) r.label.clear();

  auto tidy = [](std::vector<Constraint> rows, bool equations) {
    std::vector<Constraint> out_rows;
    for (auto& r : rows) {
      if (is_zero(r.coeffs)) continue;  // 0 <= b with b >= 0, since the polyhedron is nonempty
      Constraint c = normalized(std::move(r));
      if (equations) {
        auto lead = std::find_if(c.coeffs.begin(), c.coeffs.end(), [](const Rational& x) { return sgn(x) != 0; });
        if (sgn(*lead) < 0) {
          for (auto& x : c.coeffs) x = -x;
          c.rhs = -c.rhs;
        }
      }
      if (std::find(out_rows.begin(), out_rows.end(), c) == out_rows.end()) out_rows.push_back(std::move(c));
    }
    return out_rows;
  };

  for (std::size_t j = 0; j < n; ++j) {
    if (kept[j]) continue;
    auto pivot = std::find_if(eqs.begin(), eqs.end(), [j](const Constraint& e) { return sgn(e.coeffs[j]) != 0; });
    if (pivot != eqs.end()) {
      const Constraint e = *pivot;
      eqs.erase(pivot);
      auto substitute = [&](Constraint& r) {
        if (sgn(r.coeffs[j]) == 0) return;
        const Rational f = r.coeffs[j] / e.coeffs[j];
        r.coeffs = sub(r.coeffs, scaled(e.coeffs, f));
        r.rhs -= f * e.rhs;
      };
      for (auto& r : ineqs) substitute(r);
      for (auto& r : eqs) substitute(r);
      ineqs = tidy(std::move(ineqs), false);
      eqs = tidy(std::move(eqs), true);
      continue;
    }
    std::vector<Constraint> next;
    std::vector<const Constraint*> pos;
    std::vector<const Constraint*> neg;
    for (const auto& r : ineqs) {
      const int s = sgn(r.coeffs[j]);
      if (s == 0) next.push_back(r);
      if (s > 0) pos.push_back(&r);
      if (s < 0) neg.push_back(&r);
    }
    for (const auto* p : pos) {
      for (const auto* q : neg) {
        const Rational wp = -q->coeffs[j];
        const Rational wq = p->coeffs[j];
        Constraint c;
        c.coeffs = add(scaled(p->coeffs, wp), scaled(q->coeffs, wq));
        c.coeffs[j] = 0;
        c.rhs = wp * p->rhs + wq * q->rhs;
        next.push_back(std::move(c));
      }
    }
    ineqs = tidy(std::move(next), false);
    ineqs = remove_redundancy(with_rows(n, ineqs, eqs)).inequalities();
  }

  auto restrict_row = [&](const Constraint& r) {
    Constraint c;
    for (auto k : keep) c.coeffs.push_back(r.coeffs[k]);
    c.rhs = r.rhs;
    return c;
  };
  for (const auto& r : ineqs) out.add_inequality(restrict_row(r));
  for (const auto& r : eqs) out.add_equation(restrict_row(r));
  return out;
}

HPoly image(const HPoly& poly, const AffineMap& map) {
  if (map.in_dim() != poly.dim()) throw InputError("image: map reads a different dimension");
  const std::size_t out_dim = map.out_dim();
  const std::size_t total = out_dim + poly.dim();
  HPoly lifted(total);
  for (std::size_t i = 0; i < out_dim; ++i) {
    RatVector row = zero_vector(total);
    row[i] = 1;
    for (std::size_t j = 0; j < poly.dim(); ++j) row[out_dim + j] = -map.matrix()[i][j];
    lifted.add_equation(std::move(row), map.offset()[i]);
  }
  auto shifted = [&](const Constraint& r) {
    Constraint c;
    c.coeffs = zero_vector(out_dim);
    c.coeffs.insert(c.coeffs.end(), r.coeffs.begin(), r.coeffs.end());
    c.rhs = r.rhs;
    return c;
  };
  for (const auto& r : poly.inequalities()) lifted.add_inequality(shifted(r));
  for (const auto& r : poly.equations()) lifted.add_equation(shifted(r));
  std::vector<std::size_t> keep(out_dim);
  for (std::size_t i = 0; i < out_dim; ++i) keep[i] = i;
  return fm_project(lifted, keep);
}

namespace {

struct DDVertex {
  RatVector u;
  Bits tight;
};

// Double description inside a bounding simplex: start from the simplex
// {u >= lo, sum u <= sum hi} and cut with each row in order. Two vertices are
// adjacent iff no third vertex is tight on every row the pair shares.
std::vector<RatVector> double_description(std::size_t k, const std::vector<Constraint>& rows, const RatVector& lo,
                                          const RatVector& hi) {
  const std::size_t total = k + 1 + rows.size();
  Rational spread(0);
  for (std::size_t i = 0; i < k; ++i) spread += hi[i] - lo[i];

  std::vector<DDVertex> verts;
  {
    DDVertex base{lo, Bits(total)};
    for (std::size_t i = 0; i < k; ++i) base.tight.set(i);
    verts.push_back(base);
    for (std::size_t i = 0; i < k; ++i) {
      DDVertex v{lo, Bits(total)};
      v.u[i] += spread;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) v.tight.set(j);
      }
      v.tight.set(k);
      verts.push_back(std::move(v));
    }
  }

  std::vector<Rational> slack;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t bit = k + 1 + r;
    slack.assign(verts.size(), Rational(0));
    bool any_neg = false;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      slack[v] = rows[r].rhs - dot(rows[r].coeffs, verts[v].u);
      if (sgn(slack[v]) < 0) any_neg = true;
    }
    std::vector<DDVertex> next;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (sgn(slack[v]) < 0) continue;
      DDVertex keep = verts[v];
      if (sgn(slack[v]) == 0) keep.tight.set(bit);
      next.push_back(std::move(keep));
    }
    if (any_neg) {
      for (std::size_t p = 0; p < verts.size(); ++p) {
        if (sgn(slack[p]) <= 0) continue;
        for (std::size_t q = 0; q < verts.size(); ++q) {
          if (sgn(slack[q]) >= 0) continue;
          Bits common = verts[p].tight & verts[q].tight;
          if (k >= 1 && common.count() + 1 < k) continue;
          bool adjacent = true;
          for (std::size_t w = 0; w < verts.size() && adjacent; ++w) {
            if (w != p && w != q && common.is_subset_of(verts[w].tight)) adjacent = false;
          }
          if (!adjacent) continue;
          const Rational t = slack[p] / (slack[p] - slack[q]);
          DDVertex cut{add(verts[p].u, scaled(sub(verts[q].u, verts[p].u), t)), std::move(common)};
          cut.tight.set(bit);
          next.push_back(std::move(cut));
        }
      }
    }
    verts = std::move(next);
  }
  std::vector<RatVector> out;
  out.reserve(verts.size());
  for (auto& v : verts) out.push_back(std::move(v.u));
  return out;
}

}  // namespace

VPoly vertices(const HPoly& poly) {
  const std::size_t n = poly.dim();
  LinearProgram lp(poly);
  if (!lp.feasible()) throw InfeasibleError("vertices: empty polyhedron");
  RatVector lo_x(n);
  RatVector hi_x(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (Sense s : {Sense::Maximize, Sense::Minimize}) {
      const LPResult r = lp.solve(unit_vector(n, j), s);
      if (r.status == LPStatus::Unbounded) {
        throw UnboundedError("vertices: unbounded along ray " + to_string(r.ray));
      }
      (s == Sense::Maximize ? hi_x : lo_x)[j] = r.optimum;
    }
  }
  const std::vector<Constraint> eqs = affine_hull(poly);
  const AffineChart chart = affine_chart(eqs, n);
  const std::size_t k = chart.dim();

  VPoly out(n);
  if (k == 0) {
    out.add_point(chart.origin);
    return out;
  }
  std::vector<Constraint> rows;
  for (const auto& r : poly.inequalities()) {
    Constraint c;
    c.coeffs.resize(k);
    for (std::size_t i = 0; i < k; ++i) c.coeffs[i] = dot(r.coeffs, chart.basis[i]);
    c.rhs = r.rhs - dot(r.coeffs, chart.origin);
    if (is_zero(c.coeffs)) continue;
    rows.push_back(std::move(c));
  }
  RatVector lo(k);
  RatVector hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    lo[i] = lo_x[chart.free_coords[i]];
    hi[i] = hi_x[chart.free_coords[i]];
  }
  std::vector<RatVector> points;
  for (auto& u : double_description(k, rows, lo, hi)) points.push_back(chart.lift(u));
  std::sort(points.begin(), points.end(), lex_less);
  for (auto& p : points) out.add_point(std::move(p));
  return out;
}

HPoly hull(const VPoly& points) {
  if (points.empty()) throw InputError("hull: empty point set");
  const std::size_t n = points.dim();
  const RatVector& p0 = points.points().front();
  RatMatrix diffs;
  for (const auto& p : points.points()) diffs.push_back(sub(p, p0));
  RatMatrix aug;
  for (auto& c : null_space(diffs, n)) {
    const Rational rhs = dot(c, p0);
    c.push_back(rhs);
    aug.push_back(std::move(c));
  }
  std::vector<Constraint> eqs;
  for (const auto& row : rref(std::move(aug), n).rows) {
    Constraint c;
    c.coeffs.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    c.rhs = row[n];
    eqs.push_back(std::move(c));
  }
  const AffineChart chart = affine_chart(eqs, n);
  const std::size_t k = chart.dim();
  HPoly out(n);
  if (k > 0) {
    std::vector<RatVector> us;
    RatVector centroid = zero_vector(k);
    for (const auto& p : points.points()) {
      us.push_back(chart.chart(p));
      centroid = add(centroid, us.back());
    }
    centroid = scaled(centroid, Rational(1) / Rational(static_cast<long>(us.size())));
    // Facets of conv(U) are the vertices of the polar {a : a·(u - c) <= 1}.
    HPoly polar(k);
    for (const auto& u : us) polar.add_inequality(sub(u, centroid), Rational(1));
    std::vector<Constraint> facets;
    const VPoly polar_vertices = vertices(polar);
    for (const auto& a : polar_vertices.points()) {
      Constraint f;
      f.coeffs = zero_vector(n);
      for (std::size_t i = 0; i < k; ++i) f.coeffs[chart.free_coords[i]] = a[i];
      f.rhs = 1 + dot(a, centroid);
      facets.push_back(normalized(std::move(f)));
    }
    std::sort(facets.begin(), facets.end(), row_less);
    for (auto& f : facets) out.add_inequality(std::move(f));
  }
  for (auto& e : eqs) out.add_equation(std::move(e));
  return out;
}

std::optional<RatVector> find_escape(const HPoly& inner, const HPoly& outer) {
  if (inner.dim() != outer.dim()) throw InputError("find_escape: dimension mismatch");
  LinearProgram lp(inner);
  if (!lp.feasible()) return std::nullopt;
  for (const auto& r : outer.inequalities()) {
    if (auto x = escape_from(lp.solve(r.coeffs, Sense::Maximize), r.coeffs, r.rhs)) return x;
  }
  for (const auto& r : outer.equations()) {
    if (auto x = escape_from(lp.solve(r.coeffs, Sense::Maximize), r.coeffs, r.rhs)) return x;
    const RatVector neg = scaled(r.coeffs, Rational(-1));
    if (auto x = escape_from(lp.solve(neg, Sense::Maximize), neg, -r.rhs)) return x;
  }
  return std::nullopt;
}

std::optional<RatVector> find_escape(const VPoly& inner, const HPoly& outer) {
  if (inner.dim() != outer.dim()) throw InputError("find_escape: dimension mismatch");
  for (const auto& p : inner.points()) {
    if (!outer.contains(p)) return p;
  }
  return std::nullopt;
}

namespace {

EqualityCheck both_ways(std::optional<RatVector> first, const auto& second_fn) {
  if (first) return {false, std::move(first)};
  if (auto w = second_fn()) return {false, std::move(w)};
  return {true, std::nullopt};
}

}  // namespace

EqualityCheck poly_equal(const HPoly& a, const HPoly& b) {
  if (a.dim() != b.dim()) throw InputError("poly_equal: dimension mismatch");
  return both_ways(find_escape(a, b), [&] { return find_escape(b, a); });
}

EqualityCheck poly_equal(const HPoly& a, const VPoly& b) {
  if (a.dim() != b.dim()) throw InputError("poly_equal: dimension mismatch");
  if (b.empty()) return both_ways(feasible_point(a), [] { return std::optional<RatVector>{}; });
  return both_ways(find_escape(b, a), [&] { return find_escape(a, hull(b)); });
}

EqualityCheck poly_equal(const VPoly& a, const HPoly& b) { return poly_equal(b, a); }

EqualityCheck poly_equal(const VPoly& a, const VPoly& b) {
  if (a.dim() != b.dim()) throw InputError("poly_equal: dimension mismatch");
  if (a.empty() || b.empty()) {
    if (a.empty() && b.empty()) return {true, std::nullopt};
    return {false, a.empty() ? b.points().front() : a.points().front()};
  }
  return both_ways(find_escape(a, hull(b)), [&] { return find_escape(b, hull(a)); });
}

bool is_vertex(const VPoly& points, std::size_t index) {
  const std::size_t m = points.count();
  const std::size_t n = points.dim();
  if (index >= m) throw InputError("is_vertex: index out of range");
  if (m == 1) return true;
  // Feasibility of point = sum_j lambda_j p_j over the other points.
  HPoly combo(m - 1);
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < m; ++j) {
    if (j != index) others.push_back(j);
  }
  for (std::size_t t = 0; t < others.size(); ++t) combo.add_inequality(scaled(unit_vector(m - 1, t), Rational(-1)), 0);
  RatVector ones(m - 1, Rational(1));
  combo.add_equation(ones, 1);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector row(m - 1);
    for (std::size_t t = 0; t < others.size(); ++t) row[t] = points.points()[others[t]][i];
    combo.add_equation(std::move(row), points.points()[index][i]);
  }
  return !feasible_point(combo).has_value();
}

}  // namespace extform
