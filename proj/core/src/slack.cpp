#include "extform/slack.hpp"

#include "extform/constructions.hpp"
#include "extform/errors.hpp"
#include "extform/kernel.hpp"
#include "extform/lp.hpp"

namespace extform {

namespace {

std::string row_name(const HPoly& hrep, std::size_t i) {
  const std::string& label = hrep.inequalities()[i].label;
  return label.empty() ? "row" + std::to_string(i + 1) : label;
}

std::string point_name(const VPoly& points, std::size_t j) {
  const std::string& label = points.labels()[j];
  return label.empty() ? to_string(points.points()[j]) : label;
}

// aff(P) as x0 + L u together with A L, the linear part of the slack map in
// chart coordinates.
struct SlackGeometry {
  AffineChart chart;
  RatMatrix al;  // m x k
  RatVector s0;  // b - A x0
};

SlackGeometry slack_geometry(const HPoly& hrep) {
  SlackGeometry g;
  g.chart = affine_chart(affine_hull(hrep), hrep.dim());
  const std::size_t k = g.chart.dim();
  for (const auto& row : hrep.inequalities()) {
    RatVector r(k);
    for (std::size_t j = 0; j < k; ++j) r[j] = dot(row.coeffs, g.chart.basis[j]);
    g.al.push_back(std::move(r));
    g.s0.push_back(row.rhs - dot(row.coeffs, g.chart.origin));
  }
  if (rank(g.al) != k) {
    throw ValidationError("slack_map: b - Ax is not injective on aff(P) (rank " + std::to_string(rank(g.al)) +
                          " < dim " + std::to_string(k) + ")");
  }
  return g;
}

std::vector<Constraint> slack_space(const SlackGeometry& g, std::size_t m) {
  const std::size_t k = g.chart.dim();
  // W (A L) = 0 for every row w of W; then phi(aff P) = {s : W s = W s0}.
  RatMatrix aug;
  for (auto& w : null_space(transpose(g.al, k), m)) {
    const Rational rhs = dot(w, g.s0);
    w.push_back(rhs);
    aug.push_back(std::move(w));
  }
  std::vector<Constraint> out;
  for (const auto& row : rref(std::move(aug), m).rows) {
    Constraint c;
    c.coeffs.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(m));
    c.rhs = row[m];
    out.push_back(std::move(c));
  }
  return out;
}

// M with M (A L) = identity, supported on a set of independent rows of A L.
RatMatrix left_inverse(const RatMatrix& al, std::size_t k) {
  const std::size_t m = al.size();
  RatMatrix out = zero_matrix(k, m);
  if (k == 0) return out;
  const std::vector<std::size_t> rows = rref(transpose(al, k), m).pivots;
  RatMatrix aug;
  for (std::size_t r = 0; r < k; ++r) {
    RatVector row = al[rows[r]];
    const RatVector e = unit_vector(k, r);
    row.insert(row.end(), e.begin(), e.end());
    aug.push_back(std::move(row));
  }
  // rref([B | I]) = [I | B^{-1}] for B = (A L) restricted to `rows`.
  const RowEchelon e = rref(std::move(aug), k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < k; ++r) out[i][rows[r]] = e.rows[i][k + r];
  }
  return out;
}

HPoly pointed(const HPoly& q) {
  RatMatrix rows;
  for (const auto& r : q.inequalities()) rows.push_back(r.coeffs);
  for (const auto& r : q.equations()) rows.push_back(r.coeffs);
  HPoly out = q;
  for (auto& l : null_space(rows, q.dim())) out.add_equation(std::move(l), 0, "lineality");
  return out;
}

RatVector lexmin_lift(const HPoly& q, const AffineMap& p, const RatVector& x) {
  HPoly fiber = q;
  for (std::size_t i = 0; i < p.out_dim(); ++i) fiber.add_equation(p.matrix()[i], x[i] - p.offset()[i]);
  for (std::size_t j = 0; j < q.dim(); ++j) {
    const LPResult r = lp_solve(unit_vector(q.dim(), j), Sense::Minimize, fiber);
    if (r.status == LPStatus::Infeasible) throw InvariantError("extension_to_factorization: point has no lift");
    if (r.status == LPStatus::Unbounded) continue;
    fiber.add_equation(unit_vector(q.dim(), j), r.optimum);
  }
  auto y = feasible_point(fiber);
  if (!y) throw InvariantError("extension_to_factorization: lift vanished");
  return *y;
}

}  // namespace

AffineMap slack_map(const HPoly& hrep) {
  slack_geometry(hrep);
  RatMatrix m;
  RatVector b;
  for (const auto& row : hrep.inequalities()) {
    m.push_back(scaled(row.coeffs, Rational(-1)));
    b.push_back(row.rhs);
  }
  return AffineMap(std::move(m), std::move(b), hrep.dim());
}

bool is_binding(const HPoly& hrep) {
  LinearProgram lp(hrep);
  if (!lp.feasible()) throw InfeasibleError("is_binding: empty polyhedron");
  for (const auto& row : hrep.inequalities()) {
    const LPResult r = lp.solve(row.coeffs, Sense::Maximize);
    if (r.status != LPStatus::Optimal || r.optimum != row.rhs) return false;
  }
  return true;
}

SlackMatrix slack_matrix(const HPoly& hrep, const VPoly& points) {
  if (hrep.dim() != points.dim()) throw InputError("slack_matrix: dimension mismatch");
  SlackMatrix out;
  const std::size_t m = hrep.size();
  for (std::size_t i = 0; i < m; ++i) out.row_labels.push_back(row_name(hrep, i));
  for (std::size_t j = 0; j < points.count(); ++j) {
    out.col_labels.push_back(point_name(points, j));
    for (const auto& e : hrep.equations()) {
      if (dot(e.coeffs, points.points()[j]) != e.rhs) {
        throw InputError("slack_matrix: point outside polytope: " + out.col_labels[j] + " violates an equation");
      }
    }
  }
  out.entries = zero_matrix(m, points.count());
  for (std::size_t i = 0; i < m; ++i) {
    const Constraint& row = hrep.inequalities()[i];
    for (std::size_t j = 0; j < points.count(); ++j) {
      out.entries[i][j] = row.rhs - dot(row.coeffs, points.points()[j]);
      if (sgn(out.entries[i][j]) < 0) {
        throw InputError("slack_matrix: point outside polytope: entry (" + out.row_labels[i] + ", " +
                         out.col_labels[j] + ") = " + to_string(out.entries[i][j]));
      }
    }
  }
  out.affine_space = slack_space(slack_geometry(hrep), m);
  return out;
}

FactorizationCheck verify_factorization(const SlackMatrix& slack, const NonnegFactorization& fact) {
  FactorizationCheck out;
  const std::size_t m = slack.rows();
  const std::size_t n = slack.cols();
  const std::size_t f = fact.inner();
  if (fact.t.size() != m) {
    out.detail = "T has " + std::to_string(fact.t.size()) + " rows, expected " + std::to_string(m);
    return out;
  }
  for (const auto& row : fact.t) {
    if (row.size() != f) {
      out.detail = "T has a row of length " + std::to_string(row.size()) + ", expected " + std::to_string(f);
      return out;
    }
  }
  for (const auto& row : fact.s) {
    if (row.size() != n) {
      out.detail = "S has a row of length " + std::to_string(row.size()) + ", expected " + std::to_string(n);
      return out;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < f; ++l) {
      if (sgn(fact.t[i][l]) < 0) {
        out.position = std::pair(i, l);
        out.detail = "T(" + std::to_string(i + 1) + "," + std::to_string(l + 1) + ") is negative";
        return out;
      }
    }
  }
  for (std::size_t l = 0; l < f; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(fact.s[l][j]) < 0) {
        out.position = std::pair(l, j);
        out.detail = "S(" + std::to_string(l + 1) + "," + std::to_string(j + 1) + ") is negative";
        return out;
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational v(0);
      for (std::size_t l = 0; l < f; ++l) v += fact.t[i][l] * fact.s[l][j];
      if (v != slack.entries[i][j]) {
        out.position = std::pair(i, j);
        out.detail = "(TS)(" + slack.row_labels[i] + "," + slack.col_labels[j] + ") = " + to_string(v) +
                     " but the slack is " + to_string(slack.entries[i][j]);
        return out;
      }
    }
  }
  out.valid = true;
  out.detail = "T S = slack matrix";
  return out;
}

Extension factorization_to_extension(const NonnegFactorization& fact, const SlackMatrix& slack, const HPoly& original) {
  if (original.size() != slack.rows()) throw InputError("factorization_to_extension: row count differs from original");
  const FactorizationCheck check = verify_factorization(slack, fact);
  if (!check.valid) throw ValidationError("factorization_to_extension: " + check.detail);
  const SlackGeometry g = slack_geometry(original);
  const std::size_t m = slack.rows();
  const std::size_t f = fact.inner();
  const std::size_t k = g.chart.dim();
  const std::size_t n = original.dim();

  HPoly q(f);
  for (std::size_t l = 0; l < f; ++l) {
    RatVector row = zero_vector(f);
    row[l] = -1;
    q.add_inequality(std::move(row), 0, "lambda" + std::to_string(l + 1) + ">=0");
  }
  for (std::size_t e = 0; e < slack.affine_space.size(); ++e) {
    const Constraint& w = slack.affine_space[e];
    RatVector row = zero_vector(f);
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(w.coeffs[i]) == 0) continue;
      for (std::size_t l = 0; l < f; ++l) row[l] += w.coeffs[i] * fact.t[i][l];
    }
    q.add_equation(std::move(row), w.rhs, "slack-space" + std::to_string(e + 1));
  }

  // x = x0 + L M (s0 - T lambda).
  const RatMatrix lm = mat_mul(transpose(g.chart.basis, n), left_inverse(g.al, k));  // n x m
  RatMatrix proj = zero_matrix(n, f);
  RatVector offset = g.chart.origin;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(lm[r][i]) == 0) continue;
      offset[r] += lm[r][i] * g.s0[i];
      for (std::size_t l = 0; l < f; ++l) proj[r][l] -= lm[r][i] * fact.t[i][l];
    }
  }
  return {std::move(q), AffineMap(std::move(proj), std::move(offset), f), "slack-extension"};
}

NonnegFactorization extension_to_factorization(const Extension& ext, const HPoly& hrep, const VPoly& points) {
  check_extension(ext);
  if (!is_binding(hrep)) throw ValidationError("extension_to_factorization: description is not binding");
  const VerifyReport rep = verify_extension(hrep, points, ext);
  if (!rep.passed) throw ValidationError("extension_to_factorization: extension not verified: " + rep.detail);

  const HPoly q = pointed(ext.q);
  const AffineMap& p = ext.proj;
  const std::size_t qm = q.size();
  LinearProgram lp(q);

  NonnegFactorization fact;
  for (const auto& row : hrep.inequalities()) {
    const LPResult r = lp.solve(p.pullback(row.coeffs), Sense::Maximize);
    if (r.status != LPStatus::Optimal) {
      throw InvariantError("extension_to_factorization: row LP is " + std::string(to_string(r.status)));
    }
    fact.t.emplace_back(r.dual.begin(), r.dual.begin() + static_cast<std::ptrdiff_t>(qm));
  }
  fact.s = zero_matrix(qm, points.count());
  for (std::size_t j = 0; j < points.count(); ++j) {
    const RatVector y = lexmin_lift(q, p, points.points()[j]);
    for (std::size_t l = 0; l < qm; ++l) {
      fact.s[l][j] = q.inequalities()[l].rhs - dot(q.inequalities()[l].coeffs, y);
    }
  }
  const FactorizationCheck check = verify_factorization(slack_matrix(hrep, points), fact);
  if (!check.valid) throw InvariantError("extension_to_factorization: " + check.detail);
  return fact;
}

}  // namespace extform
