#include "extform/lp.hpp"

#include <limits>
#include <utility>

#include "extform/errors.hpp"

namespace extform {

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal:
      return "optimal";
    case LPStatus::Infeasible:
      return "infeasible";
    case LPStatus::Unbounded:
      return "unbounded";
  }
  return "?";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau over the standard form M' z = h', z >= 0, where the rows of
// M' are the (sign-normalized) rows of the input. The last row holds reduced
// costs; the last column holds the right-hand side.
struct Tableau {
  std::vector<RatVector> cells;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  std::size_t rows() const { return basis.size(); }
  RatVector& objective() { return cells.back(); }
  const RatVector& objective() const { return cells.back(); }
  const Rational& rhs(std::size_t r) const { return cells[r][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    RatVector& pr = cells[r];
    const Rational inv = 1 / pr[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols; ++j) {
      if (sgn(pr[j]) != 0) {
        pr[j] *= inv;
        nz.push_back(j);
      }
    }
    Rational f;
    Rational tmp;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i == r || sgn(cells[i][c]) == 0) continue;
      f = cells[i][c];
      RatVector& row = cells[i];
      for (auto j : nz) {
        tmp = f * pr[j];
        row[j] -= tmp;
      }
    }
    basis[r] = c;
  }

  void load_objective(const RatVector& costs) {
    RatVector& obj = objective();
    for (std::size_t j = 0; j < cols; ++j) obj[j] = costs[j];
    obj[cols] = 0;
    Rational tmp;
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = costs[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) {
        if (sgn(cells[i][j]) == 0) continue;
        tmp = cb * cells[i][j];
        obj[j] -= tmp;
      }
    }
  }

  // Runs Bland's rule to optimality. Returns kNone when optimal, otherwise
  // the entering column that certified unboundedness.
  std::size_t run(const std::vector<bool>& blocked) {
    for (;;) {
      const RatVector& obj = objective();
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!blocked[j] && sgn(obj[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return kNone;
      std::size_t leave = kNone;
      Rational best;
      Rational ratio;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (sgn(cells[i][enter]) <= 0) continue;
        ratio = cells[i][cols] / cells[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return enter;
      pivot(leave, enter);
    }
  }

  Rational value_of(std::size_t col) const {
    for (std::size_t i = 0; i < rows(); ++i) {
      if (basis[i] == col) return rhs(i);
    }
    return Rational(0);
  }
};

struct RowRef {
  bool is_eq;
  std::size_t index;  // into poly.inequalities() or poly.equations()
};

}  // namespace

struct LinearProgram::Impl {
  HPoly poly;
  std::size_t n = 0;

  // Variable j is either nonnegative (its bound row -alpha x_j <= 0 was
  // absorbed into the column) or free (split into two columns).
  std::vector<std::size_t> pos_col;
  std::vector<std::size_t> neg_col;  // kNone for nonnegative variables
  std::vector<std::size_t> bound_row;  // kNone for free variables
  std::vector<Rational> bound_alpha;

  std::vector<RowRef> rows;
  std::vector<int> sign;  // row normalization so that h' >= 0
  std::vector<std::size_t> init_col;
  std::size_t first_slack = 0;
  std::size_t first_art = 0;

  Tableau tab;
  bool is_feasible = false;
  RatVector farkas;  // full (ineq, eq) multipliers when infeasible

  explicit Impl(const HPoly& p) : poly(p), n(p.dim()) { build(); }

  const Constraint& row(const RowRef& r) const {
    return r.is_eq ? poly.equations()[r.index] : poly.inequalities()[r.index];
  }

  void build();
  RatVector full_dual(const RatVector& v, const RatVector& costs_x) const;
  RatVector point_from(const Tableau& t) const;
};

void LinearProgram::Impl::build() {
  const auto& ineqs = poly.inequalities();
  const auto& eqs = poly.equations();

  bound_row.assign(n, kNone);
  bound_alpha.assign(n, Rational(0));
  std::vector<bool> absorbed(ineqs.size(), false);
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (sgn(ineqs[i].rhs) != 0) continue;
    std::size_t nz = kNone;
    bool single = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(ineqs[i].coeffs[j]) == 0) continue;
      if (nz != kNone) {
        single = false;
        break;
      }
      nz = j;
    }
    if (!single || nz == kNone || sgn(ineqs[i].coeffs[nz]) >= 0 || bound_row[nz] != kNone) continue;
    bound_row[nz] = i;
    bound_alpha[nz] = -ineqs[i].coeffs[nz];
    absorbed[i] = true;
  }

  std::size_t cols = 0;
  pos_col.assign(n, kNone);
  neg_col.assign(n, kNone);
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (bound_row[j] == kNone) neg_col[j] = cols++;
  }
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (!absorbed[i]) rows.push_back({false, i});
  }
  for (std::size_t i = 0; i < eqs.size(); ++i) rows.push_back({true, i});

  first_slack = cols;
  std::size_t n_slack = 0;
  for (const auto& r : rows) n_slack += r.is_eq ? 0 : 1;
  first_art = first_slack + n_slack;

  sign.assign(rows.size(), 1);
  std::size_t n_art = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (sgn(row(rows[r]).rhs) < 0) sign[r] = -1;
    if (rows[r].is_eq || sign[r] < 0) ++n_art;
  }
  cols = first_art + n_art;

  tab.cols = cols;
  tab.cells.assign(rows.size() + 1, zero_vector(cols + 1));
  tab.basis.assign(rows.size(), kNone);
  init_col.assign(rows.size(), kNone);
  std::size_t slack = first_slack;
  std::size_t art = first_art;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Constraint& c = row(rows[r]);
    RatVector& cells = tab.cells[r];
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(c.coeffs[j]) == 0) continue;
      cells[pos_col[j]] = sign[r] * c.coeffs[j];
      if (neg_col[j] != kNone) cells[neg_col[j]] = -sign[r] * c.coeffs[j];
    }
    cells[cols] = sign[r] * c.rhs;
    if (!rows[r].is_eq) {
      cells[slack] = sign[r];
      if (sign[r] > 0) init_col[r] = slack;
      ++slack;
    }
    if (init_col[r] == kNone) {
      cells[art] = 1;
      init_col[r] = art++;
    }
    tab.basis[r] = init_col[r];
  }

  std::vector<bool> blocked(cols, false);
  if (n_art == 0) {
    is_feasible = true;
    return;
  }

  RatVector phase1(cols, Rational(0));
  for (std::size_t j = first_art; j < cols; ++j) phase1[j] = -1;
  tab.load_objective(phase1);
  if (tab.run(blocked) != kNone) throw InvariantError("phase one reported unbounded");

  // objective()[cols] holds minus the phase-one optimum sum(-art).
  if (sgn(tab.objective()[cols]) != 0) {
    is_feasible = false;
    RatVector v(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational u = phase1[init_col[r]] - tab.objective()[init_col[r]];
      v[r] = sign[r] * u;
    }
    farkas = full_dual(v, zero_vector(n));
    return;
  }

  is_feasible = true;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (tab.basis[r] < first_art) continue;
    for (std::size_t j = 0; j < first_art; ++j) {
      if (sgn(tab.cells[r][j]) != 0) {
        tab.pivot(r, j);
        break;
      }
    }
  }
}

// Expands multipliers on the tableau rows to all rows of the polyhedron,
// recovering the multipliers of absorbed bound rows from column balance.
RatVector LinearProgram::Impl::full_dual(const RatVector& v, const RatVector& costs_x) const {
  const auto& ineqs = poly.inequalities();
  RatVector full = zero_vector(ineqs.size() + poly.equations().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t idx = rows[r].is_eq ? ineqs.size() + rows[r].index : rows[r].index;
    full[idx] = v[r];
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (bound_row[j] == kNone) continue;
    Rational col_sum(0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational& a = row(rows[r]).coeffs[j];
      if (sgn(a) != 0 && sgn(v[r]) != 0) col_sum += v[r] * a;
    }
    full[bound_row[j]] = (col_sum - costs_x[j]) / bound_alpha[j];
  }
  return full;
}

RatVector LinearProgram::Impl::point_from(const Tableau& t) const {
  RatVector x = zero_vector(n);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const std::size_t c = t.basis[r];
    for (std::size_t j = 0; j < n; ++j) {
      if (pos_col[j] == c) x[j] += t.rhs(r);
      if (neg_col[j] == c) x[j] -= t.rhs(r);
    }
  }
  return x;
}

LinearProgram::LinearProgram(const HPoly& poly) : impl_(std::make_unique<Impl>(poly)) {}
LinearProgram::~LinearProgram() = default;
LinearProgram::LinearProgram(LinearProgram&&) noexcept = default;
LinearProgram& LinearProgram::operator=(LinearProgram&&) noexcept = default;

bool LinearProgram::feasible() const { return impl_->is_feasible; }

LPResult LinearProgram::solve(const RatVector& objective, Sense sense) const {
  const Impl& p = *impl_;
  if (objective.size() != p.n) {
    throw InputError("lp_solve: objective has length " + std::to_string(objective.size()) + ", polyhedron dim " +
                     std::to_string(p.n));
  }
  LPResult out;
  if (!p.is_feasible) {
    out.status = LPStatus::Infeasible;
    out.dual = p.farkas;
    return out;
  }
  const int s = sense == Sense::Maximize ? 1 : -1;
  RatVector cx(p.n);
  for (std::size_t j = 0; j < p.n; ++j) cx[j] = s * objective[j];

  Tableau tab = p.tab;
  RatVector costs(tab.cols, Rational(0));
  for (std::size_t j = 0; j < p.n; ++j) {
    costs[p.pos_col[j]] = cx[j];
    if (p.neg_col[j] != kNone) costs[p.neg_col[j]] = -cx[j];
  }
  tab.load_objective(costs);
  std::vector<bool> blocked(tab.cols, false);
  for (std::size_t j = p.first_art; j < tab.cols; ++j) blocked[j] = true;

  const std::size_t enter = tab.run(blocked);
  out.primal_point = p.point_from(tab);
  if (enter != kNone) {
    out.status = LPStatus::Unbounded;
    RatVector dir(tab.cols, Rational(0));
    dir[enter] = 1;
    for (std::size_t r = 0; r < tab.rows(); ++r) dir[tab.basis[r]] = -tab.cells[r][enter];
    out.ray = zero_vector(p.n);
    for (std::size_t j = 0; j < p.n; ++j) {
      out.ray[j] = dir[p.pos_col[j]];
      if (p.neg_col[j] != kNone) out.ray[j] -= dir[p.neg_col[j]];
    }
    return out;
  }
  out.status = LPStatus::Optimal;
  const Rational z = -tab.objective()[tab.cols];
  out.optimum = s * z;
  RatVector v(p.rows.size());
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    const Rational u = costs[p.init_col[r]] - tab.objective()[p.init_col[r]];
    v[r] = p.sign[r] * u;
  }
  out.dual = p.full_dual(v, cx);
  return out;
}

LPResult lp_solve(const RatVector& objective, Sense sense, const HPoly& poly) {
  return LinearProgram(poly).solve(objective, sense);
}

std::optional<RatVector> feasible_point(const HPoly& poly) {
  LPResult r = lp_solve(zero_vector(poly.dim()), Sense::Maximize, poly);
  if (r.status == LPStatus::Infeasible) return std::nullopt;
  return r.primal_point;
}

bool certificate_holds(const LPResult& result, const RatVector& objective, Sense sense, const HPoly& poly) {
  const auto& ineqs = poly.inequalities();
  const auto& eqs = poly.equations();
  const std::size_t n = poly.dim();
  const int s = sense == Sense::Maximize ? 1 : -1;
  RatVector cx(n);
  for (std::size_t j = 0; j < n; ++j) cx[j] = s * objective[j];

  auto combination = [&](const RatVector& mult, RatVector& lhs, Rational& rhs) {
    if (mult.size() != ineqs.size() + eqs.size()) return false;
    lhs = zero_vector(n);
    rhs = 0;
    for (std::size_t i = 0; i < mult.size(); ++i) {
      const bool eq = i >= ineqs.size();
      if (!eq && sgn(mult[i]) < 0) return false;
      const Constraint& c = eq ? eqs[i - ineqs.size()] : ineqs[i];
      lhs = add(lhs, scaled(c.coeffs, mult[i]));
      rhs += mult[i] * c.rhs;
    }
    return true;
  };

  RatVector lhs;
  Rational rhs;
  switch (result.status) {
    case LPStatus::Optimal:
      if (!poly.contains(result.primal_point)) return false;
      if (dot(objective, result.primal_point) != result.optimum) return false;
      if (!combination(result.dual, lhs, rhs)) return false;
      return lhs == cx && rhs == s * result.optimum;
    case LPStatus::Infeasible:
      if (!combination(result.dual, lhs, rhs)) return false;
      return is_zero(lhs) && sgn(rhs) < 0;
    case LPStatus::Unbounded:
      if (!poly.contains(result.primal_point) || result.ray.size() != n) return false;
      for (const auto& c : ineqs) {
        if (sgn(dot(c.coeffs, result.ray)) > 0) return false;
      }
      for (const auto& c : eqs) {
        if (sgn(dot(c.coeffs, result.ray)) != 0) return false;
      }
      return sgn(dot(cx, result.ray)) > 0;
  }
  return false;
}

}  // namespace extform
