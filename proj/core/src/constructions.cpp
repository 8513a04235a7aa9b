#include "extform/constructions.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "extform/errors.hpp"
#include "extform/kernel.hpp"
#include "extform/lp.hpp"
#include "extform/zoo.hpp"

namespace extform {

namespace {

constexpr std::size_t kMaxNetworkCheckWires = 24;
constexpr std::size_t kMaxColoringN = 12;
constexpr std::size_t kMaxColoringK = 3;
constexpr std::size_t kColoringPool = 256;
constexpr std::uint32_t kColoringSeed = 20110315;

RatVector neg_unit(std::size_t n, std::size_t i) {
  RatVector v = zero_vector(n);
  v[i] = -1;
  return v;
}

std::string wire_pair(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

bool bounded_nonempty(const HPoly& p) {
  LinearProgram lp(p);
  if (!lp.feasible()) return false;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    for (Sense s : {Sense::Maximize, Sense::Minimize}) {
      if (lp.solve(unit_vector(p.dim(), j), s).status != LPStatus::Optimal) return false;
    }
  }
  return true;
}

}  // namespace

bool SortingNetwork::sorts_all_binary_inputs() const {
  if (wires > kMaxNetworkCheckWires) throw SizeError("sorting network check: more than 24 wires");
  for (const auto& [i, j] : comparators) {
    if (i >= j || j >= wires) return false;
  }
  const std::uint64_t limit = std::uint64_t{1} << wires;
  for (std::uint64_t input = 0; input < limit; ++input) {
    std::uint64_t v = input;
    for (const auto& [i, j] : comparators) {
      const bool bi = ((v >> i) & 1U) != 0;
      const bool bj = ((v >> j) & 1U) != 0;
      if (bi && !bj) v ^= (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
    }
    // Sorted means all zeros on low wires, all ones on high wires.
    const std::uint64_t ones = static_cast<std::uint64_t>(__builtin_popcountll(v));
    const std::uint64_t expect = ones == 0 ? 0 : ((std::uint64_t{1} << ones) - 1) << (wires - ones);
    if (v != expect) return false;
  }
  return true;
}

SortingNetwork bubble_network(std::size_t n) {
  if (n < 1) throw InputError("bubble_network: n must be >= 1");
  SortingNetwork net{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) net.comparators.emplace_back(i, j);
  }
  return net;
}

SortingNetwork batcher_network(std::size_t n) {
  if (n < 1) throw InputError("batcher_network: n must be >= 1");
  SortingNetwork net{n, {}};
  for (std::size_t p = 1; p < n; p <<= 1) {
    for (std::size_t k = p; k >= 1; k >>= 1) {
      for (std::size_t j = k % p; j + k < n; j += 2 * k) {
        for (std::size_t i = 0; i < k && i + j + k < n; ++i) {
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) net.comparators.emplace_back(i + j, i + j + k);
        }
      }
    }
  }
  return net;
}

std::string DPNetwork::node_label(std::size_t v) const {
  const Node& node = nodes.at(v);
  if (node.is_sink) return "t";
  if (v == 0) return "s";
  return "(" + std::to_string(node.item) + "," + std::to_string(node.weight) + ")";
}

std::string DPNetwork::arc_label(std::size_t a) const {
  return node_label(arcs.at(a).tail) + "->" + node_label(arcs.at(a).head);
}

DPNetwork knapsack_network(const std::vector<long>& weights, long capacity) {
  if (capacity < 0 || std::any_of(weights.begin(), weights.end(), [](long w) { return w < 0; })) {
    throw InputError("knapsack_network: weights and capacity must be nonnegative");
  }
  const std::size_t n = weights.size();
  // reachable[i][omega] for item levels 0..n; level 0 holds only s = (0, 0).
  std::vector<std::vector<bool>> reachable(n + 1, std::vector<bool>(static_cast<std::size_t>(capacity) + 1, false));
  reachable[0][0] = true;
  for (std::size_t i2 = 1; i2 <= n; ++i2) {
    for (std::size_t i = 0; i < i2; ++i) {
      for (long w = 0; w <= capacity; ++w) {
        const long w2 = w + weights[i2 - 1];
        if (reachable[i][static_cast<std::size_t>(w)] && w2 <= capacity) reachable[i2][static_cast<std::size_t>(w2)] = true;
      }
    }
  }
  DPNetwork net;
  net.weights = weights;
  net.capacity = capacity;
  std::map<std::pair<std::size_t, long>, std::size_t> id;
  for (std::size_t i = 0; i <= n; ++i) {
    for (long w = 0; w <= capacity; ++w) {
      if (!reachable[i][static_cast<std::size_t>(w)]) continue;
      id[{i, w}] = net.nodes.size();
      net.nodes.push_back({i, w, false});
    }
  }
  net.nodes.push_back({0, 0, true});
  for (std::size_t v = 0; v + 1 < net.nodes.size(); ++v) {
    const auto& tail = net.nodes[v];
    for (std::size_t i2 = tail.item + 1; i2 <= n; ++i2) {
      const long w2 = tail.weight + weights[i2 - 1];
      if (w2 > capacity) continue;
      net.arcs.push_back({v, id.at({i2, w2})});
    }
  }
  std::stable_sort(net.arcs.begin(), net.arcs.end(), [](const DPNetwork::Arc& a, const DPNetwork::Arc& b) {
    return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
  });
  for (std::size_t v = 0; v + 1 < net.nodes.size(); ++v) net.arcs.push_back({v, net.sink()});
  return net;
}

bool Coloring::rainbow(const std::vector<std::size_t>& nodes) const {
  std::vector<bool> seen(2 * k + 1, false);
  for (auto v : nodes) {
    const std::size_t c = color.at(v);
    if (seen.at(c)) return false;
    seen[c] = true;
  }
  return true;
}

Extension simplex_extension(const VPoly& points) {
  if (points.empty()) throw InputError("simplex_extension: empty point set");
  const std::size_t m = points.count();
  RatMatrix proj = zero_matrix(points.dim(), m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < points.dim(); ++i) proj[i][j] = points.points()[j][i];
  }
  return {zoo::simplex_hrep(m), AffineMap(std::move(proj), zero_vector(points.dim()), m),
          "simplex(" + std::to_string(m) + ")"};
}

Extension birkhoff_extension(std::size_t n) {
  HPoly q = zoo::birkhoff_hrep(n);
  RatMatrix m = zero_matrix(n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][i * n + j] = Rational(static_cast<long>(j + 1));
  }
  return {std::move(q), AffineMap(std::move(m), zero_vector(n), n * n), "birkhoff(" + std::to_string(n) + ")"};
}

Extension martin_spanning_tree_extension(std::size_t n) {
  if (n < 3) throw InputError("martin_spanning_tree_extension: n must be >= 3");
  const zoo::GraphEdgeIndex g(n);
  const std::size_t ne = g.size();
  // z_{v,w,u} over ordered triples of pairwise distinct nodes, lexicographic.
  std::vector<std::size_t> zid(n * n * n, 0);
  std::vector<std::string> znames;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) {
      for (std::size_t u = 0; u < n; ++u) {
        if (v == w || v == u || w == u) continue;
        zid[(v * n + w) * n + u] = ne + znames.size();
        znames.push_back("z" + std::to_string(v + 1) + "," + std::to_string(w + 1) + "," + std::to_string(u + 1));
      }
    }
  }
  auto z = [&](std::size_t v, std::size_t w, std::size_t u) { return zid[(v * n + w) * n + u]; };
  const std::size_t d = ne + znames.size();
  HPoly q(d);
  for (std::size_t e = 0; e < ne; ++e) q.add_inequality(neg_unit(d, e), 0, "x" + g.edge_label(e) + ">=0");
  for (std::size_t t = 0; t < znames.size(); ++t) q.add_inequality(neg_unit(d, ne + t), 0, znames[t] + ">=0");
  for (std::size_t e = 0; e < ne; ++e) {
    const auto [v, w] = g.edge(e);
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || u == w) continue;
      RatVector row = zero_vector(d);
      row[e] = 1;
      row[z(v, w, u)] = -1;
      row[z(w, v, u)] = -1;
      q.add_equation(std::move(row), 0, "split" + g.edge_label(e) + "@" + std::to_string(u + 1));
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) {
      if (v == w) continue;
      RatVector row = zero_vector(d);
      row[g.index(v, w)] = 1;
      for (std::size_t u = 0; u < n; ++u) {
        if (u != v && u != w) row[z(v, u, w)] = 1;
      }
      q.add_equation(std::move(row), 1, "path" + std::to_string(v + 1) + "->" + std::to_string(w + 1));
    }
  }
  RatVector all = zero_vector(d);
  for (std::size_t e = 0; e < ne; ++e) all[e] = 1;
  q.add_equation(std::move(all), Rational(static_cast<long>(n) - 1), "x(E)=" + std::to_string(n - 1));

  std::vector<std::size_t> keep(ne);
  for (std::size_t e = 0; e < ne; ++e) keep[e] = e;
  return {std::move(q), AffineMap::coordinate_projection(d, keep), "martin(" + std::to_string(n) + ")"};
}

Extension balas_union(const std::vector<HPoly>& parts) {
  if (parts.empty()) throw InputError("balas_union: no parts");
  const std::size_t n = parts.front().dim();
  const std::size_t q = parts.size();
  for (std::size_t i = 0; i < q; ++i) {
    if (parts[i].dim() != n) throw InputError("balas_union: part " + std::to_string(i + 1) + " has a different dim");
    if (!bounded_nonempty(parts[i])) {
      throw InputError("balas_union: part " + std::to_string(i + 1) + " is empty or unbounded");
    }
  }
  const std::size_t d = q * n + q;
  const std::size_t lambda0 = q * n;
  HPoly lifted(d);
  auto homogenized = [&](std::size_t i, const Constraint& r) {
    RatVector row = zero_vector(d);
    for (std::size_t j = 0; j < n; ++j) row[i * n + j] = r.coeffs[j];
    row[lambda0 + i] = -r.rhs;
    return row;
  };
  for (std::size_t i = 0; i < q; ++i) {
    const std::string tag = "P" + std::to_string(i + 1) + ":";
    for (const auto& r : parts[i].inequalities()) lifted.add_inequality(homogenized(i, r), 0, tag + r.label);
    for (const auto& r : parts[i].equations()) lifted.add_equation(homogenized(i, r), 0, tag + r.label);
  }
  for (std::size_t i = 0; i < q; ++i) {
    lifted.add_inequality(neg_unit(d, lambda0 + i), 0, "lambda" + std::to_string(i + 1) + ">=0");
  }
  RatVector sum = zero_vector(d);
  for (std::size_t i = 0; i < q; ++i) sum[lambda0 + i] = 1;
  lifted.add_equation(std::move(sum), 1, "sum(lambda)=1");

  RatMatrix m = zero_matrix(n, d);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < q; ++i) m[j][i * n + j] = 1;
  }
  return {std::move(lifted), AffineMap(std::move(m), zero_vector(n), d), "balas(" + std::to_string(q) + ")"};
}

Extension knapsack_flow_extension(const std::vector<long>& weights, long capacity) {
  const DPNetwork net = knapsack_network(weights, capacity);
  const std::size_t alpha = net.arcs.size();
  HPoly q(alpha);
  for (std::size_t a = 0; a < alpha; ++a) q.add_inequality(neg_unit(alpha, a), 0, "y[" + net.arc_label(a) + "]>=0");
  for (std::size_t v = 1; v < net.sink(); ++v) {
    RatVector row = zero_vector(alpha);
    for (std::size_t a = 0; a < alpha; ++a) {
      if (net.arcs[a].head == v) row[a] += 1;
      if (net.arcs[a].tail == v) row[a] -= 1;
    }
    q.add_equation(std::move(row), 0, "flow" + net.node_label(v));
  }
  RatVector out = zero_vector(alpha);
  for (std::size_t a = 0; a < alpha; ++a) {
    if (net.arcs[a].tail == net.source()) out[a] = 1;
  }
  q.add_equation(std::move(out), 1, "out(s)=1");

  const std::size_t n = weights.size();
  RatMatrix m = zero_matrix(n, alpha);
  for (std::size_t a = 0; a < alpha; ++a) {
    const auto& head = net.nodes[net.arcs[a].head];
    if (!head.is_sink) m[head.item - 1][a] = 1;
  }
  return {std::move(q), AffineMap(std::move(m), zero_vector(n), alpha), "knapsack"};
}

Extension sorting_network_extension(std::size_t n, const SortingNetwork& net) {
  if (n < 1 || net.wires != n) throw InputError("sorting_network_extension: network has the wrong number of wires");
  if (!net.sorts_all_binary_inputs()) throw InputError("sorting_network_extension: not a sorting network");
  const std::size_t r = net.comparators.size();
  const std::size_t d = (r + 1) * n;
  auto y = [n](std::size_t stage, std::size_t wire) { return stage * n + wire; };
  HPoly q(d);
  for (std::size_t s = 1; s <= r; ++s) {
    const auto [i, j] = net.comparators[s - 1];
    const std::string tag = "c" + std::to_string(s) + wire_pair(i, j);
    RatVector lo_i = zero_vector(d);
    lo_i[y(s, i)] = 1;
    lo_i[y(s - 1, i)] = -1;
    q.add_inequality(std::move(lo_i), 0, tag + ":min<=in_i");
    RatVector lo_j = zero_vector(d);
    lo_j[y(s, i)] = 1;
    lo_j[y(s - 1, j)] = -1;
    q.add_inequality(std::move(lo_j), 0, tag + ":min<=in_j");
    RatVector sum = zero_vector(d);
    sum[y(s, i)] = 1;
    sum[y(s, j)] = 1;
    sum[y(s - 1, i)] = -1;
    sum[y(s - 1, j)] = -1;
    q.add_equation(std::move(sum), 0, tag + ":sum");
    for (std::size_t u = 0; u < n; ++u) {
      if (u == i || u == j) continue;
      RatVector pass = zero_vector(d);
      pass[y(s, u)] = 1;
      pass[y(s - 1, u)] = -1;
      q.add_equation(std::move(pass), 0, tag + ":pass" + std::to_string(u + 1));
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    q.add_equation(unit_vector(d, y(r, u)), Rational(static_cast<long>(u + 1)), "out" + std::to_string(u + 1));
  }
  std::vector<std::size_t> keep(n);
  for (std::size_t u = 0; u < n; ++u) keep[u] = y(0, u);
  return {std::move(q), AffineMap::coordinate_projection(d, keep), "sortnet(" + std::to_string(n) + ")"};
}

VPoly colorful_matchings(std::size_t n, std::size_t k, const Coloring& coloring) {
  if (coloring.k != k || coloring.color.size() != n) throw InputError("colorful_matchings: coloring has the wrong shape");
  if (2 * k > n) throw InputError("colorful_matchings: 2k exceeds n");
  std::vector<bool> used(2 * k + 1, false);
  std::size_t distinct = 0;
  for (auto c : coloring.color) {
    if (c < 1 || c > 2 * k) throw InputError("colorful_matchings: color outside 1..2k");
    if (!used[c]) ++distinct;
    used[c] = true;
  }
  if (distinct != 2 * k) throw InputError("colorful_matchings: coloring must use exactly 2k colors");

  const zoo::GraphEdgeIndex g(n);
  const VPoly all = zoo::matching_vrep(n, k);
  VPoly out(g.size());
  for (std::size_t m = 0; m < all.count(); ++m) {
    std::vector<std::size_t> ends;
    for (std::size_t e = 0; e < g.size(); ++e) {
      if (all.points()[m][e] == 1) {
        ends.push_back(g.edge(e).first);
        ends.push_back(g.edge(e).second);
      }
    }
    if (coloring.rainbow(ends)) out.add_point(all.points()[m], all.labels()[m]);
  }
  return out;
}

bool certify_coloring_family(const ColoringFamily& family) {
  const auto subsets = zoo::subsets_by_size(family.n, 2 * family.k, 2 * family.k);
  for (const auto& c : family.colorings) {
    if (c.k != family.k || c.color.size() != family.n) return false;
  }
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    const bool any = std::any_of(family.colorings.begin(), family.colorings.end(),
                                 [&](const Coloring& c) { return c.rainbow(subsets[s]); });
    if (!any) return false;
    if (s < family.witness.size() && !family.colorings.at(family.witness[s]).rainbow(subsets[s])) return false;
  }
  return family.witness.size() == subsets.size();
}

ColoringFamily covering_coloring_family(std::size_t n, std::size_t k) {
  if (k < 1 || 2 * k > n) throw InputError("covering_coloring_family: need 1 <= k and 2k <= n");
  if (n > kMaxColoringN || k > kMaxColoringK) throw SizeError("covering_coloring_family: beyond n <= 12, k <= 3");
  const std::size_t colors = 2 * k;
  const auto subsets = zoo::subsets_by_size(n, colors, colors);

  ColoringFamily family;
  family.n = n;
  family.k = k;
  family.seed = kColoringSeed;
  family.witness.assign(subsets.size(), 0);
  std::vector<bool> covered(subsets.size(), false);
  std::size_t remaining = subsets.size();

  auto adopt = [&](Coloring c) {
    const std::size_t idx = family.colorings.size();
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      if (!covered[s] && c.rainbow(subsets[s])) {
        covered[s] = true;
        family.witness[s] = idx;
        --remaining;
      }
    }
    family.colorings.push_back(std::move(c));
  };

  if (n == colors) {
    Coloring id{k, {}};
    for (std::size_t v = 0; v < n; ++v) id.color.push_back(v + 1);
    adopt(std::move(id));
    return family;
  }

  std::mt19937 rng(kColoringSeed);
  std::vector<Coloring> pool;
  while (pool.size() < kColoringPool) {
    Coloring c{k, std::vector<std::size_t>(n)};
    std::vector<bool> used(colors + 1, false);
    std::size_t distinct = 0;
    for (auto& x : c.color) {
      x = 1 + static_cast<std::size_t>(rng() % colors);
      if (!used[x]) ++distinct;
      used[x] = true;
    }
    if (distinct == colors) pool.push_back(std::move(c));
  }
  // Greedy set cover over the pool; ties go to the lowest pool index.
  while (remaining > 0) {
    std::size_t best = pool.size();
    std::size_t best_gain = 0;
    for (std::size_t p = 0; p < pool.size(); ++p) {
      std::size_t gain = 0;
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        if (!covered[s] && pool[p].rainbow(subsets[s])) ++gain;
      }
      if (gain > best_gain) {
        best = p;
        best_gain = gain;
      }
    }
    if (best == pool.size()) break;
    adopt(pool[best]);
  }
  // Anything the pool missed gets a coloring built around it.
  for (std::size_t s = 0; s < subsets.size() && remaining > 0; ++s) {
    if (covered[s]) continue;
    Coloring c{k, std::vector<std::size_t>(n, 0)};
    for (std::size_t t = 0; t < colors; ++t) c.color[subsets[s][t]] = t + 1;
    std::size_t next = 0;
    for (auto& x : c.color) {
      if (x == 0) x = 1 + (next++ % colors);
    }
    adopt(std::move(c));
  }
  return family;
}

Extension colorful_matching_extension(std::size_t n, std::size_t k) {
  const ColoringFamily family = covering_coloring_family(n, k);
  std::vector<HPoly> parts;
  for (const auto& c : family.colorings) {
    const VPoly pts = colorful_matchings(n, k, c);
    if (!pts.empty()) parts.push_back(hull(pts));
  }
  Extension ext = balas_union(parts);
  ext.name = "colorful(" + std::to_string(n) + "," + std::to_string(k) + ")";
  return ext;
}

VerifyReport verify_extension(const HPoly& target, const VPoly& target_vertices, const Extension& ext) {
  check_extension(ext);
  if (target.dim() != ext.target_dim() || target_vertices.dim() != ext.target_dim()) {
    throw InputError("verify_extension: target has dim " + std::to_string(target.dim()) + ", extension projects to " +
                     std::to_string(ext.target_dim()));
  }
  const AffineMap& p = ext.proj;
  VerifyReport rep;

  rep.target_in_image = true;
  for (const auto& v : target_vertices.points()) {
    ++rep.vertices_checked;
    HPoly fiber = ext.q;
    for (std::size_t i = 0; i < p.out_dim(); ++i) fiber.add_equation(p.matrix()[i], v[i] - p.offset()[i]);
    if (!feasible_point(fiber)) {
      rep.target_in_image = false;
      rep.missing_vertex = v;
      rep.detail = "vertex " + to_string(v) + " has no preimage in Q";
      break;
    }
  }

  rep.image_in_target = true;
  LinearProgram lp(ext.q);
  if (lp.feasible()) {
    const std::size_t m = target.inequalities().size();
    auto check = [&](std::size_t row_index, const RatVector& a, const Rational& beta) {
      ++rep.rows_checked;
      const LPResult r = lp.solve(p.pullback(a), Sense::Maximize);
      const Rational bound = beta - dot(a, p.offset());
      if (r.status == LPStatus::Optimal && r.optimum <= bound) return true;
      rep.image_in_target = false;
      rep.violated_row = row_index;
      if (r.status == LPStatus::Optimal) {
        rep.escape_point = p.apply(r.primal_point);
        rep.detail = "row " + std::to_string(row_index) + " reaches " + to_string(r.optimum + dot(a, p.offset())) +
                     " > " + to_string(beta) + " on p(Q)";
      } else {
        rep.ray = r.ray;
        const Rational gain = dot(p.pullback(a), r.ray);
        Rational t = (bound - dot(p.pullback(a), r.primal_point)) / gain;
        if (t < 0) t = 0;
        rep.escape_point = p.apply(add(r.primal_point, scaled(r.ray, t + 1)));
        rep.detail = "row " + std::to_string(row_index) + " is unbounded on p(Q)";
      }
      return false;
    };
    for (std::size_t i = 0; i < m && rep.image_in_target; ++i) {
      check(i, target.inequalities()[i].coeffs, target.inequalities()[i].rhs);
    }
    for (std::size_t i = 0; i < target.equations().size() && rep.image_in_target; ++i) {
      const auto& e = target.equations()[i];
      if (check(m + i, e.coeffs, e.rhs)) check(m + i, scaled(e.coeffs, Rational(-1)), -e.rhs);
    }
  }
  rep.passed = rep.target_in_image && rep.image_in_target;
  if (rep.passed) rep.detail = "P = p(Q)";
  return rep;
}

VerifyReport verify_extension(const HPoly& target, const Extension& ext) {
  if (target.dim() != ext.target_dim()) throw InputError("verify_extension: target dimension mismatch");
  return verify_extension(target, vertices(target), ext);
}

VerifyReport verify_extension(const VPoly& target, const Extension& ext) {
  if (target.dim() != ext.target_dim()) throw InputError("verify_extension: target dimension mismatch");
  return verify_extension(hull(target), target, ext);
}

}  // namespace extform
