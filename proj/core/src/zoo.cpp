#include "extform/zoo.hpp"

#include <algorithm>
#include <numeric>

#include "extform/errors.hpp"

namespace extform::zoo {

namespace {

constexpr std::size_t kMaxFactorialN = 8;
constexpr std::size_t kMaxTreeN = 7;
constexpr std::size_t kMaxKnapsackN = 20;
constexpr std::size_t kMaxMatchingN = 12;
constexpr std::size_t kMaxSubsetN = 16;

RatVector neg_unit(std::size_t n, std::size_t i) {
  RatVector v = zero_vector(n);
  v[i] = -1;
  return v;
}

void add_nonnegativity(HPoly& p, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < p.dim(); ++i) p.add_inequality(neg_unit(p.dim(), i), 0, names[i] + ">=0");
}

RatVector edges_within(const GraphEdgeIndex& g, const std::vector<std::size_t>& nodes) {
  RatVector row = zero_vector(g.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) row[g.index(nodes[a], nodes[b])] = 1;
  }
  return row;
}

std::vector<std::string> edge_names(const GraphEdgeIndex& g) {
  std::vector<std::string> names;
  for (std::size_t e = 0; e < g.size(); ++e) names.push_back("x" + g.edge_label(e));
  return names;
}

std::string matching_label(const GraphEdgeIndex& g, const std::vector<std::size_t>& edges) {
  if (edges.empty()) return "{}";
  std::string s;
  for (auto e : edges) s += g.edge_label(e);
  return s;
}

void collect_matchings(const GraphEdgeIndex& g, std::size_t next, std::vector<bool>& used, std::vector<std::size_t>& cur,
                       std::vector<std::vector<std::size_t>>& out) {
  out.push_back(cur);
  for (std::size_t e = next; e < g.size(); ++e) {
    const auto [v, w] = g.edge(e);
    if (used[v] || used[w]) continue;
    used[v] = used[w] = true;
    cur.push_back(e);
    collect_matchings(g, e + 1, used, cur, out);
    cur.pop_back();
    used[v] = used[w] = false;
  }
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

GraphEdgeIndex::GraphEdgeIndex(std::size_t n) : n_(n) {
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) edges_.emplace_back(v, w);
  }
}

std::size_t GraphEdgeIndex::index(std::size_t v, std::size_t w) const {
  if (v == w || v >= n_ || w >= n_) throw InputError("GraphEdgeIndex: no edge between these nodes");
  if (v > w) std::swap(v, w);
  // Row v starts after sum_{u < v} (n - 1 - u) edges.
  return v * (2 * n_ - v - 1) / 2 + (w - v - 1);
}

std::string GraphEdgeIndex::edge_label(std::size_t index) const {
  const auto [v, w] = edges_.at(index);
  return "{" + std::to_string(v + 1) + "," + std::to_string(w + 1) + "}";
}

RatVector GraphEdgeIndex::indicator(const std::vector<std::size_t>& edge_indices) const {
  RatVector x = zero_vector(size());
  for (auto e : edge_indices) x.at(e) = 1;
  return x;
}

std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t n, std::size_t min_size, std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = min_size; s <= std::min(max_size, n); ++s) {
    std::vector<std::size_t> cur(s);
    std::iota(cur.begin(), cur.end(), 0);
    for (;;) {
      out.push_back(cur);
      // Advance to the next s-combination in lexicographic order.
      std::size_t i = s;
      while (i > 0 && cur[i - 1] == n - s + i - 1) --i;
      if (i == 0) break;
      ++cur[i - 1];
      for (std::size_t j = i; j < s; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  return out;
}

std::string set_label(const std::vector<std::size_t>& nodes) {
  std::string s = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i != 0) s += ",";
    s += std::to_string(nodes[i] + 1);
  }
  return s + "}";
}

VPoly matching_vrep(std::size_t n, std::optional<std::size_t> ell) {
  if (n < 1) throw InputError("matching_vrep: n must be >= 1");
  if (ell && *ell > n / 2) throw InputError("matching_vrep: cardinality exceeds floor(n/2)");
  if (n > kMaxMatchingN) throw SizeError("matching_vrep: n > " + std::to_string(kMaxMatchingN));
  const GraphEdgeIndex g(n);
  std::vector<std::vector<std::size_t>> all;
  std::vector<bool> used(n, false);
  std::vector<std::size_t> cur;
  collect_matchings(g, 0, used, cur, all);
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  VPoly out(g.size());
  for (const auto& m : all) {
    if (ell && m.size() != *ell) continue;
    out.add_point(g.indicator(m), matching_label(g, m));
  }
  return out;
}

HPoly matching_hrep(std::size_t n) {
  if (n < 2) throw InputError("matching_hrep: n must be >= 2");
  if (n > kMaxSubsetN) throw SizeError("matching_hrep: n > " + std::to_string(kMaxSubsetN));
  const GraphEdgeIndex g(n);
  HPoly p(g.size());
  add_nonnegativity(p, edge_names(g));
  for (std::size_t v = 0; v < n; ++v) {
    RatVector row = zero_vector(g.size());
    for (std::size_t w = 0; w < n; ++w) {
      if (w != v) row[g.index(v, w)] = 1;
    }
    p.add_inequality(std::move(row), 1, "deg(" + std::to_string(v + 1) + ")");
  }
  for (const auto& s : subsets_by_size(n, 3, n)) {
    if (s.size() % 2 == 0) continue;
    p.add_inequality(edges_within(g, s), Rational(static_cast<long>(s.size() / 2)), "odd" + set_label(s));
  }
  return p;
}

VPoly permutahedron_vrep(std::size_t n) {
  if (n < 1) throw InputError("permutahedron_vrep: n must be >= 1");
  if (n > kMaxFactorialN) throw SizeError("permutahedron_vrep: n > " + std::to_string(kMaxFactorialN));
  std::vector<long> perm(n);
  std::iota(perm.begin(), perm.end(), 1L);
  VPoly out(n);
  do {
    RatVector x;
    for (auto v : perm) x.emplace_back(v);
    std::string label = to_string(x);
    out.add_point(std::move(x), std::move(label));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

HPoly permutahedron_hrep(std::size_t n) {
  if (n < 1) throw InputError("permutahedron_hrep: n must be >= 1");
  if (n > kMaxSubsetN) throw SizeError("permutahedron_hrep: n > " + std::to_string(kMaxSubsetN));
  HPoly p(n);
  for (const auto& s : subsets_by_size(n, 1, n - 1)) {
    RatVector row = zero_vector(n);
    for (auto i : s) row[i] = -1;
    const long k = static_cast<long>(s.size());
    p.add_inequality(std::move(row), Rational(-k * (k + 1) / 2), "sum" + set_label(s) + ">=" + std::to_string(k * (k + 1) / 2));
  }
  const long nn = static_cast<long>(n);
  p.add_equation(RatVector(n, Rational(1)), Rational(nn * (nn + 1) / 2), "sum=" + std::to_string(nn * (nn + 1) / 2));
  return p;
}

HPoly birkhoff_hrep(std::size_t n) {
  if (n < 1) throw InputError("birkhoff_hrep: n must be >= 1");
  const std::size_t d = n * n;
  HPoly p(d);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) names.push_back("y" + std::to_string(i + 1) + "," + std::to_string(j + 1));
  }
  add_nonnegativity(p, names);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector row = zero_vector(d);
    for (std::size_t j = 0; j < n; ++j) row[i * n + j] = 1;
    p.add_equation(std::move(row), 1, "row" + std::to_string(i + 1));
  }
  for (std::size_t j = 0; j < n; ++j) {
    RatVector col = zero_vector(d);
    for (std::size_t i = 0; i < n; ++i) col[i * n + j] = 1;
    p.add_equation(std::move(col), 1, "col" + std::to_string(j + 1));
  }
  return p;
}

VPoly birkhoff_vrep(std::size_t n) {
  if (n < 1) throw InputError("birkhoff_vrep: n must be >= 1");
  if (n > kMaxFactorialN) throw SizeError("birkhoff_vrep: n > " + std::to_string(kMaxFactorialN));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  VPoly out(n * n);
  do {
    RatVector y = zero_vector(n * n);
    std::string label = "(";
    for (std::size_t i = 0; i < n; ++i) {
      y[i * n + perm[i]] = 1;
      label += (i == 0 ? "" : ",") + std::to_string(perm[i] + 1);
    }
    out.add_point(std::move(y), label + ")");
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

VPoly spanning_tree_vrep(std::size_t n) {
  if (n < 2) throw InputError("spanning_tree_vrep: n must be >= 2");
  if (n > kMaxTreeN) throw SizeError("spanning_tree_vrep: n > " + std::to_string(kMaxTreeN));
  const GraphEdgeIndex g(n);
  VPoly out(g.size());
  for (const auto& edges : subsets_by_size(g.size(), n - 1, n - 1)) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    bool acyclic = true;
    for (auto e : edges) {
      const auto [v, w] = g.edge(e);
      const std::size_t rv = find_root(parent, v);
      const std::size_t rw = find_root(parent, w);
      if (rv == rw) {
        acyclic = false;
        break;
      }
      parent[rv] = rw;
    }
    if (acyclic) out.add_point(g.indicator(edges), matching_label(g, edges));
  }
  return out;
}

HPoly spanning_tree_hrep(std::size_t n) {
  if (n < 2) throw InputError("spanning_tree_hrep: n must be >= 2");
  if (n > kMaxSubsetN) throw SizeError("spanning_tree_hrep: n > " + std::to_string(kMaxSubsetN));
  const GraphEdgeIndex g(n);
  HPoly p(g.size());
  add_nonnegativity(p, edge_names(g));
  for (const auto& s : subsets_by_size(n, 2, n - 1)) {
    p.add_inequality(edges_within(g, s), Rational(static_cast<long>(s.size()) - 1), "sub" + set_label(s));
  }
  p.add_equation(RatVector(g.size(), Rational(1)), Rational(static_cast<long>(n) - 1), "x(E)=" + std::to_string(n - 1));
  return p;
}

VPoly knapsack_vrep(const std::vector<long>& weights, long capacity) {
  const std::size_t n = weights.size();
  if (n < 1) throw InputError("knapsack_vrep: no items");
  if (n > kMaxKnapsackN) throw SizeError("knapsack_vrep: n > " + std::to_string(kMaxKnapsackN));
  if (capacity < 0 || std::any_of(weights.begin(), weights.end(), [](long w) { return w < 0; })) {
    throw InputError("knapsack_vrep: weights and capacity must be nonnegative");
  }
  VPoly out(n);
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    long total = 0;
    RatVector x = zero_vector(n);
    std::string label;
    for (std::size_t i = 0; i < n; ++i) {
      const bool in = ((mask >> (n - 1 - i)) & 1UL) != 0;
      label += in ? '1' : '0';
      if (in) {
        x[i] = 1;
        total += weights[i];
      }
    }
    if (total <= capacity) out.add_point(std::move(x), std::move(label));
  }
  return out;
}

HPoly cube_hrep(std::size_t n) {
  if (n < 1) throw InputError("cube_hrep: n must be >= 1");
  HPoly p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name = "x" + std::to_string(i + 1);
    p.add_inequality(neg_unit(n, i), 0, name + ">=0");
    p.add_inequality(unit_vector(n, i), 1, name + "<=1");
  }
  return p;
}

VPoly cross_polytope_vrep(std::size_t n) {
  if (n < 1) throw InputError("cross_polytope_vrep: n must be >= 1");
  VPoly out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.add_point(unit_vector(n, i), "+e" + std::to_string(i + 1));
    out.add_point(neg_unit(n, i), "-e" + std::to_string(i + 1));
  }
  return out;
}

HPoly simplex_hrep(std::size_t n) {
  if (n < 1) throw InputError("simplex_hrep: n must be >= 1");
  HPoly p(n);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("y" + std::to_string(i + 1));
  add_nonnegativity(p, names);
  p.add_equation(RatVector(n, Rational(1)), 1, "sum=1");
  return p;
}

}  // namespace extform::zoo
