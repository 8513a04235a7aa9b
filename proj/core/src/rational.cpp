#include "extform/rational.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "extform/errors.hpp"

namespace extform {

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-') {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("rational with zero denominator '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const RatVector& vec) {
  std::string out = "(";
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (i != 0) out += ",";
    out += to_string(vec[i]);
  }
  return out + ")";
}

bool is_canonical(const Rational& value) {
  if (value.get_den() <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return g == 1;
}

RatVector zero_vector(std::size_t n) { return RatVector(n, Rational(0)); }

RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

RatMatrix zero_matrix(std::size_t rows, std::size_t cols) { return RatMatrix(rows, zero_vector(cols)); }

RatMatrix identity_matrix(std::size_t n) {
  RatMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw InputError("dot: length mismatch");
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

RatVector add(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw InputError("add: length mismatch");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVector sub(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw InputError("sub: length mismatch");
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVector scaled(const RatVector& a, const Rational& factor) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * factor;
  return r;
}

bool is_zero(const RatVector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
}

RatVector mat_vec(const RatMatrix& m, const RatVector& v) {
  RatVector r;
  r.reserve(m.size());
  for (const auto& row : m) r.push_back(dot(row, v));
  return r;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = a.front().size();
  if (b.size() != inner) throw InputError("mat_mul: inner dimension mismatch");
  const std::size_t cols = inner == 0 ? 0 : b.front().size();
  RatMatrix r = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(b[k][j]) != 0) r[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return r;
}

RatMatrix transpose(const RatMatrix& m, std::size_t cols_if_empty) {
  const std::size_t cols = m.empty() ? cols_if_empty : m.front().size();
  RatMatrix t = zero_matrix(cols, m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  }
  return t;
}

RowEchelon rref(RatMatrix m, std::size_t cols) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || sgn(m[i][col]) == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = col; j < m[i].size(); ++j) {
        if (sgn(m[row][j]) != 0) m[i][j] -= f * m[row][j];
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const RatMatrix& m) {
  if (m.empty()) return 0;
  return rref(m, m.front().size()).pivots.size();
}

RatMatrix null_space(const RatMatrix& m, std::size_t cols) {
  const RowEchelon e = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v = unit_vector(cols, f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

RatVector primitive(const RatVector& v) {
  mpz_class lcm_den = 1;
  for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(v.size());
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class n = x.get_num() * (lcm_den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(std::move(n));
  }
  RatVector out(v.size());
  if (g == 0) return zero_vector(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

bool lex_less(const RatVector& a, const RatVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace extform
