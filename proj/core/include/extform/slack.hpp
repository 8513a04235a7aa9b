#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extform/polyhedron.hpp"

namespace extform {

/// Slacks b_i - A_i x of the inequalities of a description against a point set.
struct SlackMatrix {
  RatMatrix entries;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  /// The affine space phi(aff P) in R^m, as equations in rref form.
  std::vector<Constraint> affine_space;

  std::size_t rows() const { return entries.size(); }
  std::size_t cols() const { return col_labels.size(); }

  bool operator==(const SlackMatrix&) const = default;
};

struct NonnegFactorization {
  RatMatrix t;  // m x f
  RatMatrix s;  // f x |X|

  std::size_t inner() const { return s.size(); }
};

struct FactorizationCheck {
  bool valid = false;
  std::optional<std::pair<std::size_t, std::size_t>> position;  // first offending entry
  std::string detail;

  explicit operator bool() const { return valid; }
};

/// x -> b - A x. Throws ValidationError unless it is injective on aff(P).
AffineMap slack_map(const HPoly& hrep);

/// True iff every inequality is tight somewhere on P. Throws InfeasibleError on empty P.
bool is_binding(const HPoly& hrep);

/// Throws InputError naming the row and point when a point lies outside P.
SlackMatrix slack_matrix(const HPoly& hrep, const VPoly& points);

/// Exact check of T S = entries with T, S >= 0.
FactorizationCheck verify_factorization(const SlackMatrix& slack, const NonnegFactorization& fact);

/// The slack extension {lambda >= 0 : T lambda in phi(aff P)}, projected through
/// the inverse slack map. Its size is the inner dimension.
Extension factorization_to_extension(const NonnegFactorization& fact, const SlackMatrix& slack, const HPoly& original);

/// T from LP duals of each row of `hrep` over Q, S from slacks of Q at the
/// lexicographically minimal lift of each point. Q is first cut down to the
/// orthogonal complement of its lineality space.
NonnegFactorization extension_to_factorization(const Extension& ext, const HPoly& hrep, const VPoly& points);

}  // namespace extform
