#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace extform {

// GMP keeps every mpq_class produced by arithmetic in canonical form
// (gcd(|num|, den) = 1, den > 0). Values built from raw num/den pairs go
// through make_rational, which canonicalizes.
using Rational = mpq_class;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;  // row-major

Rational make_rational(long num, long den = 1);

/// Parses "p" or "p/q" (optional leading '-'). Throws InputError on junk or q = 0.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational& value);
std::string to_string(const RatVector& vec);

bool is_canonical(const Rational& value);

RatVector zero_vector(std::size_t n);
RatVector unit_vector(std::size_t n, std::size_t i);
RatMatrix zero_matrix(std::size_t rows, std::size_t cols);
RatMatrix identity_matrix(std::size_t n);

Rational dot(const RatVector& a, const RatVector& b);
RatVector add(const RatVector& a, const RatVector& b);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector scaled(const RatVector& a, const Rational& factor);
bool is_zero(const RatVector& a);

RatVector mat_vec(const RatMatrix& m, const RatVector& v);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix transpose(const RatMatrix& m, std::size_t cols_if_empty = 0);

/// Reduced row echelon form. Pivot columns are chosen left to right and the
/// zero rows are dropped, so rows.size() == pivots.size() == rank.
struct RowEchelon {
  RatMatrix rows;
  std::vector<std::size_t> pivots;
};
RowEchelon rref(RatMatrix m, std::size_t cols);

std::size_t rank(const RatMatrix& m);

/// Basis of {x : m x = 0}, one vector per free column of rref(m).
RatMatrix null_space(const RatMatrix& m, std::size_t cols);

/// Positive multiple of `v` with coprime integer entries (zero stays zero).
RatVector primitive(const RatVector& v);

/// Lexicographic comparison, used wherever output order must be reproducible.
bool lex_less(const RatVector& a, const RatVector& b);

}  // namespace extform
