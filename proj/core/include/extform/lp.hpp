#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "extform/polyhedron.hpp"
#include "extform/rational.hpp"

namespace extform {

enum class LPStatus { Optimal, Infeasible, Unbounded };
enum class Sense { Maximize, Minimize };

const char* to_string(LPStatus status);

/// Result of an exact LP solve. Certificates are stated for the maximization
/// form: with s = +1 (Maximize) or -1 (Minimize) and c' = s·objective,
///
///   Optimal:    dual = (y, z), y >= 0 on inequalities, z free on equations,
///               A^T y + C^T z = c' and b·y + d·z = s·optimum.
///   Infeasible: dual = (y, z), y >= 0, A^T y + C^T z = 0, b·y + d·z < 0.
///   Unbounded:  ray r with A r <= 0, C r = 0, c'·r > 0, and primal_point is
///               feasible.
struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational optimum;
  RatVector primal_point;
  RatVector dual;
  RatVector ray;
};

/// Exact rational simplex over one fixed polyhedron. Phase one runs once in
/// the constructor; every solve() restarts phase two from that feasible basis,
/// so results do not depend on the order of earlier solves.
///
/// Pivoting follows Bland's rule (lowest index enters, lowest basic index
/// leaves on ties), which terminates without any tolerance.
class LinearProgram {
 public:
  explicit LinearProgram(const HPoly& poly);
  ~LinearProgram();
  LinearProgram(LinearProgram&&) noexcept;
  LinearProgram& operator=(LinearProgram&&) noexcept;

  bool feasible() const;
  LPResult solve(const RatVector& objective, Sense sense) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

LPResult lp_solve(const RatVector& objective, Sense sense, const HPoly& poly);

/// Any point of `poly`, or nullopt when it is empty.
std::optional<RatVector> feasible_point(const HPoly& poly);

/// Checks every claim of `result` by direct substitution.
bool certificate_holds(const LPResult& result, const RatVector& objective, Sense sense, const HPoly& poly);

}  // namespace extform
