#pragma once

#include <map>
#include <vector>

#include "dixc/polyhedron.hpp"
#include "dixc/rational.hpp"

namespace dixc {

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

// Outcome of maximizing c.x over {x : rows}. For an optimal solve, `point`
// satisfies every row exactly and `dual` is a certificate: one multiplier
// per row (>= 0 on inequalities) with sum_i dual_i * row_i == c and
// sum_i dual_i * rhs_i == value. Both are verified before returning.
struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  RationalVector point;
  RationalVector dual;
};

// Exact two-phase primal simplex with Bland's rule on a dense system.
// Single-variable rows of the form -a x_j <= 0 are treated as sign
// constraints instead of tableau rows.
LpResult lp_max_dense(const RationalVector& objective, const std::vector<DenseRow>& rows, std::size_t width);

struct PolyhedronLpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  std::map<VariableId, Rational> point;
  RationalVector dual;  // aligned with p.constraints()
};

// Throws InvalidInput if the objective names an undeclared variable.
PolyhedronLpResult lp_max(const LinearExpr& objective, const Polyhedron& p);

}  // namespace dixc
