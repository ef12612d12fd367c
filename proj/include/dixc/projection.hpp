#pragma once

#include <vector>

#include "dixc/polyhedron.hpp"

namespace dixc {

// Projects p onto the variables not in `drop` by Fourier-Motzkin
// elimination. Equalities touching a dropped variable are substituted out
// first; afterwards the variable with the smallest (#positive x #negative)
// row product is eliminated next, and redundant rows are pruned after
// every step. Retained variables keep their relative order.
Polyhedron fm_eliminate(const Polyhedron& p, const std::vector<VariableId>& drop);

// Removes every inequality implied by the others (one LP per row).
// Equalities are kept. Throws InfeasibleError on an empty polyhedron.
Polyhedron remove_redundant(const Polyhedron& p);

// True iff lp_max agrees (status and value) on every direction.
bool support_equal(const Polyhedron& a, const Polyhedron& b, const std::vector<LinearExpr>& directions);

// True iff every point of `inner` satisfies every row of `outer`. Variables
// of `outer` must be declared in `inner`.
bool region_contains(const Polyhedron& outer, const Polyhedron& inner);

inline bool region_equal(const Polyhedron& a, const Polyhedron& b) {
  return region_contains(a, b) && region_contains(b, a);
}

// Support value max w.x, or nullopt when unbounded/infeasible.
struct Support {
  bool bounded = false;
  bool feasible = true;
  Rational value;
};
Support support(const Polyhedron& p, const LinearExpr& direction);

}  // namespace dixc
