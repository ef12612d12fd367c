#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dixc/polyhedron.hpp"
#include "dixc/problem.hpp"

namespace dixc {

enum class OuterBoundKind { kMais, kPolymatroid, kPolymatroidPlusCustom };

std::string_view to_string(OuterBoundKind kind);

// Rate variables R_1..R_n, each with its nonnegativity row.
Polyhedron rate_polyhedron(int n);

// Generalized MAIS bound: for every nonempty S whose induced side
// information subgraph is acyclic, sum_{j in S} R_j <= sum_{J meets S} C_J.
// Redundant rows are removed. Row origins read "mais:S=<key>".
Polyhedron build_mais(const ProblemInstance& p);

// Polymatroidal outer bound LP over R_j and f_T(S) for every nonempty T
// and S subset of T. f_T is normalized, pinned to the touching capacity at
// T, elementally monotone and submodular, and bounds
// R_j <= f_T((B_j n T) u {j}) - f_T(B_j n T) for j in T.
Polyhedron build_polymatroid(const ProblemInstance& p);

// Only the constraints of build_polymatroid that involve f_T for one T
// (plus the rate rows that T touches).
Polyhedron build_polymatroid_block(const ProblemInstance& p, SubsetId t);

// Sum-rate cut for three receivers where one receiver has no side
// information and the other two know each other's message:
//   R_1 + R_2 + R_3 <= sum_J C_J + C_{pair} + C_{123}.
// Empty unless the problem matches that pattern under some relabeling.
std::vector<LinearInequality> custom_cuts(const ProblemInstance& p);

// Region over R_1..R_n. kPolymatroid projects out every f_T (block by
// block, then prunes); kPolymatroidPlusCustom additionally intersects with
// custom_cuts.
Polyhedron outer_region(const ProblemInstance& p, OuterBoundKind kind);

// Support value of the outer bound in a rate direction, solved directly on
// the lifted LP (no projection).
Rational outer_support(const ProblemInstance& p, OuterBoundKind kind, const RationalVector& weights);

inline constexpr std::string_view kCustomCutOrigin = "custom:appendixB";

}  // namespace dixc
