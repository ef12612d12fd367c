#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dixc/bound_result.hpp"
#include "dixc/decoding.hpp"
#include "dixc/polyhedron.hpp"
#include "dixc/problem.hpp"

namespace dixc {

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

// Composite coding over one server group P with fixed decoding sets.
// Variables: R_{j,P} >= 0 for j in J' and C_{K,J} >= 0 for J in P,
// nonempty K within J. Rows:
//   sum_{i in L} R_{i,P} <= sum_{K within D_j u A_{j,P}, K meets L} sum_{J in P, K within J} C_{K,J}
//     for j in J' and nonempty L within D_j \ A_{j,P};
//   sum_{K within J, K not within A_j} C_{K,J} <= C_J   for j in J', J in P.
// `group_index` only affects variable names (R_{j,P<index+1>}).
Polyhedron group_lifted_polyhedron(const ProblemInstance& p, const ServerGroup& group, const DecodingConfig& config,
                                   int group_index = 0);

// group_lifted_polyhedron with every composite rate projected out.
Polyhedron group_region(const ProblemInstance& p, const ServerGroup& group, const DecodingConfig& config,
                        int group_index = 0);

// max sum_j w_j R_{j,P} over the group's region.
Rational group_support(const ProblemInstance& p, const ServerGroup& group, const DecodingConfig& config,
                       const RationalVector& weights);

// Lifted polyhedron of the whole grouped scheme: every group's lifted
// polyhedron plus R_j >= 0 and R_j = sum_P R_{j,P}. Its projection onto
// R_1..R_n is the Minkowski sum of the group regions.
Polyhedron grouped_lifted_polyhedron(const ProblemInstance& p, const ServerGrouping& grouping,
                                     const std::vector<DecodingConfig>& configs);

// Candidate decoding sets of receiver j inside a group: {j} plus any subset
// of J' \ (A_j u {j}), in increasing mask order.
std::vector<SubsetId> decoding_candidates(const ProblemInstance& p, const ServerGroup& group, int j);

// Number of (group, config) pairs an exhaustive search would evaluate.
std::uint64_t decoding_search_size(const ProblemInstance& p, const ServerGrouping& grouping);

struct DecodingSearchResult {
  Rational value;
  std::vector<DecodingConfig> configs;  // per group, lexicographically smallest argmax
  RationalVector group_values;
};

// Exhaustive per-group search; the support of a Minkowski sum is the sum of
// supports, so every group is maximized independently. Throws
// BudgetExceeded when decoding_search_size exceeds `budget`.
DecodingSearchResult search_decoding_sets(const ProblemInstance& p, const ServerGrouping& grouping,
                                          const RationalVector& weights, std::uint64_t budget = kDefaultSearchBudget);

// Direction mode when `weights` is set, region mode otherwise.
struct SchemeQuery {
  std::optional<RationalVector> weights;
  std::uint64_t budget = kDefaultSearchBudget;
};

// nullopt configs means exhaustive search. In region mode the search picks
// the configs that are optimal for the all-ones direction.
BoundResult scheme_grouped(const ProblemInstance& p, const ServerGrouping& grouping,
                           const std::optional<std::vector<DecodingConfig>>& configs, const SchemeQuery& query);

// Every server on its own.
BoundResult scheme_separate(const ProblemInstance& p, const std::optional<std::vector<DecodingConfig>>& configs,
                            const SchemeQuery& query);

// All servers in one group with one decoding set per receiver.
BoundResult scheme_joint(const ProblemInstance& p, const std::optional<DecodingConfig>& config,
                         const SchemeQuery& query);

struct GroupingSearchResult {
  Rational value;
  ServerGrouping grouping;
  std::vector<DecodingConfig> configs;
};

// Best grouping and decoding sets for one direction over all partitions
// of the servers (n <= 3). Every candidate group is scored once and the
// best partition is assembled by dynamic programming over server subsets.
GroupingSearchResult search_groupings(const ProblemInstance& p, const RationalVector& weights,
                                      std::uint64_t budget = kDefaultSearchBudget);

}  // namespace dixc
