#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dixc/rational.hpp"
#include "dixc/subset.hpp"

namespace dixc {

// A distributed index coding instance: n receivers, receiver j wants
// message j and knows messages A_j; one server per nonempty J with a
// broadcast link of capacity C_J.
//
// Receivers are 0-based. The side information graph has an edge i -> j
// iff i is in A_j.
class ProblemInstance {
 public:
  static constexpr int kMaxReceivers = 6;

  // Validates j not in A_j, C_J >= 0, 1 <= n <= kMaxReceivers.
  // `capacities` is indexed by server mask and must have 2^n entries;
  // entry 0 (the empty server) is ignored and stored as zero.
  ProblemInstance(std::vector<SubsetId> side_info, RationalVector capacities);

  static ProblemInstance with_unit_capacities(std::vector<SubsetId> side_info);

  int size() const { return static_cast<int>(side_info_.size()); }
  SubsetId ground() const { return SubsetId::full(size()); }
  int server_count() const { return (1 << size()) - 1; }

  SubsetId side_info(int j) const { return side_info_.at(j); }
  const std::vector<SubsetId>& side_info() const { return side_info_; }

  const Rational& capacity(SubsetId server) const { return capacities_.at(server.mask()); }
  const RationalVector& capacities() const { return capacities_; }

  // Sum of C_J over servers J that intersect `set`.
  Rational capacity_touching(SubsetId set) const;

  // True when every C_J equals 1.
  bool unit_capacities() const;

  // perm[i] is the new label of receiver i; side information and capacity
  // keys are relabeled consistently.
  ProblemInstance relabeled(const std::vector<int>& perm) const;

  ProblemInstance with_capacities(RationalVector capacities) const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

 private:
  std::vector<SubsetId> side_info_;
  RationalVector capacities_;
};

// Key -> value override list for parse_problem, keys as in "2,3".
using CapacityOverrides = std::vector<std::pair<std::string, Rational>>;

// Parses "(1);(2|3);(3|2)". Capacities default to 1 unless overridden.
ProblemInstance parse_problem(std::string_view text, const CapacityOverrides& capacities = {});

// Compact notation of the side information only.
std::string to_compact(const ProblemInstance& p);

// Capacities that differ from 1, so that
// parse_problem(to_compact(p), non_unit_capacities(p)) == p.
CapacityOverrides non_unit_capacities(const ProblemInstance& p);

nlohmann::ordered_json to_json(const ProblemInstance& p);
ProblemInstance problem_from_json(const nlohmann::json& doc);

// B_j = [n] \ (A_j u {j}). Throws std::out_of_range for a bad receiver.
SubsetId interfering_set(const ProblemInstance& p, int j);

// True iff the side information graph induced on `set` has no directed cycle.
bool is_acyclic_induced(const ProblemInstance& p, SubsetId set);

struct CanonicalForm {
  ProblemInstance instance;
  std::vector<int> permutation;  // instance == p.relabeled(permutation)
};

// Lexicographically smallest relabeling of p over all n! receiver
// permutations. Two instances are isomorphic (with capacities respected)
// iff their canonical instances are equal.
CanonicalForm canonical_form(const ProblemInstance& p);

// All unit-capacity problems on n receivers (1 <= n <= 4). With up_to_iso,
// one canonical representative per isomorphism class, sorted canonically.
std::vector<ProblemInstance> enumerate_problems(int n, bool up_to_iso);

// Total order on instances used for canonical comparison.
bool canonical_less(const ProblemInstance& a, const ProblemInstance& b);

}  // namespace dixc
