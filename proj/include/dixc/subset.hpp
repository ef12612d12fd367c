#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dixc {

// A subset of the ground set {0, ..., n-1}, stored as a bitmask. Receivers
// are 0-based everywhere inside the library and rendered 1-based.
class SubsetId {
 public:
  static constexpr int kMaxElements = 16;

  constexpr SubsetId() = default;
  constexpr explicit SubsetId(std::uint32_t mask) : mask_(mask) {}

  static constexpr SubsetId full(int n) { return SubsetId((std::uint32_t{1} << n) - 1); }
  static constexpr SubsetId singleton(int j) { return SubsetId(std::uint32_t{1} << j); }
  static SubsetId from_elements(const std::vector<int>& elements);

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(int j) const { return (mask_ >> j) & 1u; }
  constexpr bool subset_of(SubsetId other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(SubsetId other) const { return (mask_ & other.mask_) != 0; }
  constexpr int lowest() const { return std::countr_zero(mask_); }

  constexpr SubsetId operator|(SubsetId o) const { return SubsetId(mask_ | o.mask_); }
  constexpr SubsetId operator&(SubsetId o) const { return SubsetId(mask_ & o.mask_); }
  constexpr SubsetId operator-(SubsetId o) const { return SubsetId(mask_ & ~o.mask_); }
  constexpr SubsetId with(int j) const { return SubsetId(mask_ | (std::uint32_t{1} << j)); }
  constexpr SubsetId without(int j) const { return SubsetId(mask_ & ~(std::uint32_t{1} << j)); }

  constexpr auto operator<=>(const SubsetId&) const = default;

  // 0-based members in ascending order.
  std::vector<int> elements() const;

  // 1-based, comma joined, ascending: {0,2} -> "1,3". Empty set -> "".
  std::string key() const;

  // Inverse of key(); validates that all indices lie in 1..n.
  static SubsetId parse_key(std::string_view key, int n);

  // Ordering used for display: by cardinality, then lexicographically by
  // ascending member list ({1} < {2} < {1,2} < {1,3} < {2,3} < {1,2,3}).
  static bool display_less(SubsetId a, SubsetId b);

 private:
  std::uint32_t mask_ = 0;
};

// All submasks of `set` (including the empty set and `set` itself) in
// increasing numeric order.
std::vector<SubsetId> subsets_of(SubsetId set);

// All nonempty subsets of {0..n-1} in display order.
std::vector<SubsetId> nonempty_subsets_display_order(int n);

// Applies a relabeling (perm[i] is the new label of element i).
SubsetId permute(SubsetId s, const std::vector<int>& perm);

}  // namespace dixc
