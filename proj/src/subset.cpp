#include "dixc/subset.hpp"

#include <algorithm>
#include <charconv>

#include "dixc/errors.hpp"

namespace dixc {

SubsetId SubsetId::from_elements(const std::vector<int>& elements) {
  std::uint32_t mask = 0;
  for (int e : elements) {
    if (e < 0 || e >= kMaxElements) throw InvalidInput("subset element out of range");
    mask |= std::uint32_t{1} << e;
  }
  return SubsetId(mask);
}

std::vector<int> SubsetId::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string SubsetId::key() const {
  std::string out;
  for (int e : elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e + 1);
  }
  return out;
}

SubsetId SubsetId::parse_key(std::string_view key, int n) {
  std::uint32_t mask = 0;
  std::size_t pos = 0;
  if (key.empty()) return SubsetId();
  while (pos <= key.size()) {
    auto comma = key.find(',', pos);
    auto piece = key.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw ParseError("bad subset key '" + std::string(key) + "'");
    }
    if (value < 1 || value > n) {
      throw InvalidInput("subset key '" + std::string(key) + "' has index outside 1.." + std::to_string(n));
    }
    mask |= std::uint32_t{1} << (value - 1);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return SubsetId(mask);
}

bool SubsetId::display_less(SubsetId a, SubsetId b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.elements() < b.elements();
}

std::vector<SubsetId> subsets_of(SubsetId set) {
  std::vector<SubsetId> out;
  out.reserve(std::size_t{1} << set.size());
  // Enumerate submasks in increasing order by counting through the bits of `set`.
  const auto members = set.elements();
  const std::uint32_t count = std::uint32_t{1} << members.size();
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint32_t mask = 0;
    for (std::size_t b = 0; b < members.size(); ++b) {
      if ((i >> b) & 1u) mask |= std::uint32_t{1} << members[b];
    }
    out.emplace_back(mask);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubsetId> nonempty_subsets_display_order(int n) {
  std::vector<SubsetId> out;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m) out.emplace_back(m);
  std::sort(out.begin(), out.end(), SubsetId::display_less);
  return out;
}

SubsetId permute(SubsetId s, const std::vector<int>& perm) {
  std::uint32_t mask = 0;
  for (int e : s.elements()) mask |= std::uint32_t{1} << perm[e];
  return SubsetId(mask);
}

}  // namespace dixc
