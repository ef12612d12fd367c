#include "dixc/problem.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "dixc/errors.hpp"

namespace dixc {

ProblemInstance::ProblemInstance(std::vector<SubsetId> side_info, RationalVector capacities)
    : side_info_(std::move(side_info)), capacities_(std::move(capacities)) {
  const int n = size();
  if (n < 1 || n > kMaxReceivers) {
    throw InvalidInput("receiver count must be in 1.." + std::to_string(kMaxReceivers));
  }
  if (capacities_.size() != (std::size_t{1} << n)) {
    throw InvalidInput("capacity table must have 2^n entries");
  }
  for (int j = 0; j < n; ++j) {
    if (!side_info_[j].subset_of(ground())) {
      throw InvalidInput("side information of receiver " + std::to_string(j + 1) + " is outside [n]");
    }
    if (side_info_[j].contains(j)) {
      throw InvalidInput("receiver " + std::to_string(j + 1) + " has its own message as side information");
    }
  }
  capacities_[0] = 0;
  for (std::size_t m = 1; m < capacities_.size(); ++m) {
    capacities_[m].canonicalize();
    if (capacities_[m] < 0) {
      throw InvalidInput("negative capacity for server {" + SubsetId(static_cast<std::uint32_t>(m)).key() + "}");
    }
  }
}

ProblemInstance ProblemInstance::with_unit_capacities(std::vector<SubsetId> side_info) {
  const std::size_t count = std::size_t{1} << side_info.size();
  RationalVector caps(count, Rational(1));
  return ProblemInstance(std::move(side_info), std::move(caps));
}

Rational ProblemInstance::capacity_touching(SubsetId set) const {
  Rational total = 0;
  for (std::uint32_t m = 1; m < capacities_.size(); ++m) {
    if (SubsetId(m).intersects(set)) total += capacities_[m];
  }
  return total;
}

bool ProblemInstance::unit_capacities() const {
  for (std::size_t m = 1; m < capacities_.size(); ++m) {
    if (capacities_[m] != 1) return false;
  }
  return true;
}

ProblemInstance ProblemInstance::relabeled(const std::vector<int>& perm) const {
  const int n = size();
  std::vector<SubsetId> side(n);
  RationalVector caps(capacities_.size());
  for (int j = 0; j < n; ++j) side[perm[j]] = permute(side_info_[j], perm);
  for (std::uint32_t m = 1; m < capacities_.size(); ++m) caps[permute(SubsetId(m), perm).mask()] = capacities_[m];
  return ProblemInstance(std::move(side), std::move(caps));
}

ProblemInstance ProblemInstance::with_capacities(RationalVector capacities) const {
  return ProblemInstance(side_info_, std::move(capacities));
}

namespace {

class CompactParser {
 public:
  explicit CompactParser(std::string_view text) : text_(text) {}

  std::vector<std::pair<int, std::vector<int>>> parse() {
    std::vector<std::pair<int, std::vector<int>>> receivers;
    receivers.push_back(receiver());
    skip_space();
    while (pos_ < text_.size()) {
      expect(';');
      receivers.push_back(receiver());
      skip_space();
    }
    return receivers;
  }

 private:
  std::pair<int, std::vector<int>> receiver() {
    expect('(');
    const int id = number();
    std::vector<int> known;
    skip_space();
    if (peek() == '|') {
      ++pos_;
      known.push_back(number());
      skip_space();
      while (peek() == ',') {
        ++pos_;
        known.push_back(number());
        skip_space();
      }
    }
    expect(')');
    return {id, known};
  }

  int number() {
    skip_space();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000) fail("receiver id too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a receiver id");
    return static_cast<int>(value);
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ProblemInstance parse_problem(std::string_view text, const CapacityOverrides& capacities) {
  const auto receivers = CompactParser(text).parse();
  const int n = static_cast<int>(receivers.size());
  if (n > ProblemInstance::kMaxReceivers) {
    throw InvalidInput("at most " + std::to_string(ProblemInstance::kMaxReceivers) + " receivers are supported");
  }
  std::vector<SubsetId> side(n);
  std::vector<bool> seen(n, false);
  for (const auto& [id, known] : receivers) {
    if (id < 1 || id > n) throw ParseError("receiver id " + std::to_string(id) + " outside 1.." + std::to_string(n));
    if (seen[id - 1]) throw ParseError("duplicate receiver id " + std::to_string(id));
    seen[id - 1] = true;
    SubsetId a;
    for (int k : known) {
      if (k < 1 || k > n) throw ParseError("side information id " + std::to_string(k) + " outside 1.." + std::to_string(n));
      if (k == id) throw InvalidInput("receiver " + std::to_string(id) + " lists its own message as side information");
      if (a.contains(k - 1)) throw ParseError("duplicate side information id " + std::to_string(k));
      a = a.with(k - 1);
    }
    side[id - 1] = a;
  }

  RationalVector caps(std::size_t{1} << n, Rational(1));
  for (const auto& [key, value] : capacities) {
    const SubsetId server = SubsetId::parse_key(key, n);
    if (server.empty()) throw InvalidInput("capacity key must be a nonempty subset");
    if (value < 0) throw InvalidInput("negative capacity for server {" + key + "}");
    caps[server.mask()] = value;
  }
  return ProblemInstance(std::move(side), std::move(caps));
}

std::string to_compact(const ProblemInstance& p) {
  std::string out;
  for (int j = 0; j < p.size(); ++j) {
    if (j > 0) out += ';';
    out += '(' + std::to_string(j + 1);
    if (!p.side_info(j).empty()) out += '|' + p.side_info(j).key();
    out += ')';
  }
  return out;
}

CapacityOverrides non_unit_capacities(const ProblemInstance& p) {
  CapacityOverrides out;
  for (SubsetId server : nonempty_subsets_display_order(p.size())) {
    if (p.capacity(server) != 1) out.emplace_back(server.key(), p.capacity(server));
  }
  return out;
}

nlohmann::ordered_json to_json(const ProblemInstance& p) {
  nlohmann::ordered_json side = nlohmann::ordered_json::object();
  for (int j = 0; j < p.size(); ++j) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (int i : p.side_info(j).elements()) list.push_back(i + 1);
    side[std::to_string(j + 1)] = list;
  }
  nlohmann::ordered_json caps = nlohmann::ordered_json::object();
  for (SubsetId server : nonempty_subsets_display_order(p.size())) caps[server.key()] = to_string(p.capacity(server));
  nlohmann::ordered_json doc;
  doc["n"] = p.size();
  doc["side_info"] = std::move(side);
  doc["capacities"] = std::move(caps);
  return doc;
}

namespace {

Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError("expected a rational string, got " + v.dump());
}

}  // namespace

ProblemInstance problem_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError("problem document needs an integer field 'n'");
  }
  const int n = doc["n"].get<int>();
  if (n < 1 || n > ProblemInstance::kMaxReceivers) throw InvalidInput("n outside supported range");
  std::vector<SubsetId> side(n);
  if (doc.contains("side_info")) {
    for (const auto& [key, list] : doc["side_info"].items()) {
      const SubsetId who = SubsetId::parse_key(key, n);
      if (who.size() != 1) throw ParseError("side_info key must be a single receiver id: '" + key + "'");
      if (!list.is_array()) throw ParseError("side_info entries must be arrays");
      SubsetId a;
      for (const auto& v : list) {
        if (!v.is_number_integer()) throw ParseError("side_info members must be integers");
        const int k = v.get<int>();
        if (k < 1 || k > n) throw ParseError("side information id outside 1..n");
        a = a.with(k - 1);
      }
      side[who.lowest()] = a;
    }
  }
  CapacityOverrides caps;
  if (doc.contains("capacities")) {
    for (const auto& [key, value] : doc["capacities"].items()) caps.emplace_back(key, rational_from_json(value));
  }
  RationalVector table(std::size_t{1} << n, Rational(1));
  for (const auto& [key, value] : caps) {
    const SubsetId server = SubsetId::parse_key(key, n);
    if (server.empty()) throw InvalidInput("capacity key must be a nonempty subset");
    table[server.mask()] = value;
  }
  return ProblemInstance(std::move(side), std::move(table));
}

SubsetId interfering_set(const ProblemInstance& p, int j) {
  if (j < 0 || j >= p.size()) throw std::out_of_range("receiver index out of range");
  return p.ground() - p.side_info(j).with(j);
}

bool is_acyclic_induced(const ProblemInstance& p, SubsetId set) {
  // Iterative three-colour DFS over the induced subgraph.
  enum class Colour { kWhite, kGrey, kBlack };
  const int n = p.size();
  std::vector<Colour> colour(n, Colour::kWhite);
  // successors of i within `set`: receivers j in set with i in A_j
  auto successors = [&](int i) {
    SubsetId out;
    for (int j : set.elements()) {
      if (p.side_info(j).contains(i)) out = out.with(j);
    }
    return out;
  };
  for (int root : set.elements()) {
    if (colour[root] != Colour::kWhite) continue;
    std::vector<std::pair<int, SubsetId>> stack{{root, successors(root)}};
    colour[root] = Colour::kGrey;
    while (!stack.empty()) {
      auto& [node, pending] = stack.back();
      if (pending.empty()) {
        colour[node] = Colour::kBlack;
        stack.pop_back();
        continue;
      }
      const int next = pending.lowest();
      pending = pending.without(next);
      if (colour[next] == Colour::kGrey) return false;
      if (colour[next] == Colour::kWhite) {
        colour[next] = Colour::kGrey;
        stack.emplace_back(next, successors(next));
      }
    }
  }
  return true;
}

bool canonical_less(const ProblemInstance& a, const ProblemInstance& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.side_info() != b.side_info()) return a.side_info() < b.side_info();
  return std::lexicographical_compare(a.capacities().begin(), a.capacities().end(), b.capacities().begin(),
                                      b.capacities().end());
}

CanonicalForm canonical_form(const ProblemInstance& p) {
  std::vector<int> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  CanonicalForm best{p, perm};
  while (std::next_permutation(perm.begin(), perm.end())) {
    ProblemInstance candidate = p.relabeled(perm);
    if (canonical_less(candidate, best.instance)) best = {std::move(candidate), perm};
  }
  return best;
}

std::vector<ProblemInstance> enumerate_problems(int n, bool up_to_iso) {
  if (n < 1 || n > 4) throw InvalidInput("enumeration supports 1 <= n <= 4");
  std::vector<ProblemInstance> out;
  std::vector<std::vector<SubsetId>> choices(n);
  for (int j = 0; j < n; ++j) choices[j] = subsets_of(SubsetId::full(n).without(j));

  std::vector<std::size_t> index(n, 0);
  while (true) {
    std::vector<SubsetId> side(n);
    for (int j = 0; j < n; ++j) side[j] = choices[j][index[j]];
    out.push_back(ProblemInstance::with_unit_capacities(std::move(side)));
    int j = n - 1;
    while (j >= 0 && ++index[j] == choices[j].size()) index[j--] = 0;
    if (j < 0) break;
  }
  if (!up_to_iso) return out;

  std::vector<ProblemInstance> reps;
  reps.reserve(out.size());
  for (const auto& p : out) reps.push_back(canonical_form(p).instance);
  std::sort(reps.begin(), reps.end(), canonical_less);
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

}  // namespace dixc
