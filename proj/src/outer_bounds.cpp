#include "dixc/outer_bounds.hpp"

#include <algorithm>
#include <numeric>

#include "dixc/errors.hpp"
#include "dixc/lp.hpp"
#include "dixc/projection.hpp"

namespace dixc {

std::string_view to_string(OuterBoundKind kind) {
  switch (kind) {
    case OuterBoundKind::kMais:
      return "mais";
    case OuterBoundKind::kPolymatroid:
      return "polymatroid";
    case OuterBoundKind::kPolymatroidPlusCustom:
      return "polymatroid+custom";
  }
  return {};
}

Polyhedron rate_polyhedron(int n) {
  Polyhedron out;
  for (int j = 0; j < n; ++j) out.add_nonnegative(VariableId::rate(j));
  return out;
}

Polyhedron build_mais(const ProblemInstance& p) {
  Polyhedron out = rate_polyhedron(p.size());
  for (SubsetId s : nonempty_subsets_display_order(p.size())) {
    if (!is_acyclic_induced(p, s)) continue;
    LinearExpr lhs;
    for (int j : s.elements()) lhs[VariableId::rate(j)] = 1;
    // T = S is the tightest choice: the right-hand side only grows with T.
    out.add_constraint(LinearInequality::less_equal(lhs, p.capacity_touching(s), "mais:S=" + s.key()));
  }
  return remove_redundant(out);
}

namespace {

void add_block(Polyhedron& out, const ProblemInstance& p, SubsetId t) {
  auto f = [t](SubsetId s) { return VariableId::set_function(t, s); };
  const auto subsets = subsets_of(t);
  for (SubsetId s : subsets) out.add_variable(f(s));

  out.add_constraint(LinearInequality::equal({{f(SubsetId()), Rational(1)}}, 0, "polymatroid"));
  out.add_constraint(LinearInequality::equal({{f(t), Rational(1)}}, p.capacity_touching(t), "polymatroid"));

  for (SubsetId s : subsets) {
    const auto missing = (t - s).elements();
    for (int i : missing) {
      // f(S) <= f(S u {i})
      out.add_constraint(
          LinearInequality::less_equal({{f(s), Rational(1)}, {f(s.with(i)), Rational(-1)}}, 0, "polymatroid"));
    }
    for (std::size_t a = 0; a < missing.size(); ++a) {
      for (std::size_t b = a + 1; b < missing.size(); ++b) {
        const int i = missing[a];
        const int k = missing[b];
        // f(S u {i,k}) + f(S) <= f(S u {i}) + f(S u {k})
        LinearExpr lhs{{f(s.with(i).with(k)), Rational(1)},
                       {f(s), Rational(1)},
                       {f(s.with(i)), Rational(-1)},
                       {f(s.with(k)), Rational(-1)}};
        out.add_constraint(LinearInequality::less_equal(lhs, 0, "polymatroid"));
      }
    }
  }

  for (int j : t.elements()) {
    const SubsetId interfering = interfering_set(p, j) & t;
    // R_j <= f(B u {j}) - f(B)
    LinearExpr lhs{{VariableId::rate(j), Rational(1)}, {f(interfering.with(j)), Rational(-1)}};
    lhs[f(interfering)] += 1;
    out.add_constraint(LinearInequality::less_equal(lhs, 0, "polymatroid"));
  }
}

}  // namespace

Polyhedron build_polymatroid(const ProblemInstance& p) {
  Polyhedron out = rate_polyhedron(p.size());
  for (std::uint32_t m = 1; m <= p.ground().mask(); ++m) add_block(out, p, SubsetId(m));
  return out;
}

Polyhedron build_polymatroid_block(const ProblemInstance& p, SubsetId t) {
  Polyhedron out;
  for (int j : t.elements()) out.add_nonnegative(VariableId::rate(j));
  add_block(out, p, t);
  return out;
}

std::vector<LinearInequality> custom_cuts(const ProblemInstance& p) {
  std::vector<LinearInequality> out;
  if (p.size() != 3) return out;
  Rational total = 0;
  for (std::uint32_t m = 1; m <= p.ground().mask(); ++m) total += p.capacity(SubsetId(m));

  std::vector<int> sigma{0, 1, 2};
  do {
    const int lone = sigma[0];
    const int a = sigma[1];
    const int b = sigma[2];
    if (!p.side_info(lone).empty()) continue;
    if (!p.side_info(b).contains(a) || !p.side_info(a).contains(b)) continue;
    const SubsetId pair = SubsetId::singleton(a).with(b);
    LinearExpr lhs;
    for (int j = 0; j < 3; ++j) lhs[VariableId::rate(j)] = 1;
    auto cut = LinearInequality::less_equal(lhs, total + p.capacity(pair) + p.capacity(p.ground()),
                                            std::string(kCustomCutOrigin));
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const LinearInequality& c) {
      return c.coeffs == cut.coeffs && c.rhs == cut.rhs;
    });
    if (!duplicate) out.push_back(std::move(cut));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

Polyhedron outer_region(const ProblemInstance& p, OuterBoundKind kind) {
  if (kind == OuterBoundKind::kMais) return build_mais(p);

  Polyhedron out = rate_polyhedron(p.size());
  // The f_T blocks share only rate variables, so each projects on its own.
  for (std::uint32_t m = 1; m <= p.ground().mask(); ++m) {
    const Polyhedron block = build_polymatroid_block(p, SubsetId(m));
    std::vector<VariableId> drop;
    for (const auto& v : block.variables()) {
      if (v.kind == VarKind::kSetFunction) drop.push_back(v);
    }
    const Polyhedron projected = fm_eliminate(block, drop);
    for (const auto& row : projected.constraints()) {
      LinearInequality tagged = row;
      tagged.origin = "polymatroid";
      out.add_constraint(std::move(tagged));
    }
  }
  if (kind == OuterBoundKind::kPolymatroidPlusCustom) {
    for (auto& cut : custom_cuts(p)) out.add_constraint(std::move(cut));
  }
  return remove_redundant(out);
}

Rational outer_support(const ProblemInstance& p, OuterBoundKind kind, const RationalVector& weights) {
  if (static_cast<int>(weights.size()) != p.size()) throw InvalidInput("weight vector length must equal n");
  Polyhedron lifted = kind == OuterBoundKind::kMais ? build_mais(p) : build_polymatroid(p);
  if (kind == OuterBoundKind::kPolymatroidPlusCustom) {
    for (auto& cut : custom_cuts(p)) lifted.add_constraint(std::move(cut));
  }
  const auto r = lp_max(rate_objective(weights), lifted);
  if (r.status != LpStatus::kOptimal) throw std::logic_error("outer bound LP is not bounded");
  return r.value;
}

}  // namespace dixc
