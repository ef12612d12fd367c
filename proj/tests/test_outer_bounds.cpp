#include <gtest/gtest.h>

#include "dixc/lp.hpp"
#include "dixc/outer_bounds.hpp"
#include "dixc/projection.hpp"
#include "oracles.hpp"

namespace dixc {
namespace {

const RationalVector kOnes3{1, 1, 1};

// Rate region given by rows "sum_{j in S} R_j <= rhs" plus R >= 0.
Polyhedron rate_rows(int n, const std::vector<std::pair<std::vector<int>, Rational>>& rows) {
  Polyhedron p = rate_polyhedron(n);
  for (const auto& [members, rhs] : rows) {
    LinearExpr e;
    for (int j : members) e[VariableId::rate(j - 1)] = 1;
    p.add_constraint(LinearInequality::less_equal(e, rhs));
  }
  return p;
}

std::vector<RationalVector> zero_one_directions(int n) {
  std::vector<RationalVector> out;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    RationalVector w(n);
    for (int j = 0; j < n; ++j) w[j] = (m >> j) & 1u;
    out.push_back(w);
  }
  return out;
}

TEST(Mais, ExampleRegionExactly) {
  const Polyhedron mais = build_mais(parse_problem("(1);(2|3);(3|2)"));
  std::vector<std::string> rows;
  for (const auto& row : mais.constraints()) {
    if (row.origin != "nonnegativity") rows.push_back(row.to_string());
  }
  EXPECT_EQ(rows, (std::vector<std::string>{"R_1 <= 4", "R_2 <= 4", "R_3 <= 4", "R_1 + R_2 <= 6", "R_1 + R_3 <= 6"}));
  EXPECT_TRUE(region_equal(mais, rate_rows(3, {{{1}, 4}, {{2}, 4}, {{3}, 4}, {{1, 2}, 6}, {{1, 3}, 6}})));
  for (const auto& row : mais.constraints()) {
    if (row.origin != "nonnegativity") {
      EXPECT_TRUE(row.origin.starts_with("mais:S=")) << row.origin;
    }
  }
}

TEST(Mais, SingletonRowSumsTouchingServers) {
  testing::Random rng(23);
  const ProblemInstance shape = parse_problem("(1);(2|3);(3|2)");
  for (int k = 0; k < 20; ++k) {
    RationalVector caps(8);
    for (std::size_t m = 1; m < 8; ++m) caps[m] = rng.capacity() + Rational(1, 8);
    const ProblemInstance p = shape.with_capacities(caps);
    const Rational want = caps[0b001] + caps[0b011] + caps[0b101] + caps[0b111];
    // The S = {1} bound is the support value in direction e_1.
    EXPECT_EQ(outer_support(p, OuterBoundKind::kMais, {1, 0, 0}), want);
  }
}

TEST(Mais, RowsMatchAcyclicSetsBruteForce) {
  // Unpruned rows built straight from the definition, one per acyclic S.
  for (const auto& p : enumerate_problems(3, true)) {
    const Polyhedron mais = build_mais(p);
    Polyhedron all = rate_polyhedron(3);
    for (SubsetId s : nonempty_subsets_display_order(3)) {
      if (!testing::acyclic_by_orderings(p, s)) continue;
      LinearExpr e;
      for (int j : s.elements()) e[VariableId::rate(j)] = 1;
      Rational rhs = 0;
      for (SubsetId server : nonempty_subsets_display_order(3)) {
        if (server.intersects(s)) rhs += p.capacity(server);
      }
      all.add_constraint(LinearInequality::less_equal(e, rhs));
    }
    EXPECT_TRUE(region_equal(mais, all)) << to_compact(p);
  }
}

TEST(OuterBounds, ZeroCapacitiesGiveOrigin) {
  const ProblemInstance p = parse_problem("(1);(2|3);(3|2)").with_capacities(RationalVector(8, Rational(0)));
  for (auto kind : {OuterBoundKind::kMais, OuterBoundKind::kPolymatroid, OuterBoundKind::kPolymatroidPlusCustom}) {
    const Polyhedron region = outer_region(p, kind);
    for (const auto& w : zero_one_directions(3)) {
      EXPECT_EQ(support(region, rate_objective(w)).value, 0);
      EXPECT_EQ(outer_support(p, kind, w), 0);
    }
  }
}

TEST(Polymatroid, Examples) {
  EXPECT_EQ(outer_support(parse_problem("(1|3);(2|1);(3|2)"), OuterBoundKind::kPolymatroid, kOnes3), 9);
  EXPECT_EQ(outer_support(parse_problem("(1);(2|3);(3|2)"), OuterBoundKind::kPolymatroid, kOnes3), 10);
  const ProblemInstance single = parse_problem("(1)", {{"1", Rational(7, 3)}});
  EXPECT_EQ(outer_support(single, OuterBoundKind::kPolymatroid, {1}), Rational(7, 3));
  EXPECT_TRUE(region_equal(outer_region(single, OuterBoundKind::kPolymatroid), rate_rows(1, {{{1}, Rational(7, 3)}})));
}

// The same bound with every pairwise submodular and monotone inequality
// instead of the elemental ones.
Polyhedron full_polymatroid(const ProblemInstance& p) {
  const int n = p.size();
  Polyhedron out = rate_polyhedron(n);
  for (SubsetId t : nonempty_subsets_display_order(n)) {
    auto f = [&](SubsetId s) { return VariableId::set_function(t, s); };
    for (SubsetId s : subsets_of(t)) out.add_variable(f(s));
    out.add_constraint(LinearInequality::equal({{f(SubsetId()), 1}}, 0));
    out.add_constraint(LinearInequality::equal({{f(t), 1}}, p.capacity_touching(t)));
    for (SubsetId a : subsets_of(t)) {
      for (SubsetId b : subsets_of(t)) {
        if (a.subset_of(b) && a != b) out.add_constraint(LinearInequality::less_equal({{f(a), 1}, {f(b), -1}}, 0));
        if (a.mask() < b.mask() && !a.subset_of(b) && !b.subset_of(a)) {
          LinearExpr e{{f(a | b), 1}, {f(a & b), 1}};
          e[f(a)] -= 1;
          e[f(b)] -= 1;
          out.add_constraint(LinearInequality::less_equal(e, 0));
        }
      }
    }
    for (int j : t.elements()) {
      const SubsetId b = interfering_set(p, j) & t;
      out.add_constraint(LinearInequality::less_equal({{VariableId::rate(j), 1}, {f(b.with(j)), -1}, {f(b), 1}}, 0));
    }
  }
  return out;
}

TEST(Polymatroid, ElementalFormMatchesFullForm) {
  testing::Random rng(29);
  for (int k = 0; k < 12; ++k) {
    const ProblemInstance p = rng.problem(2 + k % 2);
    const Polyhedron full = full_polymatroid(p);
    for (int d = 0; d < 5; ++d) {
      const RationalVector w = rng.direction(p.size());
      EXPECT_EQ(outer_support(p, OuterBoundKind::kPolymatroid, w), lp_max(rate_objective(w), full).value);
    }
  }
  EXPECT_EQ(lp_max(rate_objective(kOnes3), full_polymatroid(parse_problem("(1);(2|3);(3|2)"))).value, 10);
}

TEST(Polymatroid, ElementalImpliesFullSubmodularityAtVertices) {
  testing::Random rng(31);
  const ProblemInstance p = parse_problem("(1|4);(2|3,4);(3|1,2);(4|2,3)");
  const SubsetId t = p.ground();
  const Polyhedron block = build_polymatroid_block(p, t);
  for (int k = 0; k < 20; ++k) {
    LinearExpr objective;
    for (SubsetId s : subsets_of(t)) objective[VariableId::set_function(t, s)] = rng.uniform(-3, 3);
    const auto r = lp_max(objective, block);
    ASSERT_EQ(r.status, LpStatus::kOptimal);
    auto f = [&](SubsetId s) { return r.point.at(VariableId::set_function(t, s)); };
    for (SubsetId a : subsets_of(t)) {
      for (SubsetId b : subsets_of(t)) {
        EXPECT_LE(f(a | b) + f(a & b), f(a) + f(b));
        if (a.subset_of(b)) {
          EXPECT_LE(f(a), f(b));
        }
      }
    }
  }
}

TEST(CustomCuts, Examples) {
  const auto cuts = custom_cuts(parse_problem("(1);(2|3);(3|2)"));
  ASSERT_EQ(cuts.size(), 1u);
  EXPECT_EQ(cuts[0].to_string(), "R_1 + R_2 + R_3 <= 9");
  EXPECT_EQ(cuts[0].origin, kCustomCutOrigin);
  EXPECT_TRUE(custom_cuts(parse_problem("(1|2,3);(2|1,3);(3|1,2)")).empty());
  EXPECT_TRUE(custom_cuts(parse_problem("(1|3);(2|3);(3|2)")).empty());
  EXPECT_TRUE(custom_cuts(parse_problem("(1);(2)")).empty());
  const auto variant = custom_cuts(parse_problem("(1);(2|1,3);(3|2)"));
  ASSERT_EQ(variant.size(), 1u);
  EXPECT_EQ(variant[0].rhs, 9);
  // Relabeled pattern: receiver 2 has no side information, 1 and 3 form the cycle.
  const auto relabeled = custom_cuts(parse_problem("(1|3);(2);(3|1)", {{"1,3", Rational(1, 2)}, {"1,2,3", 2}}));
  ASSERT_EQ(relabeled.size(), 1u);
  // Five unit servers plus C_{1,3} and C_{1,2,3}, then C_{1,3} and C_{1,2,3} once more.
  EXPECT_EQ(relabeled[0].rhs, Rational(5) + Rational(1, 2) + 2 + Rational(1, 2) + 2);
}

TEST(OuterRegion, PolymatroidPlusCustomExample) {
  const Polyhedron region = outer_region(parse_problem("(1);(2|3);(3|2)"), OuterBoundKind::kPolymatroidPlusCustom);
  EXPECT_TRUE(region_equal(region, rate_rows(3, {{{1}, 4}, {{2}, 4}, {{3}, 4}, {{1, 2}, 6}, {{1, 3}, 6}, {{2, 3}, 8},
                                                 {{1, 2, 3}, 9}})));
  const std::vector<Rational> cells{4, 4, 4, 6, 6, 8, 9};
  const std::vector<RationalVector> columns{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  for (std::size_t c = 0; c < columns.size(); ++c) {
    EXPECT_EQ(support(region, rate_objective(columns[c])).value, cells[c]);
  }
}

TEST(OuterRegion, MaisContainsPolymatroidOnAllProblems) {
  for (const auto& p : enumerate_problems(3, true)) {
    const Polyhedron mais = outer_region(p, OuterBoundKind::kMais);
    const Polyhedron poly = outer_region(p, OuterBoundKind::kPolymatroid);
    EXPECT_TRUE(region_contains(mais, poly)) << to_compact(p);
    for (const auto& w : zero_one_directions(3)) {
      EXPECT_LE(support(poly, rate_objective(w)).value, support(mais, rate_objective(w)).value);
    }
  }
}

TEST(OuterBounds, MonotoneInCapacities) {
  testing::Random rng(37);
  for (int k = 0; k < 15; ++k) {
    const ProblemInstance p = rng.problem(2 + k % 2);
    RationalVector caps = p.capacities();
    caps[rng.uniform(1, static_cast<int>(caps.size()) - 1)] += Rational(rng.uniform(1, 4), 3);
    const ProblemInstance raised = p.with_capacities(caps);
    for (int d = 0; d < 5; ++d) {
      const RationalVector w = rng.direction(p.size());
      for (auto kind : {OuterBoundKind::kMais, OuterBoundKind::kPolymatroid}) {
        EXPECT_LE(outer_support(p, kind, w), outer_support(raised, kind, w));
      }
    }
  }
}

TEST(OuterBounds, RegionRelabelingEquivariance) {
  testing::Random rng(41);
  for (int k = 0; k < 10; ++k) {
    const ProblemInstance p = rng.problem(3);
    const auto sigma = rng.permutation(3);
    for (auto kind : {OuterBoundKind::kMais, OuterBoundKind::kPolymatroid}) {
      const Polyhedron region = outer_region(p, kind);
      Polyhedron mapped = rate_polyhedron(3);
      for (const auto& row : region.constraints()) {
        LinearExpr e;
        for (const auto& [v, c] : row.coeffs) e[VariableId::rate(sigma[v.receiver])] = c;
        mapped.add_constraint(LinearInequality::less_equal(e, row.rhs));
      }
      EXPECT_TRUE(region_equal(mapped, outer_region(testing::relabel(p, sigma), kind)));
    }
  }
}

TEST(Mais, CentralizedReduction) {
  // Only the server holding every message has capacity 1: each acyclic S
  // is bounded by 1, the classical MAIS bound.
  for (const auto& shape : enumerate_problems(3, true)) {
    RationalVector caps(8);
    caps[7] = 1;
    const ProblemInstance p = shape.with_capacities(caps);
    const Polyhedron mais = build_mais(p);
    Polyhedron classical = rate_polyhedron(3);
    for (SubsetId s : nonempty_subsets_display_order(3)) {
      if (!testing::acyclic_by_orderings(p, s)) continue;
      LinearExpr e;
      for (int j : s.elements()) e[VariableId::rate(j)] = 1;
      classical.add_constraint(LinearInequality::less_equal(e, 1));
    }
    EXPECT_TRUE(region_equal(mais, classical)) << to_compact(p);
    for (const auto& row : mais.constraints()) {
      if (row.origin != "nonnegativity") {
        EXPECT_EQ(row.rhs, 1);
      }
    }
  }
}

}  // namespace
}  // namespace dixc
