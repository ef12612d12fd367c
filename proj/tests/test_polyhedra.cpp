#include <gtest/gtest.h>

#include "dixc/errors.hpp"
#include "dixc/inner_bounds.hpp"
#include "dixc/lp.hpp"
#include "dixc/outer_bounds.hpp"
#include "dixc/projection.hpp"
#include "oracles.hpp"

namespace dixc {
namespace {

const VariableId x = VariableId::rate(0);
const VariableId y = VariableId::rate(1);

LinearInequality le(std::initializer_list<std::pair<const VariableId, Rational>> coeffs, Rational rhs) {
  return LinearInequality::less_equal(LinearExpr(coeffs), std::move(rhs));
}

// Random bounded-or-not system over `width` rate variables with small
// integer data; nonnegativity is included with probability 1/2 per variable.
Polyhedron random_polyhedron(testing::Random& rng, int width, int rows) {
  Polyhedron p;
  for (int k = 0; k < width; ++k) {
    if (rng.uniform(0, 1) == 0) {
      p.add_nonnegative(VariableId::rate(k));
    } else {
      p.add_variable(VariableId::rate(k));
    }
  }
  for (int r = 0; r < rows; ++r) {
    LinearExpr e;
    for (int k = 0; k < width; ++k) {
      const int c = rng.uniform(-2, 3);
      if (c != 0) e[VariableId::rate(k)] = c;
    }
    if (e.empty()) continue;
    p.add_constraint(LinearInequality::less_equal(e, rng.uniform(0, 6)));
  }
  return p;
}

LinearExpr random_objective(testing::Random& rng, int width) {
  LinearExpr e;
  for (int k = 0; k < width; ++k) {
    const int c = rng.uniform(-3, 3);
    if (c != 0) e[VariableId::rate(k)] = c;
  }
  return e;
}

TEST(Lp, BoxExample) {
  Polyhedron p;
  p.add_nonnegative(x);
  p.add_nonnegative(y);
  p.add_constraint(le({{x, 1}}, 1));
  p.add_constraint(le({{y, 1}}, 1));
  const auto r = lp_max({{x, 1}, {y, 1}}, p);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, 2);
  EXPECT_EQ(r.point.at(x), 1);
  EXPECT_EQ(r.point.at(y), 1);
}

TEST(Lp, UnboundedAndInfeasible) {
  Polyhedron open;
  open.add_nonnegative(x);
  EXPECT_EQ(lp_max({{x, 1}}, open).status, LpStatus::kUnbounded);
  EXPECT_EQ(lp_max({{x, -1}}, open).value, 0);

  Polyhedron empty = open;
  empty.add_constraint(le({{x, 1}}, -1));
  EXPECT_EQ(lp_max({{x, 1}}, empty).status, LpStatus::kInfeasible);

  Polyhedron free_var;
  free_var.add_variable(x);
  free_var.add_constraint(le({{x, 1}}, 3));
  EXPECT_EQ(lp_max({{x, 1}}, free_var).value, 3);
  EXPECT_EQ(lp_max({{x, -1}}, free_var).status, LpStatus::kUnbounded);
}

TEST(Lp, EqualitiesAndZeroObjective) {
  Polyhedron p;
  p.add_nonnegative(x);
  p.add_nonnegative(y);
  p.add_constraint(LinearInequality::equal({{x, 1}, {y, 2}}, 4));
  EXPECT_EQ(lp_max({{x, 1}}, p).value, 4);
  EXPECT_EQ(lp_max({{y, 1}}, p).value, 2);
  EXPECT_EQ(lp_max({}, p).value, 0);
}

TEST(Lp, MaisExampleSumRate) {
  const Polyhedron mais = build_mais(parse_problem("(1);(2|3);(3|2)"));
  EXPECT_EQ(lp_max(rate_objective({1, 1, 1}), mais).value, 10);
}

TEST(Lp, RejectsUndeclaredObjectiveVariable) {
  Polyhedron p;
  p.add_nonnegative(x);
  EXPECT_THROW(lp_max({{y, 1}}, p), InvalidInput);
  EXPECT_THROW(p.add_constraint(le({{y, 1}}, 1)), InvalidInput);
}

TEST(Lp, PointAndDualCertificate) {
  testing::Random rng(3);
  int optimal = 0;
  for (int k = 0; k < 150; ++k) {
    const Polyhedron p = random_polyhedron(rng, 3, 5);
    const LinearExpr c = random_objective(rng, 3);
    const auto r = lp_max(c, p);
    if (r.status != LpStatus::kOptimal) continue;
    ++optimal;
    for (const auto& row : p.constraints()) EXPECT_TRUE(row.satisfied_by(r.point));
    ASSERT_EQ(r.dual.size(), p.constraints().size());
    LinearExpr combined;
    Rational bound = 0;
    for (std::size_t i = 0; i < r.dual.size(); ++i) {
      const auto& row = p.constraints()[i];
      if (row.relation == Relation::kLessEqual) {
        EXPECT_GE(r.dual[i], 0);
      }
      for (const auto& [v, a] : row.coeffs) combined[v] += r.dual[i] * a;
      bound += r.dual[i] * row.rhs;
    }
    for (const auto& v : p.variables()) {
      const Rational want = c.contains(v) ? c.at(v) : Rational(0);
      EXPECT_EQ(combined.contains(v) ? combined.at(v) : Rational(0), want);
    }
    EXPECT_EQ(bound, r.value);
  }
  EXPECT_GT(optimal, 40);
}

TEST(Lp, AgreesWithVertexEnumeration) {
  testing::Random rng(5);
  for (int k = 0; k < 300; ++k) {
    const int width = 2 + k % 3;
    const Polyhedron p = random_polyhedron(rng, width, 3 + k % 4);
    const LinearExpr c = random_objective(rng, width);
    RationalVector dense(width);
    for (const auto& [v, a] : c) dense[p.index_of(v)] = a;
    const auto oracle = testing::vertex_max(dense, to_dense(p), width);
    const auto r = lp_max(c, p);
    if (oracle) {
      ASSERT_EQ(r.status, LpStatus::kOptimal) << k;
      EXPECT_EQ(r.value, *oracle) << k;
    } else {
      EXPECT_NE(r.status, LpStatus::kOptimal) << k;
    }
  }
}

TEST(Lp, DegenerateCyclingExample) {
  // Beale's example cycles under the textbook largest-coefficient rule.
  std::vector<VariableId> v;
  Polyhedron p;
  for (int k = 0; k < 4; ++k) {
    v.push_back(VariableId::rate(k));
    p.add_nonnegative(v.back());
  }
  p.add_constraint(le({{v[0], Rational(1, 4)}, {v[1], -8}, {v[2], -1}, {v[3], 9}}, 0));
  p.add_constraint(le({{v[0], Rational(1, 2)}, {v[1], -12}, {v[2], Rational(-1, 2)}, {v[3], 3}}, 0));
  p.add_constraint(le({{v[2], 1}}, 1));
  const auto r = lp_max({{v[0], Rational(3, 4)}, {v[1], -20}, {v[2], Rational(1, 2)}, {v[3], -6}}, p);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, Rational(5, 4));
}

TEST(Polyhedron, NamesAndJsonRoundTrip) {
  const std::vector<VariableId> vars{VariableId::rate(0), VariableId::group_rate(2, 1),
                                     VariableId::composite(SubsetId(0b101), SubsetId(0b111)),
                                     VariableId::set_function(SubsetId(0b011), SubsetId(0b001)),
                                     VariableId::set_function(SubsetId(0b011), SubsetId())};
  const std::vector<std::string> names{"R_1", "R_{3,P2}", "C_{1,3|1,2,3}", "f_{1,2}(1)", "f_{1,2}()"};
  for (std::size_t k = 0; k < vars.size(); ++k) {
    EXPECT_EQ(vars[k].name(), names[k]);
    EXPECT_EQ(VariableId::parse(names[k]), vars[k]);
  }
  EXPECT_THROW(VariableId::parse("Q_1"), ParseError);

  const Polyhedron region = outer_region(parse_problem("(1);(2|3);(3|2)"), OuterBoundKind::kPolymatroidPlusCustom);
  const auto doc = region.to_json();
  EXPECT_EQ(doc["vars"][0], "R_1");
  const Polyhedron back = Polyhedron::from_json(nlohmann::json::parse(doc.dump()));
  EXPECT_EQ(back.to_json(), doc);
  EXPECT_TRUE(region_equal(back, region));
}

TEST(Fm, SmallExample) {
  Polyhedron p;
  p.add_nonnegative(x);
  p.add_nonnegative(y);
  p.add_constraint(le({{x, 1}, {y, 1}}, 2));
  const Polyhedron q = fm_eliminate(p, {y});
  ASSERT_EQ(q.variables(), std::vector<VariableId>{x});
  Polyhedron want;
  want.add_nonnegative(x);
  want.add_constraint(le({{x, 1}}, 2));
  EXPECT_TRUE(region_equal(q, want));
  EXPECT_EQ(q.constraints().size(), 2u);
}

TEST(Fm, SubstitutesEqualities) {
  Polyhedron p;
  p.add_nonnegative(x);
  p.add_variable(y);
  p.add_constraint(LinearInequality::equal({{x, 1}, {y, -2}}, 0));
  p.add_constraint(le({{y, 1}}, 3));
  const Polyhedron q = fm_eliminate(p, {y});
  EXPECT_EQ(support(q, {{x, 1}}).value, 6);
}

TEST(Fm, SchemeBSumRate) {
  const ProblemInstance p = parse_problem("(1|3);(2|1);(3|2)");
  const ServerGroup all = ServerGrouping::single_group(3).groups().front();
  const Polyhedron region = group_region(p, all, complement_rule(p, all));
  for (const auto& v : region.variables()) EXPECT_EQ(v.kind, VarKind::kGroupRate);
  LinearExpr sum;
  for (int j = 0; j < 3; ++j) sum[VariableId::group_rate(j, 0)] = 1;
  EXPECT_EQ(support(region, sum).value, 9);
}

TEST(Fm, SupportOracleAndOrderIndependence) {
  testing::Random rng(13);
  for (int k = 0; k < 25; ++k) {
    const int width = 4;
    const Polyhedron p = random_polyhedron(rng, width, 7);
    if (lp_max({}, p).status == LpStatus::kInfeasible) continue;
    const std::vector<VariableId> drop{VariableId::rate(2), VariableId::rate(3)};
    const Polyhedron a = fm_eliminate(p, drop);
    const Polyhedron b = fm_eliminate(fm_eliminate(p, {drop[1]}), {drop[0]});
    std::vector<LinearExpr> dirs;
    for (int d = 0; d < 50; ++d) dirs.push_back(random_objective(rng, 2));
    for (const auto& w : dirs) {
      const Support direct = support(p, w);
      const Support projected = support(a, w);
      EXPECT_EQ(direct.bounded, projected.bounded);
      if (direct.bounded) {
        EXPECT_EQ(direct.value, projected.value);
      }
    }
    EXPECT_TRUE(support_equal(a, b, dirs));
  }
}

TEST(RemoveRedundant, Examples) {
  Polyhedron p;
  p.add_nonnegative(x);
  p.add_constraint(le({{x, 1}}, 1));
  p.add_constraint(le({{x, 1}}, 2));
  const Polyhedron q = remove_redundant(p);
  ASSERT_EQ(q.constraints().size(), 2u);
  EXPECT_EQ(q.constraints()[1].rhs, 1);

  Polyhedron empty = p;
  empty.add_constraint(le({{x, -1}}, -3));
  EXPECT_THROW(remove_redundant(empty), InfeasibleError);
}

TEST(RemoveRedundant, IrredundantIdempotentAndSupportPreserving) {
  testing::Random rng(17);
  for (int k = 0; k < 40; ++k) {
    const Polyhedron p = random_polyhedron(rng, 3, 8);
    if (lp_max({}, p).status == LpStatus::kInfeasible) continue;
    const Polyhedron q = remove_redundant(p);
    EXPECT_TRUE(region_equal(p, q));
    const Polyhedron again = remove_redundant(q);
    EXPECT_EQ(again.constraints().size(), q.constraints().size());
    EXPECT_TRUE(region_equal(again, q));
    for (int d = 0; d < 50; ++d) {
      const LinearExpr w = random_objective(rng, 3);
      const Support a = support(p, w), b = support(q, w);
      EXPECT_EQ(a.bounded, b.bounded);
      if (a.bounded) {
        EXPECT_EQ(a.value, b.value);
      }
    }
    // Dropping any remaining inequality enlarges the set.
    for (std::size_t i = 0; i < q.constraints().size(); ++i) {
      const auto& row = q.constraints()[i];
      if (row.relation != Relation::kLessEqual) continue;
      Polyhedron without(q.variables());
      for (std::size_t j = 0; j < q.constraints().size(); ++j) {
        if (j != i) without.add_constraint(q.constraints()[j]);
      }
      const auto r = lp_max(row.coeffs, without);
      EXPECT_TRUE(r.status == LpStatus::kUnbounded || r.value > row.rhs) << row.to_string();
    }
  }
}

TEST(SupportEqual, Examples) {
  const Polyhedron mais = build_mais(parse_problem("(1);(2|3);(3|2)"));
  EXPECT_TRUE(support_equal(mais, remove_redundant(mais), {rate_objective({1, 1, 1}), rate_objective({1, 0, 2})}));

  // On the 3-cycle the three pair rows of MAIS already give 9, the
  // polymatroid value; the vertex enumeration oracle confirms it.
  const ProblemInstance cycle = parse_problem("(1|3);(2|1);(3|2)");
  const Polyhedron a = build_mais(cycle);
  const Polyhedron b = outer_region(cycle, OuterBoundKind::kPolymatroid);
  EXPECT_EQ(*testing::vertex_max({1, 1, 1}, to_dense(a), 3), 9);
  EXPECT_EQ(support(a, rate_objective({1, 1, 1})).value, 9);
  EXPECT_EQ(support(b, rate_objective({1, 1, 1})).value, 9);
  EXPECT_TRUE(support_equal(a, b, {rate_objective({1, 1, 1})}));

  const ProblemInstance p = parse_problem("(1);(2|3);(3|2)");
  const Polyhedron c = outer_region(p, OuterBoundKind::kPolymatroidPlusCustom);
  EXPECT_EQ(*testing::vertex_max({1, 1, 1}, to_dense(mais), 3), 10);
  EXPECT_EQ(support(c, rate_objective({1, 1, 1})).value, 9);
  EXPECT_FALSE(support_equal(mais, c, {rate_objective({1, 1, 1})}));
  EXPECT_TRUE(support_equal(mais, c, {rate_objective({1, 0, 0}), rate_objective({1, 1, 0})}));
}

}  // namespace
}  // namespace dixc
