/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "pts/event.hpp"
#include "pts/harness/gen.hpp"
#include "pts/io/json.hpp"
#include "pts/structures.hpp"

namespace pts {
namespace {

ProbTeam team_x(std::initializer_list<std::pair<Element, Weight>> rows) {
  ProbTeam t({"x"});
  for (const auto &[a, w] : rows)
    t.add(Tuple{a}, w);
  return t;
}

ProbTeam uniform_xy() {
  ProbTeam t({"x", "y"});
  for (Element a = 0; a < 2; ++a)
    for (Element b = 0; b < 2; ++b)
      t.add(Tuple{a, b}, rational(1, 4));
  return t;
}

TEST(Weight, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), rational(1, 2));
  EXPECT_EQ(parse_rational("-2"), rational(-2));
  EXPECT_EQ(to_string(rational(4, 6)), "2/3");
  EXPECT_EQ(to_string(rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
}

TEST(Support, Examples) {
  EXPECT_EQ(support(team_x({{0, 1}, {1, 2}})).size(), 2u);
  auto s = support(team_x({{0, 0}, {1, 2}}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].at("x"), 1);
  EXPECT_TRUE(support(ProbTeam({"x"})).empty());
}

TEST(Distr, Examples) {
  EXPECT_EQ(distr(team_x({{0, 1}, {1, 2}})), team_x({{0, rational(1, 3)}, {1, rational(2, 3)}}));
  EXPECT_EQ(distr(team_x({{0, rational(1, 2)}})), team_x({{0, 1}}));
  EXPECT_THROW(distr(team_x({{0, 0}, {1, 0}})), NonemptyRequired);
}

TEST(Extend, FreshVariable) {
  ProbTeam got = extend(team_x({{0, 1}, {1, 2}}), 0, "y");
  ProbTeam want({"x", "y"});
  want.add(Tuple{0, 0}, 1);
  want.add(Tuple{1, 0}, 2);
  EXPECT_EQ(got, want);
  EXPECT_EQ(got.weight({0, 1}), 0);
  EXPECT_EQ(got.weight({1, 1}), 0);
}

TEST(Extend, ExistingVariableCollapses) {
  ProbTeam t({"x", "y"});
  t.add(Tuple{0, 1}, 3);
  ProbTeam want({"x", "y"});
  want.add(Tuple{0, 0}, 3);
  EXPECT_EQ(extend(t, 0, "y"), want);
  t.add(Tuple{0, 0}, 2);
  EXPECT_EQ(extend(t, 0, "y").weight({0, 0}), 5);
}

TEST(Extend, EmptyTeam) { EXPECT_TRUE(extend(ProbTeam({"x"}), 1, "y").empty()); }

TEST(Restrict, Examples) {
  EXPECT_EQ(restrict(uniform_xy(), {"x"}), team_x({{0, rational(1, 2)}, {1, rational(1, 2)}}));
  EXPECT_EQ(restrict(uniform_xy(), {"x", "y"}), uniform_xy());
  ProbTeam none = restrict(uniform_xy(), {});
  EXPECT_EQ(none.rows().size(), 1u);
  EXPECT_EQ(none.weight({}), 1);
  EXPECT_THROW(restrict(uniform_xy(), {"z"}), VarsNotInDomain);
}

TEST(EventWeight, Examples) {
  Structure st(2);
  ProbTeam t = team_x({{0, 1}, {1, 2}});
  Term x = Term::var("x");
  EXPECT_EQ(event_weight(st, t, qf::eq(x, Term::lit(1))), 2);
  EXPECT_EQ(event_weight(st, t, qf::neg(qf::eq(x, x))), 0);
  EXPECT_EQ(event_weight(st, t, qf::eq(x, x)), 3);
  EXPECT_THROW(event_weight(st, t, qf::eq(Term::var("y"), x)), VarsNotInDomain);
}

TEST(Structure, Validation) {
  Structure st(2);
  st.declare_relation("R", 2);
  EXPECT_THROW(st.add_tuple("R", {0}), ArityMismatch);
  EXPECT_THROW(st.add_tuple("R", {0, 2}), Error);
  EXPECT_THROW(Structure(0), Error);
  ProbTeam t({"x"});
  EXPECT_THROW(t.add(Tuple{0}, -1), Error);
}

TEST(Json, RoundTrip) {
  Structure st(3);
  st.declare_relation("P", 1);
  st.declare_relation("R", 2);
  st.add_tuple("R", {0, 2});
  st.set_constant("c", 1);
  Structure back = io::structure_from_json(io::to_json(st));
  EXPECT_EQ(io::to_json(back), io::to_json(st));
  EXPECT_EQ(back.constant("c"), 1);

  ProbTeam t = uniform_xy();
  EXPECT_EQ(io::team_from_json(io::to_json(t)), t);
  EXPECT_THROW(io::team_from_json(io::json::parse(R"({"variables":["x"],"rows":[{"assignment":[0,1],"weight":1}]})")),
               ArityMismatch);
}

// Properties over random teams.

class TeamProperties : public ::testing::TestWithParam<int> {};

TEST_P(TeamProperties, Invariants) {
  harness::Gen g(harness::case_seed(11, GetParam()));
  int n = 1 + g.rng().below(3);
  ProbTeam team = g.team(n, g.vars({"x", "y", "z"}), false);

  VarSet v;
  for (const auto &x : team.vars())
    if (g.rng().coin())
      v.push_back(x);
  EXPECT_EQ(restrict(team, v).total(), team.total());

  ProbTeam ext = extend(team, g.rng().below(n), "w");
  EXPECT_EQ(restrict(ext, team.vars()), team);

  if (!team.empty()) {
    EXPECT_EQ(distr(team).total(), 1);
  }

  // additivity over disjoint events
  Structure st(n);
  if (!team.vars().empty()) {
    Term x = Term::var(team.vars().front());
    Qf d0 = qf::eq(x, Term::lit(0));
    Qf d1 = qf::neg(qf::eq(x, Term::lit(0)));
    Qf either = qf::neg(qf::conj(qf::neg(d0), qf::neg(d1)));
    EXPECT_EQ(event_weight(st, team, either), event_weight(st, team, d0) + event_weight(st, team, d1));
    // marginal agrees with the event weight of the matching δ
    for (Element a = 0; a < n; ++a)
      EXPECT_EQ(oracle::marginal(team, {x.name}, {a}), event_weight(st, team, qf::eq(x, Term::lit(a))));
  }
}

INSTANTIATE_TEST_SUITE_P(Random, TeamProperties, ::testing::Range(0, 100));

} // namespace
} // namespace pts
