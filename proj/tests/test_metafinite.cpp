/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#include <gtest/gtest.h>

#include "print.hpp"
#include "pts/harness/gen.hpp"
#include "pts/harness/suites.hpp"
#include "pts/metafinite.hpp"
#include "pts/syntax/parser.hpp"
#include "pts/syntax/printer.hpp"

namespace pts {
namespace {

RStructure f12() {
  RStructure rs(Structure(2), "f", 1);
  rs.set({0}, 1);
  rs.set({1}, 2);
  return rs;
}

TEST(EvalNumterm, Examples) {
  RStructure rs = f12();
  EXPECT_EQ(eval_numterm(rs, {}, parse_numterm("SUM{u | u=u}(f(u))")), 3);
  EXPECT_EQ(eval_numterm(rs, {}, parse_numterm("SUM{u | !(u=u)}(f(u))")), 0);
  EXPECT_EQ(eval_numterm(rs, {}, parse_numterm("SUM{u | u=u}(f(u)) * SUM{u | u=u}(f(u))")), 9);
  EXPECT_EQ(eval_numterm(rs, {{"x", 1}}, parse_numterm("SUM{ | x=x}(f(x))")), 2);
  EXPECT_THROW(eval_numterm(rs, {}, parse_numterm("f(x)")), VarsNotInDomain);
}

TEST(EvalMf, NotranslWitness) {
  MfFormula psi = harness::detail::notransl_sentence(1);
  EXPECT_FALSE(eval_mf(f12(), {}, psi));
  RStructure scaled(Structure(2), "f", 1);
  scaled.set({0}, rational(1, 3));
  scaled.set({1}, rational(2, 3));
  EXPECT_TRUE(eval_mf(scaled, {}, psi));
}

TEST(EvalMf, TermAtMostItsSum) {
  MfFormula psi = parse_mf("forall u. SUM{ | u=u}(f(u)) <= SUM{w | w=w}(f(w))");
  EXPECT_TRUE(eval_mf(f12(), {}, psi));
  EXPECT_TRUE(eval_mf(RStructure(Structure(3), "f", 1), {}, psi));
}

TEST(EvalMf, Connectives) {
  Structure st(2);
  st.declare_relation("P", 1);
  st.add_tuple("P", {1});
  RStructure rs(st, "f", 1);
  rs.set({1}, 5);
  EXPECT_TRUE(eval_mf(rs, {}, parse_mf("exists x. (P(x) & f(x) <= f(x))")));
  EXPECT_FALSE(eval_mf(rs, {}, parse_mf("forall x. P(x)")));
  EXPECT_TRUE(eval_mf(rs, {}, parse_mf("forall x. (!P(x) \\/ SUM{ | x=x}(f(x)) <= f(x))")));
}

TEST(InSumStar, Examples) {
  EXPECT_TRUE(in_sum_star(parse_mf("SUM{u | u=#0}(f(u)) <= SUM{u | u=#1}(f(u))")));
  EXPECT_FALSE(in_sum_star(parse_mf("f(x) * f(y) <= f(x)")));
  EXPECT_FALSE(in_sum_star(parse_mf("f(x) <= f(x)")));
  EXPECT_TRUE(in_sum_star(parse_mf("SUM{ | u=u}(f(u)) <= SUM{ | !(u=u)}(f(u))")));
  EXPECT_TRUE(in_sum_star(parse_mf("SUM{u | u=u}(f(u,u)) <= SUM{u | u=u}(f(u,u))")));
  EXPECT_FALSE(in_sum_star(parse_mf("SUM{u | u=u}(f(x)) <= SUM{u | u=u}(f(u))")));
}

TEST(RStructure, Validation) {
  RStructure rs(Structure(2), "f", 1);
  EXPECT_THROW(rs.set({0, 0}, 1), ArityMismatch);
  EXPECT_THROW(rs.set({2}, 1), Error);
  EXPECT_THROW(rs.set({0}, -1), Error);
}

// Properties over random instances.

class MfProperties : public ::testing::TestWithParam<int> {};

TEST_P(MfProperties, GuardAdditivity) {
  harness::Gen g(harness::case_seed(31, GetParam()));
  RStructure rs = g.rstructure(3, 2);
  int n = rs.base().size();
  Qf g0 = g.delta({"u", "w"}, n, 2, true);
  Qf g1 = g.delta({"u", "w"}, n, 2, true);
  NumTerm body = mf::fn("f", {Term::var("u"), Term::var("w")});
  auto sum = [&](const Qf &guard) { return eval_numterm(rs, {}, mf::sum({"u", "w"}, body, guard)); };
  EXPECT_EQ(sum(qf::disj(g0, g1)) + sum(qf::conj(g0, g1)), sum(g0) + sum(g1));
}

TEST_P(MfProperties, ZeroAbbreviation) {
  harness::Gen g(harness::case_seed(32, GetParam()));
  RStructure rs = g.rstructure(3, 2);
  Element a = g.rng().below(rs.base().size()), b = g.rng().below(rs.base().size());
  std::vector<Term> args{Term::var("a"), Term::var("b")};
  Qf top = qf::eq(args[0], args[0]);
  MfFormula zero = mf::num_eq(mf::sum({}, mf::fn("f", args), top), mf::sum({}, mf::fn("f", args), qf::neg(top)));
  EXPECT_TRUE(in_sum_star(zero));
  EXPECT_EQ(eval_mf(rs, {{"a", a}, {"b", b}}, zero), rs.value({a, b}) == 0);
}

INSTANTIATE_TEST_SUITE_P(Random, MfProperties, ::testing::Range(0, 100));

} // namespace
} // namespace pts
