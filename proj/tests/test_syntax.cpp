/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#include <gtest/gtest.h>

#include "print.hpp"
#include "pts/harness/gen.hpp"
#include "pts/syntax/ops.hpp"
#include "pts/syntax/parser.hpp"
#include "pts/syntax/printer.hpp"

namespace pts {
namespace {

Term v(const char *name) { return Term::var(name); }
Term lit(Element e) { return Term::lit(e); }

TEST(Parse, Examples) {
  Fopt f = parse("A1 x. ((x=0) <= (x=1))", Dialect::FOPT_leq);
  EXPECT_EQ(f, fo::forall1("x", fo::leq(qf::eq(v("x"), lit(0)), qf::eq(v("x"), lit(1)))));
  EXPECT_THROW(parse("ci(x=x; y=0; z=0)", Dialect::FOPT_leq), DialectError);
  EXPECT_EQ(parse_numterm("SUM{u | u=u}(f(u))"), mf::sum({"u"}, mf::fn("f", {v("u")}), qf::eq(v("u"), v("u"))));
}

TEST(Parse, Atoms) {
  Fopt ci = parse_any("ci(x=x; y=#0; z=#0)");
  EXPECT_EQ(ci, fo::ci(qf::eq(v("x"), v("x")), qf::eq(v("y"), lit(0)), qf::eq(v("z"), lit(0))));
  Fopt cpi = parse_any("cpi(P(x) | x=x, x=0 | !P(x))");
  ASSERT_NE(cpi.as<fo::CondProbLeq>(), nullptr);
  EXPECT_EQ(parse_any("inc(x,y ; u,v)"), fo::incl({v("x"), v("y")}, {v("u"), v("v")}));
  EXPECT_EQ(parse_any("x = $c"), fo::delta(qf::eq(v("x"), Term::constant("c"))));
  EXPECT_EQ(parse_any("~P(x) \\/ E1 y. R(x,y)"),
            fo::weak_or(fo::dotneg(fo::delta(qf::atom("P", {v("x")}))),
                        fo::exists1("y", fo::delta(qf::atom("R", {v("x"), v("y")})))));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_any("(x=0) <= ("), SyntaxError);
  EXPECT_THROW(parse_any("A1 . P(x)"), SyntaxError);
  EXPECT_THROW(parse_any("P(x) P(y)"), SyntaxError);
  try {
    parse_any("P(x) & & P(y)");
    FAIL();
  } catch (const SyntaxError &e) {
    EXPECT_NE(std::string(e.what()).find("offset"), std::string::npos);
  }
  EXPECT_THROW(parse("inc(x ; y)", Dialect::FOTdown), DialectError);
  EXPECT_THROW(parse("~P(x)", Dialect::FOTdown), DialectError);
}

TEST(FreeVars, Examples) {
  Fopt f = fo::forall1("x", fo::leq(qf::eq(v("x"), lit(0)), qf::eq(v("y"), lit(1))));
  EXPECT_EQ(free_vars(f), VarSet{"y"});
  EXPECT_EQ(free_vars(fo::delta(qf::atom("P", {v("x")}))), VarSet{"x"});
  EXPECT_TRUE(free_vars(parse_any("A1 x. E1 y. R(x,y)")).empty());
  EXPECT_EQ(free_vars(parse_mf("forall x. SUM{u | u=y}(f(u,x)) <= f(z)")), (VarSet{"y", "z"}));
}

TEST(SubstituteConsts, Examples) {
  EXPECT_EQ(substitute_consts(parse_any("x=y"), {{"x", 0}}), parse_any("0=y"));
  Fopt bound = parse_any("E1 x. x=y");
  EXPECT_EQ(substitute_consts(bound, {{"x", 0}}), bound);
  EXPECT_EQ(substitute_consts(parse_any("ci(x=z; y=z; x=y)"), {{"z", 1}}), parse_any("ci(x=1; y=1; x=y)"));
}

TEST(RenameBound, Examples) {
  Fopt clean = parse_any("E1 x. R(x,y)");
  EXPECT_EQ(rename_bound(clean), clean);
  Fopt clash = parse_any("P(v) & A1 v. P(v)");
  Fopt renamed = rename_bound(clash);
  EXPECT_EQ(renamed, parse_any("P(v) & A1 v1. P(v1)"));
  Fopt nested = parse_any("E1 x. (P(x) & E1 x. R(x,x))");
  EXPECT_EQ(rename_bound(nested), parse_any("E1 x. (P(x) & E1 x1. R(x1,x1))"));
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(parse_any("(x=0) <= (x=1)")), Dialect::FOPT_leq);
  EXPECT_EQ(classify(parse_any("cpi(x=0 | x=x, x=1 | x=x)")), Dialect::FOPT_cpi);
  EXPECT_EQ(classify(parse_any("inc(x ; y)")), Dialect::FOT);
  EXPECT_EQ(classify(parse_any("P(x) \\/ A1 y. R(x,y)")), Dialect::FOTdown);
  EXPECT_EQ(classify(parse_any("ci(x=x; x=0; y=0)")), Dialect::FOPT_leq_ci);
  EXPECT_THROW(classify(parse_any("inc(x ; y) & (x=0) <= (y=0)")), DialectError);
}

TEST(FreshName, Sequence) {
  std::set<Var> used{"z", "z1"};
  EXPECT_EQ(fresh_name("z", used), "z2");
  EXPECT_EQ(fresh_name("u", used), "u");
  auto names = fresh_names("z", 2, used);
  EXPECT_EQ(names, (std::vector<Var>{"z2", "z3"}));
}

TEST(Printer, Literals) {
  EXPECT_EQ(to_string(parse_any("x=0")), "x=#0");
  EXPECT_EQ(to_string(parse_ffp("1-sgn(E(x)-0)")), "1-sgn(E(x)-0)");
  EXPECT_EQ(to_string(parse_mf("SUM{ | u=u}(f(u)) <= f(u) * f(u)")), "SUM{ | u=u}(f(u)) <= f(u) * f(u)");
}

// Round trip on random ASTs.

class RoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(RoundTrip, Fopt) {
  harness::Gen g(harness::case_seed(3, GetParam()));
  harness::FoptOptions o;
  o.ci = o.cpi = true;
  o.depth = 4;
  Fopt f = g.fopt({"x", "y"}, 3, o);
  EXPECT_EQ(parse_any(to_string(f)), f) << to_string(f);
  EXPECT_EQ(parse(to_string(f), classify(f)), f);

  harness::FoptOptions t;
  t.leq = false;
  t.incl = true;
  Fopt incl = g.fopt({"x", "y"}, 3, t);
  EXPECT_EQ(parse_any(to_string(incl)), incl) << to_string(incl);
}

TEST_P(RoundTrip, Metafinite) {
  harness::Gen g(harness::case_seed(4, GetParam()));
  MfFormula a = g.mf_sentence(3, 2);
  EXPECT_EQ(parse_mf(to_string(a)), a) << to_string(a);
  MfFormula b = g.sum_star(3, 2);
  EXPECT_EQ(parse_mf(to_string(b)), b) << to_string(b);
}

TEST_P(RoundTrip, SubstituteCommutesWithRenaming) {
  harness::Gen g(harness::case_seed(5, GetParam()));
  harness::FoptOptions o;
  o.ci = true;
  Fopt f = g.fopt({"x", "y"}, 3, o);
  std::map<Var, Element> m{{"x", 1}};
  // renaming keeps free names, so both orders give the same tree up to the
  // names of binders that clashed with x
  Fopt a = rename_bound(substitute_consts(f, m), {"x"});
  Fopt b = substitute_consts(rename_bound(f, {"x"}), m);
  EXPECT_EQ(a, b) << to_string(f);
}

TEST_P(RoundTrip, GeneratorsRespectDialects) {
  harness::Gen g(harness::case_seed(6, GetParam()));
  harness::FoptOptions leq;
  leq.dotneg = g.rng().coin();
  EXPECT_TRUE(in_dialect(g.fopt({"x"}, 2, leq), Dialect::FOPT_leq));
  harness::FoptOptions down;
  down.leq = down.dotneg = false;
  EXPECT_TRUE(in_dialect(g.fopt({"x"}, 2, down), Dialect::FOTdown));
  harness::FoptOptions fot = down;
  fot.incl = fot.dotneg = true;
  EXPECT_TRUE(in_dialect(g.fopt({"x"}, 2, fot), Dialect::FOT));
}

INSTANTIATE_TEST_SUITE_P(Random, RoundTrip, ::testing::Range(0, 100));

} // namespace
} // namespace pts
