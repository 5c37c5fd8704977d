/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#include <gtest/gtest.h>

#include "print.hpp"
#include "pts/eval.hpp"
#include "pts/harness/suites.hpp"
#include "pts/syntax/parser.hpp"
#include "pts/syntax/printer.hpp"
#include "pts/translate/ffp.hpp"
#include "pts/translate/fo2team.hpp"
#include "pts/translate/fot.hpp"
#include "pts/translate/metafinite.hpp"
#include "pts/translate/real.hpp"
#include "pts/translate/rewrites.hpp"

namespace pts {
namespace {

Term v(const char *name) { return Term::var(name); }

Structure p1() {
  Structure st(2);
  st.declare_relation("P", 1);
  st.add_tuple("P", {1});
  return st;
}

/// f(ū)=0 written out by hand.
MfFormula zero(std::vector<Term> us) {
  NumTerm f = mf::fn("f", us);
  Qf top = qf::eq(us.front(), us.front());
  return mf::num_eq(mf::sum({}, f, top), mf::sum({}, f, qf::neg(top)));
}

TEST(FotToFopt, Examples) {
  EXPECT_EQ(fot_to_fopt(parse_any("inc(x ; y)")), parse_any("A1 z. (!(x=z) \\/ ~!(y=z))"));
  Fopt plain = parse_any("P(x) & A1 y. R(x,y)");
  EXPECT_EQ(fot_to_fopt(plain), plain);
  EXPECT_EQ(fot_to_fopt(parse_any("inc(x,y ; u,v)")),
            parse_any("A1 z1,z2. (!(x=z1 & y=z2) \\/ ~!(u=z1 & v=z2))"));
  EXPECT_THROW(fot_to_fopt(parse_any("(x=0) <= (x=1)")), DialectError);
}

TEST(Rewrites, Examples) {
  EXPECT_EQ(marginal_identity({"x"}, {"y"}), parse_any("A1 z. ((x=z) <= (y=z))"));
  EXPECT_EQ(prob_indep({"x"}, {"y"}, {"z"}), parse_any("A1 a,b,c. ci(x=a; y=b; z=c)"));
  EXPECT_EQ(leq_and_ci_to_cpi(parse_any("(x1=0) <= (x1=1)")), parse_any("cpi(x1=0 | x1=x1, x1=1 | x1=x1)"));
  EXPECT_THROW(marginal_identity({"x", "y"}, {"z"}), ArityMismatch);
}

TEST(Rewrites, CpiFormOfCi) {
  ProbTeam uniform({"x", "y"});
  for (Element a = 0; a < 2; ++a)
    for (Element b = 0; b < 2; ++b)
      uniform.add(Tuple{a, b}, rational(1, 4));
  Fopt ci = parse_any("ci(x=x; x=0; y=0)");
  Fopt cpi = leq_and_ci_to_cpi(ci);
  EXPECT_EQ(classify(cpi), Dialect::FOPT_cpi);
  EXPECT_TRUE(eval_fopt(Structure(2), uniform, cpi));
  uniform.add(Tuple{0, 0}, 1);
  EXPECT_EQ(eval_fopt(Structure(2), uniform, cpi), eval_fopt(Structure(2), uniform, ci));
}

TEST(FoptToReal, LeqShape) {
  RaFormula psi = fopt_to_real(Structure(2), parse_any("(x=0) <= (x=1)"));
  EXPECT_EQ(export_smtlib(psi), "(set-logic LRA)\n"
                                "(declare-fun s_x_0 () Real)\n"
                                "(declare-fun s_x_1 () Real)\n"
                                "(assert (and (<= 0.0 s_x_0) (<= 0.0 s_x_1) (not (= 0.0 (+ s_x_0 s_x_1))) "
                                "(<= s_x_0 s_x_1)))\n"
                                "(check-sat)\n");
  EXPECT_FALSE(has_mul(psi));
  WeightVar s0{"s", {"x"}, {0}};
  EXPECT_EQ(s0.name(), "s_x__0");
  EXPECT_TRUE(eval_ra_instance(psi, {{s0, 1}, {{"s", {"x"}, {1}}, 2}}, 2));
  EXPECT_FALSE(eval_ra_instance(psi, {{s0, 2}, {{"s", {"x"}, {1}}, 1}}, 2));
  EXPECT_FALSE(eval_ra_instance(psi, {}, 2));
}

TEST(FoptToReal, Unsatisfiable) {
  Structure st = p1();
  for (const char *f : {"P(x) & !P(x)", "~(x=x)"}) {
    RaFormula psi = fopt_to_real(st, parse_any(f));
    for (Weight a : {0, 1})
      for (Weight b : {0, 1, 2})
        EXPECT_FALSE(eval_ra_instance(psi, {{{"s", {"x"}, {0}}, a}, {{"s", {"x"}, {1}}, b}}, 2)) << f;
  }
}

TEST(FoptToReal, Logic) {
  RaFormula ci = fopt_to_real(Structure(2), parse_any("ci(x=x; x=0; y=0)"));
  EXPECT_TRUE(has_mul(ci));
  EXPECT_EQ(export_smtlib(ci).rfind("(set-logic NRA)\n", 0), 0u);
  EXPECT_THROW(fopt_to_real(Structure(2), parse_any("inc(x ; y)")), DialectError);
}

TEST(EvalRaInstance, Shape) {
  RaFormula psi = fopt_to_real(Structure(2), parse_any("(x=0) <= (x=1)"));
  EXPECT_THROW(eval_ra_instance(psi, {{{"s", {"y"}, {0}}, 1}}, 2), ShapeError);
  const auto *outer = std::get_if<ra::Exists>(&psi.node());
  ASSERT_NE(outer, nullptr);
  EXPECT_THROW(eval_ra_instance(outer->body, {}, 2), ShapeError);
}

TEST(FoptToMetafinite, Examples) {
  Term u = v("u");
  EXPECT_EQ(fopt_to_metafinite(parse_any("P(x)"), "f"),
            mf::forall(std::vector<Var>{"u"}, mf::disj(zero({u}), mf::atom(qf::atom("P", {u})))));
  EXPECT_EQ(fopt_to_metafinite(parse_any("(x=0) <= (x=1)"), "f"),
            parse_mf("SUM{u | u=#0}(f(u)) <= SUM{u | u=#1}(f(u))"));
  MfFormula theta = fopt_to_metafinite(parse_any("P(x)"), "f");
  EXPECT_EQ(fopt_to_metafinite(parse_any("~P(x)"), "f"),
            mf::disj(mf::neg(theta), mf::forall(std::vector<Var>{"u"}, zero({u}))));
  EXPECT_EQ(fopt_to_metafinite(parse_any("E1 y. (x=y) <= (x=0)"), "f"),
            parse_mf("exists y. (SUM{u | u=y}(f(u)) <= SUM{u | u=#0}(f(u)))"));
  EXPECT_THROW(fopt_to_metafinite(parse_any("inc(x ; y)"), "f"), DialectError);
}

TEST(FoptToMetafinite, CiAndCpi) {
  MfFormula ci = fopt_to_metafinite(parse_any("ci(x=x; x=0; y=0)"), "f");
  EXPECT_FALSE(in_sum_star(ci));
  ProbTeam uniform({"x", "y"});
  for (Element a = 0; a < 2; ++a)
    for (Element b = 0; b < 2; ++b)
      uniform.add(Tuple{a, b}, rational(1, 4));
  EXPECT_TRUE(eval_mf(team_to_rstructure(Structure(2), uniform, "f"), {}, ci));
}

TEST(NormalizeSum, Examples) {
  NumTerm t = parse_numterm("SUM{u0 | P(u0)}(f(u0,x0))");
  EXPECT_EQ(normalize_sum(t), parse_numterm("SUM{u0,u1 | P(u0) & u1=x0}(f(u0,u1))"));
  NumTerm normal = parse_numterm("SUM{a,b | R(a,b)}(f(a,b))");
  EXPECT_EQ(normalize_sum(normal), normal);
  EXPECT_EQ(normalize_sum(parse_numterm("SUM{a | P(a) \\/ a=#0}(f(a))")),
            parse_numterm("SUM{a | !(!P(a) & !(a=#0))}(f(a))"));
  EXPECT_THROW(normalize_sum(parse_numterm("f(x)")), DialectError);
}

TEST(MetafiniteToFopt, Examples) {
  MfFormula psi = parse_mf("SUM{u | u=#0}(f(u)) <= SUM{u | u=#1}(f(u))");
  Fo2TeamResult r = metafinite_to_fopt(psi);
  EXPECT_EQ(r.formula, parse_any("(v1=0) <= (v1=1)"));
  EXPECT_EQ(r.team_vars, std::vector<Var>{"v1"});
  EXPECT_EQ(r.fn, "f");
  EXPECT_EQ(metafinite_to_fopt(mf::neg(psi)).formula, fo::dotneg(r.formula));
  EXPECT_EQ(metafinite_to_fopt(mf::exists("x", psi)).formula, fo::exists1("x", r.formula));
  EXPECT_THROW(metafinite_to_fopt(parse_mf("f(x) * f(x) <= f(x)")), DialectError);
  EXPECT_THROW(metafinite_to_fopt(parse_mf("SUM{u | u=x}(f(u)) <= SUM{u | u=#1}(f(u))")), DialectError);
  EXPECT_THROW(metafinite_to_fopt(psi, 2), ArityMismatch);
}

TEST(MfToFfp, Examples) {
  MfFormula p = parse_mf("P(x)"), q = parse_mf("R(x,x)");
  FfpTerm ip = ff::fn("chi_P", {"x"}), iq = ff::fn("chi_R", {"x", "x"});
  EXPECT_EQ(mf_to_ffp(p), ip);
  EXPECT_EQ(mf_to_ffp(mf::disj(p, q)), ff::sub(ff::add(ip, iq), ff::mul(ip, iq)));
  EXPECT_EQ(mf_to_ffp(mf::forall("x", p)), ff::sub(ff::one(), ff::max({"x"}, ff::sub(ff::one(), ip))));
  FfpTerm a = ff::fn("f", {"x"}), b = ff::fn("f", {"y"});
  FfpTerm eq = ff::sub(ff::one(), ff::mul(ff::sgn(ff::sub(a, b)), ff::sgn(ff::sub(a, b))));
  FfpTerm d = ff::sgn(ff::sub(b, a));
  FfpTerm lt = ff::mul(ff::add(ff::mul(d, d), d), ff::div(ff::one(), ff::add(ff::one(), ff::one())));
  EXPECT_EQ(mf_to_ffp(parse_mf("f(x) <= f(y)")), ff::sub(ff::add(eq, lt), ff::mul(eq, lt)));
  EXPECT_THROW(mf_to_ffp(parse_mf("P(#0)")), DialectError);
}

TEST(StructureToAlgebra, Examples) {
  ProbTeam t({"x"});
  t.add(Tuple{0}, 1);
  t.add(Tuple{1}, 2);
  RAlgebra alg = structure_to_algebra(p1(), t);
  EXPECT_EQ(alg.apply("chi_P", {0}), 0);
  EXPECT_EQ(alg.apply("chi_P", {1}), 1);
  EXPECT_EQ(alg.apply("eq", {1, 1}), 1);
  EXPECT_EQ(alg.apply("eq", {0, 1}), 0);
  EXPECT_EQ(alg.apply("f", {0}), 1);
  EXPECT_EQ(alg.apply("f", {1}), 2);
  EXPECT_EQ(alg.rank(1), 1);
  EXPECT_THROW(structure_to_algebra(RStructure(p1(), "eq", 1)), Error);
}

// Properties over random instances.

class TranslateProperties : public ::testing::TestWithParam<int> {};

TEST_P(TranslateProperties, NormalizeSumPreservesValue) {
  harness::Gen g(harness::case_seed(51, GetParam()));
  RStructure rs = g.rstructure(3, 2);
  int n = rs.base().size();
  std::vector<Var> scope{"x", "y"};
  Var a = "a", b = "b";
  std::vector<Var> bound{a};
  if (g.rng().coin())
    bound.push_back(b);
  std::vector<Var> pool = bound;
  pool.insert(pool.end(), scope.begin(), scope.end());
  std::vector<Term> args;
  for (int i = 0; i < 2; ++i)
    args.push_back(g.rng().coin(1, 5) ? Term::lit(g.rng().below(n)) : Term::var(g.rng().pick(pool)));
  args[0] = Term::var(a);
  if (bound.size() == 2)
    args[1] = Term::var(b);
  else if (g.rng().coin())
    args[1] = Term::var(a);
  NumTerm t = mf::sum(bound, mf::fn("f", args), g.delta(pool, n, 2, true, true));
  NumTerm norm = normalize_sum(t);
  for_each_tuple(n, 2, [&](const Tuple &xy) {
    Assignment s{{"x", xy[0]}, {"y", xy[1]}};
    EXPECT_EQ(eval_numterm(rs, s, t), eval_numterm(rs, s, norm)) << to_string(t) << " vs " << to_string(norm);
  });
}

TEST_P(TranslateProperties, CpiRewritePreservesTruth) {
  harness::Gen g(harness::case_seed(52, GetParam()));
  Structure st = g.structure();
  ProbTeam team = g.team(st.size(), {"x", "y"}, false);
  harness::FoptOptions o;
  o.ci = true;
  Fopt phi = g.fopt({"x", "y"}, st.size(), o);
  Fopt cpi = leq_and_ci_to_cpi(phi);
  EXPECT_TRUE(in_dialect(cpi, Dialect::FOPT_cpi));
  EXPECT_EQ(eval_fopt(st, team, phi), eval_fopt(st, team, cpi)) << to_string(phi);
}

TEST_P(TranslateProperties, FfpValuesAreZeroOrOne) {
  harness::Gen g(harness::case_seed(53, GetParam()));
  RStructure rs = g.rstructure(3, 1);
  MfFormula phi = g.mf_sentence(rs.base().size(), 1);
  FfpValue val = eval_ffp(structure_to_algebra(rs), {}, mf_to_ffp(phi));
  ASSERT_TRUE(val);
  EXPECT_EQ(*val, eval_mf(rs, {}, phi) ? 1 : 0) << to_string(phi);
}

INSTANTIATE_TEST_SUITE_P(Random, TranslateProperties, ::testing::Range(0, 100));

class Suites : public ::testing::TestWithParam<std::string> {};

TEST_P(Suites, SmallRun) {
  auto report = harness::run_suite(GetParam(), 99, 40);
  EXPECT_EQ(report.passed, report.cases) << (report.counterexample ? report.counterexample->dump() : "");
}

INSTANTIATE_TEST_SUITE_P(All, Suites,
                         ::testing::Values("scaling", "locality", "substitution", "renaming", "embedding",
                                           "team2fo", "fo2team", "roundtrip", "toffp", "ra-witness",
                                           "notransl"),
                         [](const auto &info) {
                           std::string name = info.param;
                           std::replace(name.begin(), name.end(), '-', '_');
                           return name;
                         });

TEST(Suites, Reproducible) {
  std::ostringstream a, b;
  harness::print_report(a, harness::run_suite("scaling", 5, 20));
  harness::print_report(b, harness::run_suite("scaling", 5, 20));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_THROW(harness::run_suite("nope", 1, 1), Error);
}

} // namespace
} // namespace pts
