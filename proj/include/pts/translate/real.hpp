/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <map>
#include <sstream>
#include <string>

#include "../event.hpp"
#include "../structures.hpp"
#include "../syntax/ast.hpp"
#include "../syntax/ops.hpp"

namespace pts {

using RaWeights = std::map<WeightVar, Weight>;

namespace detail {

/// Weight variables of one block, indexed by the lexicographic rank of the
/// assignment over `vars`.
struct RaBlock {
  std::vector<Var> vars;
  std::vector<Tuple> rows;
  std::vector<WeightVar> wvars;
};

inline RaBlock ra_block(const std::string &prefix, const std::vector<Var> &vars, int n) {
  RaBlock b{vars, {}, {}};
  for_each_tuple(n, vars.size(), [&](const Tuple &t) {
    b.rows.push_back(t);
    b.wvars.push_back(WeightVar{prefix, vars, t});
  });
  return b;
}

inline RaTerm ra_var(const WeightVar &w) { return ra::Var{w}; }

class RaTranslator {
public:
  explicit RaTranslator(const Structure &st) : st_(st) {}

  RaFormula star(const Fopt &f, const RaBlock &b) {
    auto holds = [&](const Qf &d, std::size_t i) {
      return eval_delta(st_, Assignment(b.vars, b.rows[i]), d);
    };
    auto sum_where = [&](std::initializer_list<Qf> ds) -> RaTerm {
      std::vector<RaTerm> terms;
      for (std::size_t i = 0; i < b.rows.size(); ++i) {
        bool all = true;
        for (const auto &d : ds)
          all = all && holds(d, i);
        if (all)
          terms.push_back(ra_var(b.wvars[i]));
      }
      return ra::Sum{std::move(terms)};
    };
    return std::visit(
        overloaded{
            [&](const fo::Delta &d) -> RaFormula {
              std::vector<RaFormula> zeros;
              for (std::size_t i = 0; i < b.rows.size(); ++i)
                if (!holds(d.delta, i))
                  zeros.push_back(ra::Eq{ra_var(b.wvars[i]), ra::zero()});
              return ra::And{std::move(zeros)};
            },
            [&](const fo::Leq &l) -> RaFormula { return ra::Leq{sum_where({l.lhs}), sum_where({l.rhs})}; },
            [&](const fo::CondIndep &c) -> RaFormula {
              return ra::Eq{ra::Mul{sum_where({c.cond, c.left}), sum_where({c.cond, c.right})},
                            ra::Mul{sum_where({c.cond}), sum_where({c.cond, c.left, c.right})}};
            },
            [&](const fo::CondProbLeq &c) -> RaFormula {
              return ra::Leq{ra::Mul{sum_where({c.lhs, c.lhs_given}), sum_where({c.rhs_given})},
                             ra::Mul{sum_where({c.rhs, c.rhs_given}), sum_where({c.lhs_given})}};
            },
            [&](const fo::Incl &) -> RaFormula {
              throw DialectError("inclusion atoms have no real-arithmetic translation");
            },
            [&](const fo::DotNeg &n) -> RaFormula { return ra::Not{star(n.arg, b)}; },
            [&](const fo::And &a) -> RaFormula { return ra::And{{star(a.lhs, b), star(a.rhs, b)}}; },
            [&](const fo::WeakOr &o) -> RaFormula { return ra::Or{{star(o.lhs, b), star(o.rhs, b)}}; },
            [&](const fo::Exists1 &q) -> RaFormula {
              RaBlock t = extend_block(b, q.var);
              std::vector<RaFormula> alts;
              for (Element j = 0; j < st_.size(); ++j)
                alts.push_back(definition(b, t, j));
              return ra::Exists{t.wvars, ra::And{{ra::Or{std::move(alts)}, star(q.body, t)}}};
            },
            [&](const fo::Forall1 &q) -> RaFormula {
              RaBlock t = extend_block(b, q.var);
              RaFormula body = star(q.body, t);
              std::vector<RaFormula> cases;
              for (Element j = 0; j < st_.size(); ++j)
                cases.push_back(ra::Exists{t.wvars, ra::And{{definition(b, t, j), body}}});
              return ra::And{std::move(cases)};
            }},
        f.node());
  }

private:
  RaBlock extend_block(const RaBlock &b, const Var &x) {
    std::vector<Var> vars = b.vars;
    vars.push_back(x);
    return ra_block("t", vars, st_.size());
  }

  /// t_{īk} = s_ī if k = j, else 0.
  RaFormula definition(const RaBlock &b, const RaBlock &t, Element j) {
    std::vector<RaFormula> eqs;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Tuple &row = t.rows[i];
      RaTerm rhs = ra::zero();
      if (row.back() == j)
        rhs = ra_var(b.wvars[i / st_.size()]);
      eqs.push_back(ra::Eq{ra_var(t.wvars[i]), rhs});
    }
    return ra::And{std::move(eqs)};
  }

  const Structure &st_;
};

} // namespace detail

/**
 * ψ = ∃s̄(⋀ 0 ≤ s_ī ∧ ¬0 = Σ s_ī ∧ φ*(s̄)) over the assignments ī of
 * Var(φ) into the domain, true over the reals iff φ is satisfied by some
 * nonempty probabilistic team in `st`.
 */
inline RaFormula fopt_to_real(const Structure &st, const Fopt &phi) {
  Fopt f = rename_bound(phi);
  VarSet v = free_vars(f);
  detail::RaBlock s = detail::ra_block("s", v, st.size());
  std::vector<RaFormula> matrix;
  std::vector<RaTerm> all;
  for (const auto &w : s.wvars) {
    matrix.push_back(ra::Leq{ra::zero(), detail::ra_var(w)});
    all.push_back(detail::ra_var(w));
  }
  matrix.push_back(ra::Not{ra::Eq{ra::zero(), ra::Sum{std::move(all)}}});
  matrix.push_back(detail::RaTranslator(st).star(f, s));
  return ra::Exists{s.wvars, ra::And{std::move(matrix)}};
}

/// The outer weight variables s_ī ↦ 𝕏(ī) of a team over exactly Var(φ).
inline RaWeights weights_of(const ProbTeam &team) {
  RaWeights out;
  for (const auto &[row, w] : team.rows())
    out[WeightVar{"s", team.vars(), row}] = w;
  return out;
}

inline bool has_mul(const RaTerm &t) {
  return std::visit(overloaded{[](const ra::Var &) { return false; },
                               [](const ra::Sum &s) {
                                 for (const auto &x : s.terms)
                                   if (has_mul(x))
                                     return true;
                                 return false;
                               },
                               [](const ra::Mul &) { return true; }},
                    t.node());
}

inline bool has_mul(const RaFormula &f) {
  auto any = [](const std::vector<RaFormula> &fs) {
    for (const auto &x : fs)
      if (has_mul(x))
        return true;
    return false;
  };
  return std::visit(overloaded{[](const ra::Leq &l) { return has_mul(l.lhs) || has_mul(l.rhs); },
                               [](const ra::Eq &e) { return has_mul(e.lhs) || has_mul(e.rhs); },
                               [](const ra::Not &n) { return has_mul(n.arg); },
                               [&](const ra::And &a) { return any(a.args); },
                               [&](const ra::Or &o) { return any(o.args); },
                               [](const ra::Exists &e) { return has_mul(e.body); }},
                    f.node());
}

namespace detail {

using RaEnv = std::map<WeightVar, Weight>;

inline Weight ra_value(const RaTerm &t, const RaEnv &env) {
  return std::visit(overloaded{[&](const ra::Var &v) {
                                 auto it = env.find(v.var);
                                 if (it == env.end())
                                   throw ShapeError("unbound weight variable " + v.var.name());
                                 return it->second;
                               },
                               [&](const ra::Sum &s) {
                                 Weight out = 0;
                                 for (const auto &x : s.terms)
                                   out += ra_value(x, env);
                                 return out;
                               },
                               [&](const ra::Mul &m) { return ra_value(m.lhs, env) * ra_value(m.rhs, env); }},
                    t.node());
}

/// Alternatives of an ∃t̄ definition: each a list of t := term bindings.
inline std::vector<std::vector<const ra::Eq *>> ra_alternatives(const RaFormula &def) {
  auto eqs_of = [](const RaFormula &f) {
    auto a = f.as<ra::And>();
    if (!a)
      throw ShapeError("block definition is not a conjunction of equations");
    std::vector<const ra::Eq *> out;
    for (const auto &x : a->args) {
      auto e = x.as<ra::Eq>();
      if (!e || !e->lhs.is<ra::Var>())
        throw ShapeError("block definition is not a conjunction of equations");
      out.push_back(e);
    }
    return out;
  };
  std::vector<std::vector<const ra::Eq *>> out;
  if (auto o = def.as<ra::Or>())
    for (const auto &alt : o->args)
      out.push_back(eqs_of(alt));
  else
    out.push_back(eqs_of(def));
  return out;
}

inline bool ra_holds(const RaFormula &f, const RaEnv &env) {
  return std::visit(
      overloaded{[&](const ra::Leq &l) { return ra_value(l.lhs, env) <= ra_value(l.rhs, env); },
                 [&](const ra::Eq &e) { return ra_value(e.lhs, env) == ra_value(e.rhs, env); },
                 [&](const ra::Not &n) { return !ra_holds(n.arg, env); },
                 [&](const ra::And &a) {
                   for (const auto &x : a.args)
                     if (!ra_holds(x, env))
                       return false;
                   return true;
                 },
                 [&](const ra::Or &o) {
                   for (const auto &x : o.args)
                     if (ra_holds(x, env))
                       return true;
                   return false;
                 },
                 [&](const ra::Exists &q) {
                   auto body = q.body.as<ra::And>();
                   if (!body || body->args.empty())
                     throw ShapeError("quantifier block without a defining conjunct");
                   std::set<WeightVar> block(q.vars.begin(), q.vars.end());
                   for (const auto &alt : ra_alternatives(body->args[0])) {
                     RaEnv inner = env;
                     std::set<WeightVar> assigned;
                     for (const ra::Eq *e : alt) {
                       const WeightVar &t = e->lhs.as<ra::Var>()->var;
                       if (!block.count(t) || !assigned.insert(t).second)
                         throw ShapeError("block variable " + t.name() + " is not defined exactly once");
                       inner[t] = ra_value(e->rhs, env);
                     }
                     if (assigned.size() != block.size())
                       throw ShapeError("block variables left undefined");
                     bool ok = true;
                     for (std::size_t i = 1; ok && i < body->args.size(); ++i)
                       ok = ra_holds(body->args[i], inner);
                     if (ok)
                       return true;
                   }
                   return false;
                 }},
      f.node());
}

} // namespace detail

/**
 * Decides ψ = ∃s̄ χ(s̄) at the given weights: s̄ is bound to `weights`
 * (missing entries are 0) and each inner ∃t̄ block is solved through its
 * defining equations.
 */
inline bool eval_ra_instance(const RaFormula &psi, const RaWeights &weights, int domain_size) {
  auto outer = psi.as<ra::Exists>();
  if (!outer)
    throw ShapeError("expected an existential sentence over the weight variables");
  detail::RaEnv env;
  for (const auto &w : outer->vars) {
    for (Element e : w.values)
      if (e < 0 || e >= domain_size)
        throw ShapeError("weight variable " + w.name() + " outside the domain");
    auto it = weights.find(w);
    env[w] = it == weights.end() ? Weight(0) : it->second;
  }
  for (const auto &[w, _] : weights)
    if (!env.count(w))
      throw ShapeError("weight for unknown variable " + w.name());
  return detail::ra_holds(outer->body, env);
}

// ---------------------------------------------------------------------------
// SMT-LIB 2 export.

inline std::string smt_name(const WeightVar &w) {
  std::string out = w.prefix;
  for (const auto &v : w.vars)
    out += "_" + v;
  for (Element e : w.values)
    out += "_" + std::to_string(e);
  return out;
}

namespace detail {

inline std::string smt_list(const char *op, const std::vector<std::string> &xs, const char *empty) {
  if (xs.empty())
    return empty;
  if (xs.size() == 1)
    return xs[0];
  std::string out = std::string("(") + op;
  for (const auto &x : xs)
    out += " " + x;
  return out + ")";
}

inline std::string smt(const RaTerm &t) {
  return std::visit(overloaded{[](const ra::Var &v) { return smt_name(v.var); },
                               [](const ra::Sum &s) {
                                 std::vector<std::string> xs;
                                 for (const auto &x : s.terms)
                                   xs.push_back(smt(x));
                                 return smt_list("+", xs, "0.0");
                               },
                               [](const ra::Mul &m) { return "(* " + smt(m.lhs) + " " + smt(m.rhs) + ")"; }},
                    t.node());
}

inline std::string smt(const RaFormula &f) {
  auto many = [](const char *op, const std::vector<RaFormula> &fs, const char *empty) {
    std::vector<std::string> xs;
    for (const auto &x : fs)
      xs.push_back(smt(x));
    return smt_list(op, xs, empty);
  };
  return std::visit(overloaded{[](const ra::Leq &l) { return "(<= " + smt(l.lhs) + " " + smt(l.rhs) + ")"; },
                               [](const ra::Eq &e) { return "(= " + smt(e.lhs) + " " + smt(e.rhs) + ")"; },
                               [](const ra::Not &n) { return "(not " + smt(n.arg) + ")"; },
                               [&](const ra::And &a) { return many("and", a.args, "true"); },
                               [&](const ra::Or &o) { return many("or", o.args, "false"); },
                               [](const ra::Exists &q) {
                                 std::string out = "(exists (";
                                 for (std::size_t i = 0; i < q.vars.size(); ++i)
                                   out += (i ? " (" : "(") + smt_name(q.vars[i]) + " Real)";
                                 return out + ") " + smt(q.body) + ")";
                               }},
                    f.node());
}

} // namespace detail

/// An SMT-LIB 2 script asserting ψ; the outer ∃ block becomes declarations.
inline std::string export_smtlib(const RaFormula &psi) {
  std::ostringstream out;
  out << "(set-logic " << (has_mul(psi) ? "NRA" : "LRA") << ")\n";
  RaFormula body = psi;
  if (auto q = psi.as<ra::Exists>()) {
    for (const auto &w : q->vars)
      out << "(declare-fun " << smt_name(w) << " () Real)\n";
    body = q->body;
  }
  out << "(assert " << detail::smt(body) << ")\n";
  out << "(check-sat)\n";
  return out.str();
}

} // namespace pts
