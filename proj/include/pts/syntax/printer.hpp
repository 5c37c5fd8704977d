/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <string>

#include "ast.hpp"

namespace pts {

inline std::string to_string(const Term &t) {
  switch (t.kind) {
  case Term::Kind::Var: return t.name;
  case Term::Kind::Lit: return "#" + std::to_string(t.value);
  case Term::Kind::Const: return "$" + t.name;
  }
  return "?";
}

inline std::string join_terms(const std::vector<Term> &ts, const char *sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i)
    out += (i ? sep : "") + to_string(ts[i]);
  return out;
}

inline std::string join_names(const std::vector<Var> &vs, const char *sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i)
    out += (i ? sep : "") + vs[i];
  return out;
}

namespace detail {

// Precedence levels shared by the boolean printers: 3 unary/atomic, 2 '&',
// 1 '\/', 0 quantifier.
inline int qf_prec(const Qf &q) {
  return std::visit(overloaded{[](const qf::And &) { return 2; }, [](const qf::Or &) { return 1; },
                               [](const auto &) { return 3; }},
                    q.node());
}

} // namespace detail

inline std::string to_string(const Qf &q) {
  auto wrap = [](const Qf &sub, bool paren) {
    return paren ? "(" + to_string(sub) + ")" : to_string(sub);
  };
  return std::visit(
      overloaded{
          [](const qf::Atom &a) { return a.relation + "(" + join_terms(a.args) + ")"; },
          [](const qf::Eq &e) { return to_string(e.lhs) + "=" + to_string(e.rhs); },
          [&](const qf::Not &n) {
            bool paren = !n.arg.is<qf::Atom>() && !n.arg.is<qf::Not>();
            return "!" + wrap(n.arg, paren);
          },
          [&](const qf::And &a) {
            return wrap(a.lhs, detail::qf_prec(a.lhs) < 2) + " & " +
                   wrap(a.rhs, detail::qf_prec(a.rhs) <= 2);
          },
          [&](const qf::Or &o) {
            return wrap(o.lhs, detail::qf_prec(o.lhs) < 1) + " \\/ " +
                   wrap(o.rhs, detail::qf_prec(o.rhs) <= 1);
          }},
      q.node());
}

namespace detail {

inline int fopt_prec(const Fopt &f) {
  return std::visit(overloaded{[](const fo::Delta &d) { return qf_prec(d.delta); },
                               [](const fo::And &) { return 2; },
                               [](const fo::WeakOr &) { return 1; },
                               [](const fo::Exists1 &) { return 0; },
                               [](const fo::Forall1 &) { return 0; },
                               [](const auto &) { return 3; }},
                    f.node());
}

/// Quantifier bodies are parenthesized when they are binary or a ≤ atom.
inline bool fopt_body_parens(const Fopt &f) {
  int p = fopt_prec(f);
  return (p == 1 || p == 2) || f.is<fo::Leq>();
}

} // namespace detail

inline std::string to_string(const Fopt &f) {
  auto wrap = [](const Fopt &sub, bool paren) {
    return paren ? "(" + to_string(sub) + ")" : to_string(sub);
  };
  auto quant = [&](const char *kw, const Var &first, const Fopt &body0, auto is_same) {
    std::vector<Var> vs{first};
    const Fopt *body = &body0;
    while (auto inner = is_same(*body)) {
      vs.push_back(inner->var);
      body = &inner->body;
    }
    return std::string(kw) + " " + join_names(vs) + ". " +
           wrap(*body, detail::fopt_body_parens(*body));
  };
  return std::visit(
      overloaded{
          [](const fo::Delta &d) { return to_string(d.delta); },
          [](const fo::Leq &l) { return "(" + to_string(l.lhs) + ") <= (" + to_string(l.rhs) + ")"; },
          [](const fo::CondIndep &c) {
            return "ci(" + to_string(c.cond) + "; " + to_string(c.left) + "; " +
                   to_string(c.right) + ")";
          },
          [](const fo::CondProbLeq &c) {
            return "cpi(" + to_string(c.lhs) + " | " + to_string(c.lhs_given) + ", " +
                   to_string(c.rhs) + " | " + to_string(c.rhs_given) + ")";
          },
          [](const fo::Incl &i) { return "inc(" + join_terms(i.lhs) + " ; " + join_terms(i.rhs) + ")"; },
          [&](const fo::DotNeg &n) { return "~" + wrap(n.arg, detail::fopt_prec(n.arg) < 3); },
          [&](const fo::And &a) {
            return wrap(a.lhs, detail::fopt_prec(a.lhs) < 2) + " & " +
                   wrap(a.rhs, detail::fopt_prec(a.rhs) <= 2);
          },
          [&](const fo::WeakOr &o) {
            return wrap(o.lhs, detail::fopt_prec(o.lhs) < 1) + " \\/ " +
                   wrap(o.rhs, detail::fopt_prec(o.rhs) <= 1);
          },
          [&](const fo::Exists1 &q) {
            return quant("E1", q.var, q.body, [](const Fopt &b) { return b.as<fo::Exists1>(); });
          },
          [&](const fo::Forall1 &q) {
            return quant("A1", q.var, q.body, [](const Fopt &b) { return b.as<fo::Forall1>(); });
          }},
      f.node());
}

inline std::string to_string(const NumTerm &t) {
  return std::visit(
      overloaded{[](const mf::Fn &f) { return f.fn + "(" + join_terms(f.args) + ")"; },
                 [](const mf::Times &m) {
                   // '*' is left-associative; a right operand product needs parens.
                   std::string r = to_string(m.rhs);
                   if (m.rhs.is<mf::Times>())
                     r = "(" + r + ")";
                   return to_string(m.lhs) + " * " + r;
                 },
                 [](const mf::Sum &s) {
                   std::string vars = s.bound.empty() ? std::string(" ") : join_names(s.bound) + " ";
                   return "SUM{" + vars + "| " + to_string(s.guard) + "}(" + to_string(s.body) + ")";
                 }},
      t.node());
}

namespace detail {

inline int mf_prec(const MfFormula &f) {
  return std::visit(overloaded{[](const mf::And &) { return 2; }, [](const mf::Or &) { return 1; },
                               [](const mf::Exists &) { return 0; },
                               [](const mf::Forall &) { return 0; },
                               [](const mf::Leq &) { return 3; }, [](const auto &) { return 4; }},
                    f.node());
}

} // namespace detail

inline std::string to_string(const MfFormula &f) {
  auto wrap = [](const MfFormula &sub, bool paren) {
    return paren ? "(" + to_string(sub) + ")" : to_string(sub);
  };
  auto quant = [&](const char *kw, const Var &first, const MfFormula &body0, auto is_same) {
    std::vector<Var> vs{first};
    const MfFormula *body = &body0;
    while (auto inner = is_same(*body)) {
      vs.push_back(inner->var);
      body = &inner->body;
    }
    int p = detail::mf_prec(*body);
    return std::string(kw) + " " + join_names(vs) + ". " + wrap(*body, p == 1 || p == 2 || p == 3);
  };
  return std::visit(
      overloaded{
          [](const mf::Atom &a) { return to_string(a.atom); },
          [](const mf::Leq &l) { return to_string(l.lhs) + " <= " + to_string(l.rhs); },
          [&](const mf::Not &n) { return "!" + wrap(n.arg, detail::mf_prec(n.arg) < 4); },
          [&](const mf::And &a) {
            return wrap(a.lhs, detail::mf_prec(a.lhs) < 2) + " & " +
                   wrap(a.rhs, detail::mf_prec(a.rhs) <= 2);
          },
          [&](const mf::Or &o) {
            return wrap(o.lhs, detail::mf_prec(o.lhs) < 1) + " \\/ " +
                   wrap(o.rhs, detail::mf_prec(o.rhs) <= 1);
          },
          [&](const mf::Exists &q) {
            return quant("exists", q.var, q.body, [](const MfFormula &b) { return b.as<mf::Exists>(); });
          },
          [&](const mf::Forall &q) {
            return quant("forall", q.var, q.body, [](const MfFormula &b) { return b.as<mf::Forall>(); });
          }},
      f.node());
}

namespace detail {

inline int ffp_prec(const FfpTerm &t) {
  if (auto b = t.as<ff::Bin>())
    return (b->op == ff::Op::Add || b->op == ff::Op::Sub) ? 1 : 2;
  return 3;
}

} // namespace detail

inline std::string to_string(const FfpTerm &t) {
  auto wrap = [](const FfpTerm &sub, bool paren) {
    return paren ? "(" + to_string(sub) + ")" : to_string(sub);
  };
  return std::visit(
      overloaded{[](const ff::Const &c) { return std::to_string(c.value); },
                 [](const ff::Fn &f) { return f.fn + "(" + join_names(f.args) + ")"; },
                 [&](const ff::Bin &b) {
                   static const char *ops[] = {"+", "-", "*", "/"};
                   int p = detail::ffp_prec(t);
                   return wrap(b.lhs, detail::ffp_prec(b.lhs) < p) +
                          ops[static_cast<int>(b.op)] + wrap(b.rhs, detail::ffp_prec(b.rhs) <= p);
                 },
                 [](const ff::Sign &s) { return "sgn(" + to_string(s.arg) + ")"; },
                 [](const ff::Max &m) {
                   return "max{" + join_names(m.vars) + "}(" + to_string(m.body) + ")";
                 },
                 [](const ff::Fp &f) {
                   return "fp[" + f.z + "(" + join_names(f.params) + ") <- " + to_string(f.body) +
                          "](" + join_names(f.args) + ")";
                 }},
      t.node());
}

inline std::string to_string(const RaTerm &t) {
  return std::visit(overloaded{[](const ra::Var &v) { return v.var.name(); },
                               [](const ra::Sum &s) {
                                 if (s.terms.empty())
                                   return std::string("0");
                                 std::string out;
                                 for (std::size_t i = 0; i < s.terms.size(); ++i) {
                                   std::string sub = to_string(s.terms[i]);
                                   if (s.terms[i].is<ra::Sum>() && s.terms.size() > 1)
                                     sub = "(" + sub + ")";
                                   out += (i ? " + " : "") + sub;
                                 }
                                 return out;
                               },
                               [](const ra::Mul &m) {
                                 auto side = [](const RaTerm &x) {
                                   auto s = x.as<ra::Sum>();
                                   return (s && s->terms.size() > 1) ? "(" + to_string(x) + ")"
                                                                     : to_string(x);
                                 };
                                 return side(m.lhs) + " * " + side(m.rhs);
                               }},
                    t.node());
}

/// Human-readable rendering (not a parsed grammar; SMT-LIB export is the
/// machine format).
inline std::string to_string(const RaFormula &f) {
  auto list = [](const std::vector<RaFormula> &args, const char *sep, const char *empty) {
    if (args.empty())
      return std::string(empty);
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i)
      out += (i ? sep : "") + ("(" + to_string(args[i]) + ")");
    return out;
  };
  return std::visit(overloaded{[](const ra::Leq &l) { return to_string(l.lhs) + " <= " + to_string(l.rhs); },
                               [](const ra::Eq &e) { return to_string(e.lhs) + " = " + to_string(e.rhs); },
                               [](const ra::Not &n) { return "!(" + to_string(n.arg) + ")"; },
                               [&](const ra::And &a) { return list(a.args, " & ", "true"); },
                               [&](const ra::Or &o) { return list(o.args, " \\/ ", "false"); },
                               [](const ra::Exists &e) {
                                 std::string vs;
                                 for (std::size_t i = 0; i < e.vars.size(); ++i)
                                   vs += (i ? "," : "") + e.vars[i].name();
                                 return "exists " + vs + ". (" + to_string(e.body) + ")";
                               }},
                    f.node());
}

} // namespace pts
